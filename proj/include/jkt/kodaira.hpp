#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "jkt/pencil.hpp"

namespace jkt {

// A catalog fiber type: weighted dual graph with component multiplicities
// (the marks of the affine root system).
struct CatalogFiber {
  std::string kodaira;
  std::string dynkin;
  std::vector<int> marks;
  std::vector<std::vector<long long>> adj;  // off-diagonal intersection numbers
};

namespace detail {

inline CatalogFiber make_fiber(std::string kod, std::string dyn, std::vector<int> marks,
                               const std::vector<std::tuple<int, int, long long>>& edges) {
  CatalogFiber f;
  f.kodaira = std::move(kod);
  f.dynkin = std::move(dyn);
  f.marks = std::move(marks);
  size_t n = f.marks.size();
  f.adj.assign(n, std::vector<long long>(n, 0));
  for (auto& [a, b, w] : edges) {
    f.adj[a][b] += w;
    f.adj[b][a] += w;
  }
  return f;
}

}  // namespace detail

// The affine ADE / Kodaira catalog used by the classifier. Includes the cycles
// I_n for the engine self-tests alongside the star and E types the six cases
// realize. Marks follow the standard multiplicity vectors of the classification
// of singular elliptic fibers.
inline const std::vector<CatalogFiber>& kodaira_catalog() {
  static const std::vector<CatalogFiber> cat = [] {
    std::vector<CatalogFiber> v;
    // I_2: two components meeting twice; I_n (n >= 3): cycles
    v.push_back(detail::make_fiber("I2", "A1~", {1, 1}, {{0, 1, 2}}));
    for (int n = 3; n <= 9; ++n) {
      std::vector<int> marks(n, 1);
      std::vector<std::tuple<int, int, long long>> e;
      for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 1});
      v.push_back(detail::make_fiber("I" + std::to_string(n),
                                     "A" + std::to_string(n - 1) + "~", marks, e));
    }
    // I_n* (n >= 0): chain of n+1 double components with two reduced tails at
    // each end; D_{4+n}~
    for (int n = 0; n <= 4; ++n) {
      std::vector<int> marks;
      std::vector<std::tuple<int, int, long long>> e;
      for (int i = 0; i <= n; ++i) marks.push_back(2);
      for (int i = 0; i < n; ++i) e.push_back({i, i + 1, 1});
      int l1 = (int)marks.size();
      marks.push_back(1);
      e.push_back({0, l1, 1});
      int l2 = (int)marks.size();
      marks.push_back(1);
      e.push_back({0, l2, 1});
      int l3 = (int)marks.size();
      marks.push_back(1);
      e.push_back({n, l3, 1});
      int l4 = (int)marks.size();
      marks.push_back(1);
      e.push_back({n, l4, 1});
      v.push_back(detail::make_fiber("I" + std::to_string(n) + "*",
                                     "D" + std::to_string(4 + n) + "~", marks, e));
    }
    // IV* = E6~: central 3 with three arms 2 - 1
    v.push_back(detail::make_fiber(
        "IV*", "E6~", {3, 2, 1, 2, 1, 2, 1},
        {{0, 1, 1}, {1, 2, 1}, {0, 3, 1}, {3, 4, 1}, {0, 5, 1}, {5, 6, 1}}));
    // III* = E7~: chain 1-2-3-4-3-2-1 with a 2 on the central 4
    v.push_back(detail::make_fiber(
        "III*", "E7~", {1, 2, 3, 4, 3, 2, 1, 2},
        {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {5, 6, 1}, {3, 7, 1}}));
    // II* = E8~: chain 1-2-3-4-5-6-4-2 with a 3 on the 6
    v.push_back(detail::make_fiber("II*", "E8~", {1, 2, 3, 4, 5, 6, 4, 2, 3},
                                   {{0, 1, 1},
                                    {1, 2, 1},
                                    {2, 3, 1},
                                    {3, 4, 1},
                                    {4, 5, 1},
                                    {5, 6, 1},
                                    {6, 7, 1},
                                    {5, 8, 1}}));
    return v;
  }();
  return cat;
}

struct DynkinLabel {
  std::string kodaira;
  std::string dynkin;
  // the I_n* types print both names, the E types go by their Dynkin diagram
  std::string display() const {
    if (kodaira.size() >= 3 && kodaira[0] == 'I' && std::isdigit((unsigned char)kodaira[1]) &&
        kodaira.back() == '*')
      return kodaira + " (" + dynkin + ")";
    return dynkin;
  }
};

struct classification_error : std::runtime_error {
  std::string graph_dump;
  explicit classification_error(const std::string& what, std::string dump = "")
      : std::runtime_error(what), graph_dump(std::move(dump)) {}
};

namespace detail {

// backtracking graph isomorphism preserving marks and edge weights
inline bool iso_search(const std::vector<int>& marks_a,
                       const std::vector<std::vector<long long>>& adj_a,
                       const std::vector<int>& marks_b,
                       const std::vector<std::vector<long long>>& adj_b, std::vector<int>& map_ab,
                       std::vector<bool>& used, size_t pos) {
  size_t n = marks_a.size();
  if (pos == n) return true;
  for (size_t cand = 0; cand < n; ++cand) {
    if (used[cand] || marks_a[pos] != marks_b[cand]) continue;
    bool ok = true;
    for (size_t prev = 0; prev < pos && ok; ++prev)
      if (adj_a[pos][prev] != adj_b[cand][map_ab[prev]]) ok = false;
    if (!ok) continue;
    map_ab[pos] = static_cast<int>(cand);
    used[cand] = true;
    if (iso_search(marks_a, adj_a, marks_b, adj_b, map_ab, used, pos + 1)) return true;
    used[cand] = false;
  }
  return false;
}

inline std::string dump_graph(const FiberConfiguration& fc) {
  std::ostringstream os;
  for (size_t i = 0; i < fc.components.size(); ++i)
    os << fc.components[i].name << "(mult " << fc.components[i].mult << ", self "
       << fc.components[i].self_int << ")\n";
  for (size_t i = 0; i < fc.components.size(); ++i)
    for (size_t j = i + 1; j < fc.components.size(); ++j)
      if (fc.adjacency[i][j] != 0)
        os << fc.components[i].name << " -- " << fc.components[j].name << " ["
           << fc.adjacency[i][j] << "]\n";
  return os.str();
}

}  // namespace detail

// Graph-isomorphism match of the weighted dual graph against the catalog; the
// computed multiplicities must equal the catalog marks under the isomorphism.
inline DynkinLabel classify_dynkin(const FiberConfiguration& fc) {
  size_t n = fc.components.size();
  for (auto& c : fc.components)
    if (c.self_int != -2)
      throw classification_error("classify_dynkin: component with self-intersection != -2",
                                 detail::dump_graph(fc));
  std::vector<int> marks(n);
  std::vector<std::vector<long long>> adj(n, std::vector<long long>(n, 0));
  for (size_t i = 0; i < n; ++i) {
    marks[i] = fc.components[i].mult;
    for (size_t j = 0; j < n; ++j)
      if (i != j) adj[i][j] = fc.adjacency[i][j];
  }
  for (auto& cat : kodaira_catalog()) {
    if (cat.marks.size() != n) continue;
    auto sig = [](const std::vector<int>& m, const std::vector<std::vector<long long>>& a) {
      std::vector<std::pair<int, long long>> s;
      for (size_t i = 0; i < m.size(); ++i) {
        long long deg = 0;
        for (size_t j = 0; j < m.size(); ++j) deg += a[i][j];
        s.push_back({m[i], deg});
      }
      std::sort(s.begin(), s.end());
      return s;
    };
    if (sig(marks, adj) != sig(cat.marks, cat.adj)) continue;
    std::vector<int> map_ab(n, -1);
    std::vector<bool> used(n, false);
    if (detail::iso_search(marks, adj, cat.marks, cat.adj, map_ab, used, 0))
      return {cat.kodaira, cat.dynkin};
  }
  throw classification_error("classify_dynkin: configuration not in the catalog",
                             detail::dump_graph(fc));
}

// plain-text dual graph in DOT format
inline std::string dual_graph_dot(const FiberConfiguration& fc, const std::string& name) {
  std::ostringstream os;
  os << "graph \"" << name << "\" {\n";
  for (size_t i = 0; i < fc.components.size(); ++i)
    os << "  n" << i << " [label=\"" << fc.components[i].name << " x" << fc.components[i].mult
       << " (" << fc.components[i].self_int << ")\"];\n";
  for (size_t i = 0; i < fc.components.size(); ++i)
    for (size_t j = i + 1; j < fc.components.size(); ++j)
      for (long long e = 0; e < fc.adjacency[i][j]; ++e)
        os << "  n" << i << " -- n" << j << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace jkt
