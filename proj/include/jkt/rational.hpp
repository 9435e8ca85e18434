#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace jkt {

// Exact scalar: arbitrary-precision rational, always stored reduced with
// positive denominator. Every lattice and polynomial-identity computation in
// this library runs over this type; nothing exact ever round-trips through
// floating point.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long n, long long d = 1) { return Rational(n, d); }

inline Integer num(const Rational& q) { return numerator(q); }
inline Integer den(const Rational& q) { return denominator(q); }

inline bool is_integer(const Rational& q) { return den(q) == 1; }

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) {
  std::string s = num(q).str();
  if (den(q) != 1) s += "/" + den(q).str();
  return s;
}

// Integer power, exponent >= 0.
inline Rational rat_pow(const Rational& base, int e) {
  if (e < 0) throw std::invalid_argument("rat_pow: negative exponent");
  Rational r(1);
  Rational b = base;
  for (int k = e; k > 0; k >>= 1) {
    if (k & 1) r *= b;
    b *= b;
  }
  return r;
}

// Reconstruct a rational with small denominator from a double via continued
// fractions. Used only to propose candidates that are afterwards verified
// exactly; never trusted on its own.
inline std::optional<Rational> rational_reconstruct(double x, long long max_den = 1'000'000'000LL,
                                                    double eps = 1e-9) {
  if (!(x == x)) return std::nullopt;  // NaN
  double scale = std::max(1.0, std::abs(x));
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(v);
    if (fl > 9e17 || fl < -9e17) return std::nullopt;
    long long a = static_cast<long long>(fl);
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(approx - x) <= eps * scale) return Rational(p1, q1);
    double frac = v - fl;
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  if (q1 != 0) {
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(approx - x) <= eps * scale) return Rational(p1, q1);
  }
  return std::nullopt;
}

}  // namespace jkt
