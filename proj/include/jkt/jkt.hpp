#pragma once

// Spectral curves of the rank-3 JKT Higgs moduli, their elliptic pencils, and
// the spectral-level transform to the rank-2 side.

#include "jkt/approx.hpp"
#include "jkt/bipoly.hpp"
#include "jkt/kodaira.hpp"
#include "jkt/lattice.hpp"
#include "jkt/localforms.hpp"
#include "jkt/matrix.hpp"
#include "jkt/nahm.hpp"
#include "jkt/pencil.hpp"
#include "jkt/pipeline.hpp"
#include "jkt/poly.hpp"
#include "jkt/puiseux.hpp"
#include "jkt/rational.hpp"
#include "jkt/report.hpp"
#include "jkt/sampler.hpp"
#include "jkt/series.hpp"
#include "jkt/spectral.hpp"
