#pragma once

// Shared generators and independent g = 1 formulas for the tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "siegel/random.hpp"
#include "siegel/symplectic.hpp"

namespace testing {

using siegel::cplx;
using siegel::CMatrix;
using siegel::RMatrix;
using siegel::SiegelPoint;

// X uniform in [-1, 1], Y = M M^t + 0.5 I with M uniform in [-1, 1].
inline SiegelPoint random_point(int g, std::mt19937_64& rng, double spread = 1.0) {
  RMatrix x(g, g), m(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      x(i, j) = siegel::uniform(rng, -spread, spread);
      m(i, j) = siegel::uniform(rng, -1.0, 1.0);
    }
  RMatrix y = m * m.transpose() + 0.5 * RMatrix::Identity(g, g);
  return SiegelPoint::from_parts(0.5 * (x + x.transpose()), y);
}

inline cplx random_upper(std::mt19937_64& rng) {
  return {siegel::uniform(rng, -2.0, 2.0), std::exp(siegel::uniform(rng, -1.5, 1.5))};
}

// Hyperbolic distance on the upper half plane, curvature -1.
inline double h1_distance(cplx z, cplx w) {
  return std::acosh(1.0 + std::norm(z - w) / (2.0 * z.imag() * w.imag()));
}

inline cplx sl2_act(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, cplx z) {
  return (double(a) * z + double(b)) / (double(c) * z + double(d));
}

// Translate to |Re z| <= 1/2, invert while |z| < 1.
inline cplx classical_reduce(cplx z) {
  for (int i = 0; i < 10000; ++i) {
    z -= std::round(z.real());
    if (std::norm(z) >= 1.0) return z;
    z = -1.0 / z;
  }
  return z;
}

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline double relative_gap(const CMatrix& a, const CMatrix& b) {
  return max_abs(a - b) / std::max(1.0, std::max(max_abs(a), max_abs(b)));
}

}  // namespace testing
