#pragma once

// Invariant distance on H_g and Iwasawa (flat) coordinates.
//
// Normalization: for g = 1, distance(i*y1, i*y2) = |log(y2/y1)|.

#include <utility>
#include <vector>

#include "siegel/symplectic.hpp"

namespace siegel {

/// Im Z = U diag(d) U^t with U unit upper triangular.
struct FlatCoordinates {
  RVector d;
  RMatrix u;

  // h_i = sqrt(d_i), in coordinate order.
  RVector heights() const { return d.cwiseSqrt(); }
};

/// Diagonal point of the Weyl chamber C_a, stored by h (Z = i diag(h^2)).
struct ChamberPoint {
  RVector h;
  double a = 0.5;

  // h_i/h_j >= a for i < j and h_i h_j >= a for i <= j.
  bool satisfies_chamber() const;
  SiegelPoint point() const;
};

double distance(const SiegelPoint& z1, const SiegelPoint& z2);

/// Eigenvalues of the cross-ratio matrix, sorted ascending, clamped into [0, 1-1e-15].
RVector cross_ratio_eigenvalues(const SiegelPoint& z1, const SiegelPoint& z2);

FlatCoordinates flat_coordinates(const SiegelPoint& z);

/// distance(Z, i diag(d)) with d from flat_coordinates, and the chamber point
/// with h sorted descending. The distance uses the unsorted shadow.
std::pair<double, ChamberPoint> chamber_distance(const SiegelPoint& z, double a);

}  // namespace siegel
