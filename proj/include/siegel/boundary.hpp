#pragma once

// Baily-Borel limits of sequences in H_g and detection of reducible points.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "siegel/reduction.hpp"
#include "siegel/symplectic.hpp"

namespace siegel {

enum class BoundaryKind { interior, bb_boundary, undetermined };

std::string to_string(BoundaryKind kind);

struct BoundaryDiagnostics {
  std::size_t tail_begin = 0;       // first index of the tested tail
  double leading_spread = 0.0;      // max entrywise |Z'_m - Z'_n| over the tail
  double full_spread = 0.0;         // same for the full matrices
  double min_schur_eigenvalue = 0.0;  // min over the tail of lambda_min(Schur complement)
};

/// kind == interior iff rank == g; limit is set unless undetermined. A rank-0
/// limit is the genus-0 point (A_0).
struct BoundaryVerdict {
  BoundaryKind kind = BoundaryKind::undetermined;
  int rank = 0;
  std::optional<SiegelPoint> limit;
  BoundaryDiagnostics diagnostics;
};

/// Horospherical height of Z relative to its leading k x k block:
/// Im Z'' - (Im Z''')^t (Im Z')^{-1} Im Z'''.
RMatrix schur_height(const SiegelPoint& z, int k);

/// Splits Z_n into Z' (k x k), Z''' (k x (g-k)), Z'' ((g-k) x (g-k)). On the
/// last quarter of the sequence (at least two points): bb_boundary at rank k
/// if Z' spreads by at most tol and the Schur height has smallest eigenvalue
/// above 1/tol; otherwise interior if the full matrices spread by at most tol;
/// otherwise undetermined.
BoundaryVerdict bb_limit_classify(std::span<const SiegelPoint> seq, int k, double tol);

struct ReducibilityReport {
  std::vector<int> partition;  // contiguous block sizes after reduction
  // Largest off-block entry of the reported partition when reducible;
  // otherwise the smallest achievable over non-trivial contiguous splits.
  double off_block_mass = 0.0;
  bool reducible = false;
  SiegelPoint reduced;
};

ReducibilityReport reducibility_detect(const SiegelPoint& z, double eps);

}  // namespace siegel
