#include "siegel/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace siegel {

std::string to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::interior:
      return "interior";
    case BoundaryKind::bb_boundary:
      return "bb_boundary";
    case BoundaryKind::undetermined:
      break;
  }
  return "undetermined";
}

RMatrix schur_height(const SiegelPoint& z, int k) {
  const int g = z.genus();
  if (k < 0 || k > g) throw RankOutOfRange("schur_height: rank outside [0, g]");
  const RMatrix y = z.imag();
  const int m = g - k;
  const RMatrix y_lower = y.bottomRightCorner(m, m);
  if (k == 0) return y_lower;
  const RMatrix y_lead = y.topLeftCorner(k, k);
  const RMatrix y_off = y.topRightCorner(k, m);
  return y_lower - y_off.transpose() * y_lead.llt().solve(y_off);
}

namespace {

double max_entry_gap(const CMatrix& a, const CMatrix& b) {
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

double tail_spread(std::span<const SiegelPoint> seq, std::size_t begin, int k) {
  double spread = 0.0;
  for (std::size_t m = begin; m < seq.size(); ++m)
    for (std::size_t n = m + 1; n < seq.size(); ++n)
      spread = std::max(spread, max_entry_gap(seq[m].matrix().topLeftCorner(k, k),
                                              seq[n].matrix().topLeftCorner(k, k)));
  return spread;
}

}  // namespace

BoundaryVerdict bb_limit_classify(std::span<const SiegelPoint> seq, int k, double tol) {
  if (seq.empty()) throw InputError("bb_limit_classify: empty sequence");
  if (!(tol > 0.0)) throw ConfigError("bb_limit_classify: tolerance must be positive");
  const int g = seq.front().genus();
  for (const auto& z : seq)
    if (z.genus() != g) throw DimensionMismatch("bb_limit_classify: mixed genera");
  if (k < 0 || k > g) throw RankOutOfRange("bb_limit_classify: rank outside [0, g]");

  const std::size_t n = seq.size();
  const std::size_t tail = std::max<std::size_t>(std::min<std::size_t>(n, 2), (n + 3) / 4);

  BoundaryVerdict verdict;
  auto& diag = verdict.diagnostics;
  diag.tail_begin = n - tail;
  diag.leading_spread = tail_spread(seq, diag.tail_begin, k);
  diag.full_spread = tail_spread(seq, diag.tail_begin, g);
  diag.min_schur_eigenvalue = std::numeric_limits<double>::infinity();
  if (k < g) {
    for (std::size_t i = diag.tail_begin; i < n; ++i) {
      Eigen::SelfAdjointEigenSolver<RMatrix> es(schur_height(seq[i], k), Eigen::EigenvaluesOnly);
      diag.min_schur_eigenvalue = std::min(diag.min_schur_eigenvalue, es.eigenvalues().minCoeff());
    }
  }

  const SiegelPoint& last = seq.back();
  if (k < g && diag.leading_spread <= tol && diag.min_schur_eigenvalue > 1.0 / tol) {
    verdict.kind = BoundaryKind::bb_boundary;
    verdict.rank = k;
    verdict.limit = SiegelPoint(last.matrix().topLeftCorner(k, k));
  } else if (diag.full_spread <= tol) {
    verdict.kind = BoundaryKind::interior;
    verdict.rank = g;
    verdict.limit = last;
  } else {
    verdict.kind = BoundaryKind::undetermined;
    verdict.rank = k;
  }
  return verdict;
}

ReducibilityReport reducibility_detect(const SiegelPoint& z, double eps) {
  if (!(eps > 0.0)) throw ConfigError("reducibility_detect: tolerance must be positive");
  const ReductionResult red = reduce(z);
  const CMatrix& m = red.z_reduced.matrix();
  const int g = red.z_reduced.genus();

  // crossing[c] = largest |Z_ij| with i < c <= j, for a cut before index c.
  std::vector<double> crossing(g, 0.0);
  for (int c = 1; c < g; ++c)
    crossing[c] = m.topRightCorner(c, g - c).cwiseAbs().maxCoeff();

  ReducibilityReport report{{}, 0.0, false, red.z_reduced};
  int start = 0;
  double mass = 0.0;
  double least = std::numeric_limits<double>::infinity();
  for (int c = 1; c < g; ++c) {
    least = std::min(least, crossing[c]);
    if (crossing[c] <= eps) {
      report.partition.push_back(c - start);
      start = c;
      mass = std::max(mass, crossing[c]);
    }
  }
  report.partition.push_back(g - start);
  report.reducible = report.partition.size() > 1;
  report.off_block_mass = report.reducible ? mass : (g > 1 ? least : 0.0);
  return report;
}

}  // namespace siegel
