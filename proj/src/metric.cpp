#include "siegel/metric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace siegel {

bool ChamberPoint::satisfies_chamber() const {
  const auto g = h.size();
  for (Eigen::Index i = 0; i < g; ++i) {
    if (!(h(i) > 0.0)) return false;
    for (Eigen::Index j = i; j < g; ++j) {
      if (j > i && h(i) / h(j) < a) return false;
      if (h(i) * h(j) < a) return false;
    }
  }
  return true;
}

SiegelPoint ChamberPoint::point() const {
  std::vector<cplx> diag(h.size());
  for (Eigen::Index k = 0; k < h.size(); ++k) diag[k] = cplx(0.0, h(k) * h(k));
  return SiegelPoint::diagonal(diag);
}

RVector cross_ratio_eigenvalues(const SiegelPoint& z1, const SiegelPoint& z2) {
  if (z1.genus() != z2.genus()) throw DimensionMismatch("distance: genus mismatch");
  const CMatrix& a = z1.matrix();
  const CMatrix& b = z2.matrix();
  const CMatrix diff = a - b;
  const CMatrix mixed = a - b.conjugate();
  // R = (Z1-Z2)(Z1-conj Z2)^{-1}(conj Z1-conj Z2)(conj Z1-Z2)^{-1}
  const CMatrix left = mixed.transpose().partialPivLu().solve(diff.transpose()).transpose();
  const CMatrix right =
      mixed.conjugate().transpose().partialPivLu().solve(diff.conjugate().transpose()).transpose();
  const CMatrix r = left * right;

  Eigen::ComplexEigenSolver<CMatrix> es(r, false);
  if (es.info() != Eigen::Success) throw NumericalFailure("distance: eigenvalue solver failed");
  RVector lambda(r.rows());
  for (Eigen::Index k = 0; k < r.rows(); ++k) {
    const double v = es.eigenvalues()(k).real();
    if (!(v >= -1e-10 && v <= 1.0 + 1e-10))
      throw NumericalFailure("distance: cross-ratio eigenvalue outside [0, 1]");
    lambda(k) = std::clamp(v, 0.0, 1.0 - 1e-15);
  }
  std::sort(lambda.data(), lambda.data() + lambda.size());
  return lambda;
}

double distance(const SiegelPoint& z1, const SiegelPoint& z2) {
  const RVector lambda = cross_ratio_eigenvalues(z1, z2);
  double sum = 0.0;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    const double s = std::sqrt(lambda(k));
    // log((1+s)/(1-s)) = 2 atanh(s)
    const double l = 2.0 * std::atanh(s);
    sum += l * l;
  }
  return std::sqrt(sum);
}

FlatCoordinates flat_coordinates(const SiegelPoint& z) {
  const RMatrix y = z.imag();
  const auto g = y.rows();
  Eigen::SelfAdjointEigenSolver<RMatrix> es(y, Eigen::EigenvaluesOnly);
  const double emin = es.eigenvalues().minCoeff();
  const double emax = es.eigenvalues().maxCoeff();
  if (!(emin > 0.0) || emax / emin > 1e14) throw NumericalFailure("flat_coordinates: Im Z is numerically singular");

  FlatCoordinates fc{RVector::Zero(g), RMatrix::Identity(g, g)};
  // Factor from the last coordinate upward so that U is upper triangular.
  for (Eigen::Index j = g - 1; j >= 0; --j) {
    double dj = y(j, j);
    for (Eigen::Index k = j + 1; k < g; ++k) dj -= fc.u(j, k) * fc.u(j, k) * fc.d(k);
    if (!(dj > 0.0)) throw NumericalFailure("flat_coordinates: non-positive pivot");
    fc.d(j) = dj;
    for (Eigen::Index i = 0; i < j; ++i) {
      double v = y(i, j);
      for (Eigen::Index k = j + 1; k < g; ++k) v -= fc.u(i, k) * fc.u(j, k) * fc.d(k);
      fc.u(i, j) = v / dj;
    }
  }
  return fc;
}

std::pair<double, ChamberPoint> chamber_distance(const SiegelPoint& z, double a) {
  const FlatCoordinates fc = flat_coordinates(z);
  std::vector<cplx> shadow(fc.d.size());
  for (Eigen::Index k = 0; k < fc.d.size(); ++k) shadow[k] = cplx(0.0, fc.d(k));
  const double dist = distance(z, SiegelPoint::diagonal(shadow));

  ChamberPoint cp{fc.heights(), a};
  std::sort(cp.h.data(), cp.h.data() + cp.h.size(), std::greater<>());
  return {dist, cp};
}

}  // namespace siegel
