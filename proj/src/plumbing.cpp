#include "siegel/plumbing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace siegel {

namespace {

void check_order(const std::vector<int>& order, int g) {
  if (static_cast<int>(order.size()) != g) throw InvalidPermutation("gluing order has the wrong length");
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < g; ++i)
    if (sorted[i] != i) throw InvalidPermutation("gluing order is not a permutation");
}

void check_parameter(cplx t, double radius) {
  if (!(std::abs(t) < radius))
    throw ExpansionDomain("plumbing parameter outside the first-order validity radius");
}

}  // namespace

TorusChainFamily TorusChainFamily::make(std::vector<cplx> tau, cplx t, bool hyperelliptic) {
  TorusChainFamily fam;
  const int g = static_cast<int>(tau.size());
  fam.tau = std::move(tau);
  fam.order.resize(g);
  for (int i = 0; i < g; ++i) fam.order[i] = i;
  const cplx p = hyperelliptic ? kHyperellipticGluePoint : kDefaultGluePoint;
  fam.glue_points.assign(std::max(0, g - 1), {p, p});
  fam.t.assign(std::max(0, g - 1), t);
  fam.hyperelliptic = hyperelliptic;
  return fam;
}

void TorusChainFamily::validate() const {
  const int g = genus();
  if (g < 1) throw InputError("chain family needs at least one torus");
  for (cplx v : tau)
    if (!(v.imag() > 0.0)) throw InputError("torus modulus must have Im tau > 0");
  check_order(order, g);
  if (static_cast<int>(t.size()) != g - 1 || static_cast<int>(glue_points.size()) != g - 1)
    throw InputError("chain family needs g-1 junctions");
  if (!(validity_radius > 0.0 && validity_radius <= 1.0)) throw ConfigError("validity radius must lie in (0, 1]");
  for (int j = 0; j + 1 < g; ++j) {
    check_parameter(t[j], validity_radius);
    const TorusModulus left(tau[order[j]]);
    const TorusModulus right(tau[order[j + 1]]);
    if (lattice_distance(glue_points[j].first, left) < 1e-12 ||
        lattice_distance(glue_points[j].second, right) < 1e-12)
      throw InputError("glue point lies on the lattice of its torus");
  }
}

std::vector<cplx> chain_coefficients(const TorusChainFamily& fam) {
  fam.validate();
  std::vector<cplx> kappa(fam.t.size());
  for (std::size_t j = 0; j < fam.t.size(); ++j) {
    const TorusModulus right(fam.tau[fam.order[j + 1]]);
    const cplx left_differential = 1.0;  // normalized dz on the left torus
    kappa[j] = left_differential * kernel_periods(right, fam.glue_points[j].second).b_period;
  }
  return kappa;
}

SiegelPoint chain_period_matrix(const TorusChainFamily& fam, const std::vector<cplx>& coefficients) {
  fam.validate();
  const int g = fam.genus();
  if (static_cast<int>(coefficients.size()) != g - 1) throw DimensionMismatch("one coefficient per junction");
  CMatrix pi = CMatrix::Zero(g, g);
  for (int j = 0; j < g; ++j) pi(j, j) = fam.tau[fam.order[j]];
  for (int j = 0; j + 1 < g; ++j) {
    if (fam.t[j] == cplx(0.0)) continue;
    pi(j, j + 1) = pi(j + 1, j) = -fam.t[j] * coefficients[j];
  }
  try {
    return SiegelPoint(std::move(pi));
  } catch (const NotPositiveDefinite&) {
    throw NotPositiveDefinite("chain period matrix: Im Pi(t) not positive definite (t too large)");
  }
}

SiegelPoint chain_period_matrix(const TorusChainFamily& fam) {
  const bool degenerate = std::all_of(fam.t.begin(), fam.t.end(), [](cplx v) { return v == cplx(0.0); });
  if (degenerate) return chain_period_matrix(fam, std::vector<cplx>(fam.t.size(), 0.0));
  return chain_period_matrix(fam, chain_coefficients(fam));
}

TorusChainFamily reorder_family(const TorusChainFamily& fam, const std::vector<int>& order) {
  check_order(order, fam.genus());
  TorusChainFamily out = fam;
  out.order = order;
  return out;
}

void NonSeparatingFamily::validate() const {
  base.validate();
  const int g = genus();
  if (handle_position < 0 || handle_position >= base.genus())
    throw InputError("handle position outside the base chain");
  if (a == b) throw InputError("handle feet a and b must be distinct");
  if (t == cplx(0.0)) throw ExpansionDomain("non-separating expansion needs t != 0");
  check_parameter(t, base.validity_radius);
  if (std::abs(std::abs(std::arg(t)) - std::numbers::pi) < 1e-9)
    throw BranchAmbiguity("arg t within 1e-9 of pi: principal branch of log t jumps here");
  if (first_order && (first_order->rows() != g || first_order->cols() != g))
    throw DimensionMismatch("first-order couplings must be g x g");
}

SiegelPoint nonseparating_period_matrix(const NonSeparatingFamily& fam) {
  fam.validate();
  const int g = fam.genus();
  const int h = g - 1;
  const SiegelPoint base = chain_period_matrix(fam.base);
  const CMatrix pi1 = fam.first_order.value_or(CMatrix::Zero(g, g));

  CMatrix z = CMatrix::Zero(g, g);
  z.topLeftCorner(h, h) = base.matrix() + fam.t * pi1.topLeftCorner(h, h);
  for (int j = 0; j < h; ++j) {
    const cplx a_j = j == fam.handle_position ? fam.b - fam.a : cplx(0.0);
    z(j, h) = a_j + fam.t * pi1(j, h);
    z(h, j) = a_j + fam.t * pi1(h, j);
  }
  const cplx i_over_2pi{0.0, 1.0 / (2.0 * std::numbers::pi)};
  z(h, h) = -i_over_2pi * std::log(fam.t) + fam.c0 + fam.c1 * fam.t;
  try {
    return SiegelPoint(std::move(z));
  } catch (const NotPositiveDefinite&) {
    throw NotPositiveDefinite("non-separating period matrix: Im Pi(t) not positive definite");
  }
}

}  // namespace siegel
