#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "siegel/elliptic.hpp"
#include "siegel/experiments.hpp"
#include "siegel/metric.hpp"
#include "siegel/plumbing.hpp"
#include "support.hpp"

using namespace siegel;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kTwoPiI{0.0, 2.0 * kPi};

std::vector<cplx> sample_tau(int g) {
  std::vector<cplx> tau;
  for (int k = 0; k < g; ++k) tau.emplace_back(0.1 * k - 0.2, 1.1 + 0.6 * k);
  return tau;
}

TorusChainFamily with_t(TorusChainFamily fam, double t) {
  for (auto& tk : fam.t) tk = t;
  return fam;
}

}  // namespace

TEST_CASE("chain limit is exactly diagonal") {
  for (int g = 1; g <= 6; ++g) {
    const auto tau = sample_tau(g);
    const SiegelPoint p = chain_period_matrix(TorusChainFamily::make(tau, 0.0));
    CHECK(p.matrix() == SiegelPoint::diagonal(tau).matrix());
  }
}

TEST_CASE("junction coefficient equals the kernel B-period") {
  const auto coeffs = chain_coefficients(TorusChainFamily::make({cplx(0, 1), cplx(0, 1)}, 0.01));
  REQUIRE(coeffs.size() == 1);
  CHECK(std::abs(coeffs[0] - kTwoPiI) < 1e-8);
  CHECK(std::abs(coeffs[0] - kernel_periods(TorusModulus(cplx(0, 1)), kDefaultGluePoint).b_period) < 1e-12);

  for (double s : {0.05, 0.01, 1e-3}) {
    const SiegelPoint p = chain_period_matrix(TorusChainFamily::make({cplx(0, 1), cplx(0, 1)}, s));
    CHECK(std::abs(p(0, 1) - (-kTwoPiI * s)) < 1e-8 * s);
  }
}

TEST_CASE("chain matrices are symmetric and positive definite for small t") {
  for (int g = 2; g <= 6; ++g)
    for (double t : {0.05, -0.03, 0.01}) {
      const SiegelPoint p = chain_period_matrix(TorusChainFamily::make(std::vector<cplx>(g, cplx(0, 1)), t));
      CHECK(testing::max_abs(p.matrix() - p.matrix().transpose()) <= 1e-12);
      CHECK(p.min_imag_eigenvalue() > 0.0);
    }
  // complex t is accepted too
  TorusChainFamily fam = TorusChainFamily::make(sample_tau(3), 0.0);
  fam.t = {cplx(0.02, 0.03), cplx(-0.01, 0.04)};
  CHECK(chain_period_matrix(fam).min_imag_eigenvalue() > 0.0);
}

TEST_CASE("chain family validation") {
  CHECK_THROWS_AS(chain_period_matrix(TorusChainFamily::make(sample_tau(3), 0.1)), ExpansionDomain);
  TorusChainFamily wide = TorusChainFamily::make(sample_tau(3), 0.1);
  wide.validity_radius = 0.2;
  CHECK_NOTHROW(wide.validate());

  TorusChainFamily bad_order = TorusChainFamily::make(sample_tau(3), 0.01);
  bad_order.order = {0, 0, 2};
  CHECK_THROWS_AS(bad_order.validate(), InvalidPermutation);

  TorusChainFamily on_lattice = TorusChainFamily::make(sample_tau(3), 0.01);
  on_lattice.glue_points[0].second = sample_tau(3)[1] + 1.0;
  CHECK_THROWS_AS(on_lattice.validate(), InputError);

  // tori of height 0.05 and strong coupling: first-order model breaks down
  TorusChainFamily tight = TorusChainFamily::make({cplx(0, 0.05), cplx(0, 0.05)}, 0.09);
  CHECK_THROWS_AS(chain_period_matrix(tight), NotPositiveDefinite);
}

TEST_CASE("chain convergence order") {
  const TorusChainFamily fam = TorusChainFamily::make(sample_tau(4), 0.0);
  const CMatrix limit = chain_period_matrix(fam).matrix();
  std::vector<double> ts, norms;
  for (double t : default_t_schedule()) {
    ts.push_back(t);
    norms.push_back(testing::max_abs(chain_period_matrix(with_t(fam, t)).matrix() - limit));
  }
  CHECK(std::abs(loglog_slope(ts, norms) - 1.0) <= 0.1);
}

TEST_CASE("hyperelliptic chains use 2-torsion glue points") {
  const TorusChainFamily fam = TorusChainFamily::make(sample_tau(3), 0.01, true);
  for (const auto& [l, r] : fam.glue_points) {
    CHECK(l == kHyperellipticGluePoint);
    CHECK(r == kHyperellipticGluePoint);
  }
  CHECK(fam.hyperelliptic);
  const auto a = chain_period_matrix(fam);
  const auto b = chain_period_matrix(TorusChainFamily::make(sample_tau(3), 0.01));
  CHECK(testing::max_abs(a.matrix() - b.matrix()) < 1e-9);
}

TEST_CASE("reorder_family") {
  const TorusChainFamily fam = TorusChainFamily::make(sample_tau(4), 0.01);
  const TorusChainFamily same = reorder_family(fam, {0, 1, 2, 3});
  CHECK(same.order == fam.order);
  CHECK(same.tau == fam.tau);
  CHECK(same.t == fam.t);

  const TorusChainFamily swapped = reorder_family(fam, {1, 0, 3, 2});
  CHECK(swapped.order == std::vector<int>{1, 0, 3, 2});
  CHECK(swapped.glue_points == fam.glue_points);
  CHECK(swapped.t == fam.t);

  const SiegelPoint limit = chain_period_matrix(with_t(swapped, 0.0));
  const std::vector<cplx> expected{fam.tau[1], fam.tau[0], fam.tau[3], fam.tau[2]};
  CHECK(limit.matrix() == SiegelPoint::diagonal(expected).matrix());
  const std::vector<int> perm{1, 0, 3, 2};
  CHECK(mobius_act(permutation_block(perm), limit).matrix() == chain_period_matrix(with_t(fam, 0.0)).matrix());

  CHECK_THROWS_AS(reorder_family(fam, {0, 1, 1, 3}), InvalidPermutation);
  CHECK_THROWS_AS(reorder_family(fam, {0, 1, 2}), InvalidPermutation);
}

TEST_CASE("non-separating corner and blocks") {
  NonSeparatingFamily fam;
  fam.base = TorusChainFamily::make(sample_tau(2), 0.01);
  fam.t = 1e-3;
  const SiegelPoint z = nonseparating_period_matrix(fam);
  REQUIRE(z.genus() == 3);
  CHECK(z(2, 2).imag() == doctest::Approx(std::log(1000.0) / (2.0 * kPi)).epsilon(1e-12));
  CHECK(z(2, 2).imag() == doctest::Approx(1.099404).epsilon(1e-6));
  CHECK(z(2, 2).real() == doctest::Approx(0.0));

  const SiegelPoint base = chain_period_matrix(fam.base);
  CHECK(z.matrix().topLeftCorner(2, 2) == base.matrix());
  CHECK(z(0, 2) == fam.b - fam.a);
  CHECK(z(1, 2) == cplx(0.0));

  fam.c0 = cplx(0.2, 0.3);
  CHECK(nonseparating_period_matrix(fam)(2, 2).imag() == doctest::Approx(std::log(1000.0) / (2.0 * kPi) + 0.3));

  // couplings enter to first order
  fam.c0 = 0.0;
  CMatrix pi = CMatrix::Constant(3, 3, cplx(0.0, 1.0));
  fam.first_order = pi;
  const SiegelPoint coupled = nonseparating_period_matrix(fam);
  CHECK(std::abs(coupled(0, 1) - (base(0, 1) + fam.t * pi(0, 1))) < 1e-15);
  CHECK(std::abs(coupled(0, 2) - (fam.b - fam.a) - fam.t * pi(0, 2)) < 1e-15);
}

TEST_CASE("non-separating entries as t shrinks") {
  NonSeparatingFamily fam;
  fam.base = TorusChainFamily::make(sample_tau(3), 0.01);
  CMatrix pi = CMatrix::Constant(4, 4, cplx(0.3, 0.2));
  fam.first_order = pi;
  const SiegelPoint base = chain_period_matrix(fam.base);
  std::vector<double> logs, corners;
  for (double t : default_t_schedule()) {
    fam.t = t;
    const SiegelPoint z = nonseparating_period_matrix(fam);
    CHECK(testing::max_abs(z.matrix().topLeftCorner(3, 3) - base.matrix()) <= 1.0 * t);
    CHECK(std::abs(z(0, 3) - (fam.b - fam.a)) <= 1.0 * t);
    CHECK(z.min_imag_eigenvalue() > 0.0);
    logs.push_back(std::log(1.0 / t));
    corners.push_back(z(3, 3).imag());
  }
  // least-squares slope of corner against log(1/t)
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < logs.size(); ++i) mx += logs[i], my += corners[i];
  mx /= logs.size();
  my /= logs.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < logs.size(); ++i) sxy += (logs[i] - mx) * (corners[i] - my), sxx += std::pow(logs[i] - mx, 2);
  CHECK(std::abs(sxy / sxx * 2.0 * kPi - 1.0) <= 0.01);
}

TEST_CASE("non-separating validation") {
  NonSeparatingFamily fam;
  fam.base = TorusChainFamily::make(sample_tau(2), 0.01);
  fam.t = cplx(-0.01, 0.0);
  CHECK_THROWS_AS(nonseparating_period_matrix(fam), BranchAmbiguity);
  fam.t = 0.0;
  CHECK_THROWS_AS(nonseparating_period_matrix(fam), ExpansionDomain);
  fam.t = 0.2;
  CHECK_THROWS_AS(nonseparating_period_matrix(fam), ExpansionDomain);
  fam.t = 0.01;
  fam.b = fam.a;
  CHECK_THROWS_AS(nonseparating_period_matrix(fam), InputError);
  fam.b = cplx(0.4, 0.2);
  fam.handle_position = 5;
  CHECK_THROWS_AS(nonseparating_period_matrix(fam), InputError);
  fam.handle_position = 0;
  fam.t = cplx(-0.01, 1e-6);
  CHECK_NOTHROW(nonseparating_period_matrix(fam));
}

TEST_CASE("two gluing orders share the limit") {
  const TorusChainFamily first = TorusChainFamily::make(sample_tau(4), 0.0);
  const TorusChainFamily second = reorder_family(first, {1, 0, 3, 2});
  const std::vector<int> perm{1, 0, 3, 2};
  CHECK(distance(chain_period_matrix(first),
                 mobius_act(permutation_block(perm), chain_period_matrix(second))) <= 1e-12);
  double previous = INFINITY;
  for (double t : default_t_schedule()) {
    const double d = quotient_distance_upper(chain_period_matrix(with_t(first, t)),
                                             chain_period_matrix(with_t(second, t)), 1);
    CHECK(d < previous);
    previous = d;
  }
  CHECK(previous < 1e-3);
}
