#include <doctest.h>

#include <vector>

#include "siegel/kernels.hpp"
#include "siegel/reduction.hpp"
#include "support.hpp"

using namespace siegel;
using testing::random_point;

namespace {

SiegelPoint imag_diagonal(std::vector<double> d) {
  std::vector<cplx> z;
  for (double v : d) z.emplace_back(0.0, v);
  return SiegelPoint::diagonal(z);
}

// A point already reduced: chamber-ordered diagonal heights, small U and X.
SiegelPoint random_reduced(int g, std::mt19937_64& rng) {
  while (true) {
    const SiegelPoint z = random_point(g, rng, 0.5);
    const ReductionResult r = reduce(z);
    if (r.in_siegel_set) return r.z_reduced;
  }
}

void check_soundness(const SiegelPoint& input, const ReductionResult& r) {
  CHECK(r.gamma.satisfies_identity());
  const SiegelPoint again = mobius_act(r.gamma, input);
  CHECK(testing::relative_gap(again.matrix(), r.z_reduced.matrix()) <= 1e-9);
  for (std::size_t i = 1; i < r.heights.size(); ++i)
    CHECK(r.heights[i] >= r.heights[i - 1] * (1.0 - 1e-12) - 1e-12);
  CHECK(r.z_reduced.imag_determinant() >= input.imag_determinant() * (1.0 - 1e-12) - 1e-12);
}

}  // namespace

TEST_CASE("Siegel set parameters") {
  CHECK_THROWS_AS((SiegelSetParams{0.0, 1.0}.validate()), ConfigError);
  CHECK_THROWS_AS((SiegelSetParams{0.5, 0.4}.validate()), ConfigError);
  CHECK_NOTHROW((SiegelSetParams{}.validate()));
}

TEST_CASE("in_siegel_set examples") {
  CHECK(in_siegel_set(imag_diagonal({4.0, 1.0}), {0.5, 0.5}));
  CHECK_FALSE(in_siegel_set(imag_diagonal({1.0, 4.0}), {0.9, 0.5}));
  CHECK_FALSE(in_siegel_set(SiegelPoint(CMatrix::Constant(1, 1, cplx(0.6, 1.0))), {0.5, 0.5}));
  CHECK(in_siegel_set(SiegelPoint(CMatrix::Constant(1, 1, cplx(0.4, 1.0))), {0.5, 0.5}));
}

TEST_CASE("LLL on a Gram matrix") {
  RMatrix basis(3, 3);
  basis << 1, 0, 0, 4, 1, 0, 7, 3, 1;
  const RMatrix gram = basis * basis.transpose();
  const LllResult r = lll_reduce_gram(gram);
  CHECK(r.changed);
  CHECK((r.transform * r.inverse) == IMatrix::Identity(3, 3));
  const RMatrix reduced = r.transform.cast<double>() * gram * r.transform.cast<double>().transpose();
  // unimodular image of the standard lattice: all reduced lengths are 1
  CHECK((reduced - RMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_FALSE(lll_reduce_gram(RMatrix::Identity(3, 3)).changed);
}

TEST_CASE("g = 1 reduction: worked example") {
  const SiegelPoint z(CMatrix::Constant(1, 1, cplx(0.7, 0.3)));
  const ReductionResult r = reduce(z);
  CHECK(std::abs(r.z_reduced(0, 0) - cplx(-1.0 / 3.0, 5.0 / 3.0)) < 1e-12);
  CHECK(r.converged);
  CHECK(r.in_siegel_set);
  check_soundness(z, r);
}

TEST_CASE("g = 1 reduction agrees with the classical algorithm") {
  auto rng = make_stream(314);
  for (int trial = 0; trial < 1000; ++trial) {
    const cplx z{uniform(rng, -3.0, 3.0), std::exp(uniform(rng, -4.0, 1.0))};
    const cplx expected = testing::classical_reduce(z);
    // skip points landing within 1e-7 of the domain's edges, where either side is valid
    if (std::abs(std::abs(expected.real()) - 0.5) < 1e-7 || std::abs(std::norm(expected) - 1.0) < 1e-7) continue;
    const SiegelPoint p(CMatrix::Constant(1, 1, z));
    const ReductionResult r = reduce(p);
    CHECK(std::abs(r.z_reduced(0, 0) - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
    check_soundness(p, r);
  }
}

TEST_CASE("fixed point on the Siegel set") {
  const SiegelPoint z = imag_diagonal({4.0, 2.0, 1.0});
  const ReductionResult r = reduce(z, {0.5, 0.5});
  CHECK(r.iterations == 0);
  CHECK(r.converged);
  CHECK(r.gamma == SymplecticMatrix::identity(3));
  CHECK(r.z_reduced.matrix() == z.matrix());
}

TEST_CASE("partial involution is needed for unbalanced diagonals") {
  const SiegelPoint z = imag_diagonal({0.1, 100.0});
  const ReductionResult r = reduce(z);
  CHECK(r.in_siegel_set);
  check_soundness(z, r);
}

TEST_CASE("reduction of random orbit points") {
  auto rng = make_stream(77);
  for (int trial = 0; trial < 500; ++trial) {
    const int g = uniform_int(rng, 1, 4);
    const SiegelPoint z0 = random_reduced(g, rng);
    const SymplecticMatrix w = random_symplectic_word(g, uniform_int(rng, 0, 5), rng());
    const SiegelPoint z = mobius_act(w, z0);
    const ReductionResult r = reduce(z);
    CHECK(r.converged);
    CHECK(r.in_siegel_set);
    check_soundness(z, r);

    const ReductionResult again = reduce(r.z_reduced);
    CHECK(again.iterations == 0);
    CHECK(again.z_reduced.matrix() == r.z_reduced.matrix());
  }
}

TEST_CASE("iteration limit returns the best point so far") {
  // small heights with real parts: several inversion rounds are needed
  const SiegelPoint z = SiegelPoint::diagonal(std::vector<cplx>{cplx(0.3, 0.01), cplx(0.6, 0.02), cplx(0.2, 0.05)});
  const ReductionResult full = reduce(z);
  REQUIRE(full.iterations >= 2);
  const ReductionResult cut = reduce(z, {}, 1);
  CHECK_FALSE(cut.converged);
  CHECK(cut.iterations == 1);
  check_soundness(z, cut);
  CHECK_THROWS_AS(reduce(z, {}, 0), ConfigError);
}

TEST_CASE("search alphabet and words") {
  CHECK(search_alphabet(4).size() == 32);
  for (const auto& w : search_alphabet(3)) CHECK(w.satisfies_identity());
  const auto words = words_up_to(2, 2);
  CHECK(words.front() == SymplecticMatrix::identity(2));
  CHECK(words_up_to(2, 0).size() == 1);
  // distinct up to sign
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      CHECK_FALSE(words[i].entries() == words[j].entries());
      CHECK_FALSE(words[i].entries() == -words[j].entries());
    }
  CHECK(words_up_to(2, 1).size() < words.size());
}

TEST_CASE("quotient distance examples") {
  auto rng = make_stream(4);
  const SiegelPoint p = random_point(2, rng);
  CHECK(quotient_distance_upper(p, p, 1) == doctest::Approx(0.0));

  for (const auto& gen : search_alphabet(2)) {
    const SiegelPoint q = mobius_act(gen, p);
    CHECK(quotient_distance_upper(p, q, 1) <= 1e-9);
  }

  for (int trial = 0; trial < 20; ++trial) {
    const SiegelPoint a = random_point(2, rng), b = random_point(2, rng);
    const QuotientDistance r0 = quotient_distance_search(a, b, 0);
    CHECK(r0.value == doctest::Approx(distance(r0.p_reduced, r0.q_reduced)));
    const double r1 = quotient_distance_upper(a, b, 1);
    const double r2 = quotient_distance_upper(a, b, 2);
    CHECK(r1 <= r0.value + 1e-12);
    CHECK(r2 <= r1 + 1e-12);
  }
}

TEST_CASE("parallel kernels match the serial reference") {
  auto rng = make_stream(55);
  const auto words = words_up_to(3, 2);
  for (int trial = 0; trial < 5; ++trial) {
    const SiegelPoint p = random_point(3, rng), q = random_point(3, rng);
    const auto s = kernels::min_distance_over_words_serial(words, p, q);
    const auto par = kernels::min_distance_over_words_parallel(words, p, q);
    CHECK(s.distance == par.distance);
    CHECK(s.index == par.index);
    CHECK(quotient_distance_search(p, q, 2, false).value == quotient_distance_search(p, q, 2, true).value);
  }

  std::vector<SiegelPoint> points, targets;
  for (int i = 0; i < 64; ++i) {
    points.push_back(mobius_act(random_symplectic_word(3, 4, rng()), random_point(3, rng)));
    targets.push_back(random_point(3, rng));
  }
  const auto rs = kernels::batch_reduce_serial(points, {});
  const auto rp = kernels::batch_reduce_parallel(points, {});
  REQUIRE(rs.size() == rp.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    CHECK(rs[i].gamma == rp[i].gamma);
    CHECK(rs[i].z_reduced.matrix() == rp[i].z_reduced.matrix());
  }
  CHECK(kernels::batch_distance_serial(points, targets) == kernels::batch_distance_parallel(points, targets));
  CHECK(kernels::max_threads() >= 1);
}
