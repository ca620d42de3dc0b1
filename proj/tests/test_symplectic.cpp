#include <doctest.h>

#include <vector>

#include "siegel/symplectic.hpp"
#include "support.hpp"

using namespace siegel;
using testing::random_point;

namespace {

SymplecticMatrix sl2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  IMatrix m(2, 2);
  m << a, b, c, d;
  return SymplecticMatrix::from_entries(m);
}

// Random SL2(Z) element as a product of T^k and S.
SymplecticMatrix random_sl2(std::mt19937_64& rng) {
  SymplecticMatrix out = SymplecticMatrix::identity(1);
  const int steps = uniform_int(rng, 0, 4);
  for (int i = 0; i < steps; ++i) {
    out = sl2(1, uniform_int(rng, -2, 2), 0, 1) * out;
    if (uniform_int(rng, 0, 1)) out = sl2(0, 1, -1, 0) * out;
  }
  return out;
}

}  // namespace

TEST_CASE("j_matrix block form") {
  IMatrix j1(2, 2);
  j1 << 0, 1, -1, 0;
  CHECK(j_matrix(1).entries() == j1);

  IMatrix j2 = IMatrix::Zero(4, 4);
  j2(0, 2) = j2(1, 3) = 1;
  j2(2, 0) = j2(3, 1) = -1;
  CHECK(j_matrix(2).entries() == j2);

  for (int g = 1; g <= 5; ++g) {
    const SymplecticMatrix j = j_matrix(g);
    CHECK(j.satisfies_identity());
    CHECK((j * j).entries() == -IMatrix::Identity(2 * g, 2 * g));
  }
  CHECK_THROWS_AS(j_matrix(0), InputError);
}

TEST_CASE("from_entries rejects non-symplectic matrices") {
  IMatrix m = IMatrix::Identity(4, 4);
  m(0, 1) = 1;
  CHECK_THROWS_AS(SymplecticMatrix::from_entries(m), InputError);
  CHECK_THROWS_AS(SymplecticMatrix::from_entries(IMatrix::Identity(3, 3)), DimensionMismatch);
}

TEST_CASE("inverse is exact") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SymplecticMatrix w = random_symplectic_word(3, 6, seed);
    CHECK((w * w.inverse()) == SymplecticMatrix::identity(3));
    CHECK((w.inverse() * w) == SymplecticMatrix::identity(3));
  }
}

TEST_CASE("integer overflow is detected") {
  IMatrix b = IMatrix::Zero(1, 1);
  b(0, 0) = std::int64_t{1} << 40;
  const SymplecticMatrix t = SymplecticMatrix::translation(b);
  const SymplecticMatrix s = j_matrix(1);
  CHECK_NOTHROW(t * s);
  CHECK_THROWS_AS(t * s * t, IntegerOverflow);  // produces 2^80
}

TEST_CASE("SiegelPoint validation") {
  CMatrix z(2, 2);
  z << cplx(0, 1), cplx(0.5, 0), cplx(0.6, 0), cplx(0, 1);
  CHECK_THROWS_AS(SiegelPoint{z}, NumericalFailure);
  z(1, 0) = z(0, 1);
  CHECK_NOTHROW(SiegelPoint{z});
  CMatrix bad(2, 2);
  bad << cplx(0, 1), cplx(0, 2), cplx(0, 2), cplx(0, 1);
  CHECK_THROWS_AS(SiegelPoint{bad}, NotPositiveDefinite);
  CHECK_THROWS_AS(SiegelPoint{CMatrix(2, 3)}, DimensionMismatch);
  CHECK(SiegelPoint(CMatrix(0, 0)).genus() == 0);
}

TEST_CASE("mobius_act examples") {
  for (int g = 1; g <= 4; ++g) {
    const SiegelPoint base = SiegelPoint::scaled_identity(g);
    CHECK(testing::max_abs(mobius_act(j_matrix(g), base).matrix() - base.matrix()) < 1e-14);
  }
  const SiegelPoint i1 = SiegelPoint::scaled_identity(1);
  CHECK(std::abs(mobius_act(sl2(1, 1, 0, 1), i1)(0, 0) - cplx(1, 1)) < 1e-15);
  const SiegelPoint two_i = SiegelPoint::scaled_identity(1, 2.0);
  CHECK(std::abs(mobius_act(j_matrix(1), two_i)(0, 0) - cplx(0, 0.5)) < 1e-15);
  CHECK_THROWS_AS(mobius_act(j_matrix(2), i1), DimensionMismatch);
}

TEST_CASE("mobius_act guards an ill-conditioned denominator") {
  RMatrix m = RMatrix::Zero(4, 4);
  m(0, 0) = 1e8;
  m(1, 1) = 1e-8;
  m(2, 2) = 1e-8;
  m(3, 3) = 1e8;
  const auto gamma = RealSymplecticMatrix::from_entries(m);
  CHECK_THROWS_AS(mobius_act(gamma, SiegelPoint::scaled_identity(2)), SingularDenominator);
}

TEST_CASE("sl2_product_embed") {
  std::vector<SymplecticMatrix> ids(3, SymplecticMatrix::identity(1));
  CHECK(sl2_product_embed<std::int64_t>(ids) == SymplecticMatrix::identity(3));
  std::vector<SymplecticMatrix> js(2, j_matrix(1));
  CHECK(sl2_product_embed<std::int64_t>(js) == j_matrix(2));

  auto rng = make_stream(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int g = uniform_int(rng, 1, 4);
    std::vector<SymplecticMatrix> x, y, xy;
    std::vector<cplx> z, expected;
    for (int k = 0; k < g; ++k) {
      x.push_back(random_sl2(rng));
      y.push_back(random_sl2(rng));
      xy.push_back(x.back() * y.back());
      z.push_back(testing::random_upper(rng));
      const auto& f = x.back();
      expected.push_back(testing::sl2_act(f(0, 0), f(0, 1), f(1, 0), f(1, 1), z.back()));
    }
    // homomorphism, exactly
    CHECK(sl2_product_embed<std::int64_t>(xy) == sl2_product_embed<std::int64_t>(x) * sl2_product_embed<std::int64_t>(y));
    // acts factorwise on diagonal points
    const SiegelPoint image = mobius_act(sl2_product_embed<std::int64_t>(x), SiegelPoint::diagonal(z));
    CHECK(testing::relative_gap(image.matrix(), SiegelPoint::diagonal(expected).matrix()) < 1e-12);
  }
  std::vector<SymplecticMatrix> wrong{j_matrix(2)};
  CHECK_THROWS_AS(sl2_product_embed<std::int64_t>(wrong), DimensionMismatch);
}

TEST_CASE("block_embed") {
  const SiegelPoint a = SiegelPoint::scaled_identity(1);
  const SiegelPoint b = SiegelPoint::scaled_identity(1, 2.0);
  const std::vector<cplx> diag{cplx(0, 1), cplx(0, 2)};
  CHECK(block_embed(a, b).matrix() == SiegelPoint::diagonal(diag).matrix());

  auto rng = make_stream(3);
  for (int trial = 0; trial < 50; ++trial) {
    const SiegelPoint z1 = random_point(2, rng), z2 = random_point(3, rng);
    CHECK(block_embed(z1, z2).min_imag_eigenvalue() > 0.0);
  }
  std::vector<cplx> zs;
  SiegelPoint acc(CMatrix::Constant(1, 1, cplx(0.1, 1.0)));
  zs.push_back(acc(0, 0));
  for (int k = 1; k < 5; ++k) {
    const cplx zk(0.1 * k, 1.0 + k);
    zs.push_back(zk);
    acc = block_embed(acc, SiegelPoint(CMatrix::Constant(1, 1, zk)));
  }
  CHECK(acc.matrix() == SiegelPoint::diagonal(zs).matrix());
}

TEST_CASE("permutation_block and partial_involution") {
  const std::vector<int> perm{2, 0, 1};
  const SymplecticMatrix p = permutation_block(perm);
  CHECK(p.satisfies_identity());
  const std::vector<cplx> d{cplx(0, 1), cplx(0, 2), cplx(0, 3)};
  const SiegelPoint moved = mobius_act(p, SiegelPoint::diagonal(d));
  for (int i = 0; i < 3; ++i) CHECK(moved(perm[i], perm[i]) == d[i]);
  const std::vector<int> bad{0, 0, 1};
  CHECK_THROWS_AS(permutation_block(bad), InvalidPermutation);

  const SiegelPoint inv = mobius_act(partial_involution(3, 1), SiegelPoint::diagonal(d));
  CHECK(std::abs(inv(1, 1) - (-1.0 / d[1])) < 1e-15);
  CHECK(inv(0, 0) == d[0]);
}

TEST_CASE("random_symplectic_word") {
  for (int g = 1; g <= 4; ++g) CHECK(random_symplectic_word(g, 0, 5) == SymplecticMatrix::identity(g));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const SymplecticMatrix w = random_symplectic_word(3, 5, seed);
    CHECK(w.satisfies_identity());
    CHECK(w == random_symplectic_word(3, 5, seed));
  }
  CHECK_FALSE(random_symplectic_word(3, 5, 1) == random_symplectic_word(3, 5, 2));
}

TEST_CASE("action law, H_g preservation and symmetry on random inputs") {
  auto rng = make_stream(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int g = uniform_int(rng, 1, 4);
    const SymplecticMatrix w1 = random_symplectic_word(g, uniform_int(rng, 0, 3), rng());
    const SymplecticMatrix w2 = random_symplectic_word(g, uniform_int(rng, 0, 3), rng());
    const SiegelPoint z = random_point(g, rng);
    const SiegelPoint lhs = mobius_act(w1 * w2, z);
    const SiegelPoint rhs = mobius_act(w1, mobius_act(w2, z));
    CHECK(testing::relative_gap(lhs.matrix(), rhs.matrix()) < 1e-9);
    CHECK(lhs.min_imag_eigenvalue() > 0.0);
    CHECK(testing::max_abs(lhs.matrix() - lhs.matrix().transpose()) <= 1e-11);
  }
}
