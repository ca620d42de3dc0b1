#include "siegel/symplectic.hpp"

#include <algorithm>
#include <numeric>

#include "siegel/random.hpp"

namespace siegel {

namespace {

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

SiegelPoint::SiegelPoint(CMatrix z) : z_(std::move(z)) {
  if (z_.rows() != z_.cols()) throw DimensionMismatch("SiegelPoint: matrix must be square");
  if (z_.size() == 0) return;
  const double asym = max_abs(z_ - z_.transpose());
  if (!(asym <= 1e-12 * std::max(1.0, max_abs(z_))))
    throw NumericalFailure("SiegelPoint: matrix is not symmetric");
  z_ = 0.5 * (z_ + z_.transpose()).eval();
  Eigen::LLT<RMatrix> llt(z_.imag());
  if (llt.info() != Eigen::Success || !(min_imag_eigenvalue() > 0.0))
    throw NotPositiveDefinite("SiegelPoint: Im Z is not positive definite");
}

SiegelPoint SiegelPoint::from_parts(const RMatrix& re, const RMatrix& im) {
  if (re.rows() != im.rows() || re.cols() != im.cols())
    throw DimensionMismatch("SiegelPoint: real and imaginary parts differ in shape");
  CMatrix z(re.rows(), re.cols());
  z.real() = re;
  z.imag() = im;
  return SiegelPoint(std::move(z));
}

SiegelPoint SiegelPoint::diagonal(std::span<const cplx> entries) {
  const auto g = static_cast<Eigen::Index>(entries.size());
  CMatrix z = CMatrix::Zero(g, g);
  for (Eigen::Index k = 0; k < g; ++k) z(k, k) = entries[k];
  return SiegelPoint(std::move(z));
}

SiegelPoint SiegelPoint::scaled_identity(int g, double y) {
  return SiegelPoint(CMatrix::Identity(g, g) * cplx(0.0, y));
}

double SiegelPoint::min_imag_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(z_.imag(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double SiegelPoint::imag_determinant() const { return z_.imag().determinant(); }

namespace detail {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw IntegerOverflow("integer overflow in symplectic arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw IntegerOverflow("integer overflow in symplectic arithmetic");
  return r;
}

IMatrix checked_product(const IMatrix& x, const IMatrix& y) {
  if (x.cols() != y.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
  IMatrix out(x.rows(), y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
      std::int64_t acc = 0;
      for (Eigen::Index k = 0; k < x.cols(); ++k) acc = checked_add(acc, checked_mul(x(i, k), y(k, j)));
      out(i, j) = acc;
    }
  }
  return out;
}

SiegelPoint mobius_complex(const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& d,
                           const SiegelPoint& z) {
  const CMatrix num = a * z.matrix() + b;
  const CMatrix den = c * z.matrix() + d;
  Eigen::JacobiSVD<CMatrix> svd(den);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (!(smin > 0.0) || sv(0) / smin > 1e14)
    throw SingularDenominator("mobius_act: CZ+D is numerically singular");
  // X den = num  <=>  den^t X^t = num^t
  CMatrix out = den.transpose().partialPivLu().solve(num.transpose()).transpose();
  return SiegelPoint(0.5 * (out + out.transpose()));
}

}  // namespace detail

SiegelPoint block_embed(const SiegelPoint& z1, const SiegelPoint& z2) {
  const int g1 = z1.genus();
  const int g2 = z2.genus();
  if (g1 < 1 || g2 < 1) throw InputError("block_embed: both blocks need positive genus");
  CMatrix z = CMatrix::Zero(g1 + g2, g1 + g2);
  z.topLeftCorner(g1, g1) = z1.matrix();
  z.bottomRightCorner(g2, g2) = z2.matrix();
  return SiegelPoint(std::move(z));
}

SymplecticMatrix partial_involution(int g, int k) {
  if (k < 0 || k >= g) throw InputError("partial_involution: slot out of range");
  IMatrix m = IMatrix::Identity(2 * g, 2 * g);
  m(k, k) = 0;
  m(g + k, g + k) = 0;
  m(k, g + k) = 1;
  m(g + k, k) = -1;
  return SymplecticMatrix::from_entries(std::move(m));
}

SymplecticMatrix permutation_block(std::span<const int> perm) {
  const int g = static_cast<int>(perm.size());
  std::vector<int> seen(perm.begin(), perm.end());
  std::sort(seen.begin(), seen.end());
  for (int i = 0; i < g; ++i)
    if (seen[i] != i) throw InvalidPermutation("permutation_block: not a permutation of 0..g-1");
  // (P Z P^t)_{perm[i], perm[j]} = Z_{ij}
  IMatrix p = IMatrix::Zero(g, g);
  for (int i = 0; i < g; ++i) p(perm[i], i) = 1;
  // P orthogonal: P^{-1} = P^t, so U^{-t} = P.
  return SymplecticMatrix::gl_block(p, p.transpose());
}

SymplecticMatrix random_symplectic_word(int g, int length, std::uint64_t seed) {
  if (g < 1) throw InputError("random_symplectic_word: genus must be positive");
  auto rng = make_stream(seed, 0x5ea1);
  SymplecticMatrix word = SymplecticMatrix::identity(g);
  for (int step = 0; step < length; ++step) {
    SymplecticMatrix gen = SymplecticMatrix::identity(g);
    switch (uniform_below(rng, 4)) {
      case 0:
        gen = j_matrix(g);
        break;
      case 1: {
        IMatrix b(g, g);
        for (int i = 0; i < g; ++i)
          for (int j = i; j < g; ++j) b(i, j) = b(j, i) = uniform_int(rng, -2, 2);
        gen = SymplecticMatrix::translation(b);
        break;
      }
      case 2: {
        std::vector<int> perm(g);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = g - 1; i > 0; --i) std::swap(perm[i], perm[uniform_below(rng, i + 1)]);
        gen = permutation_block(perm);
        break;
      }
      default: {
        if (g == 1) {
          gen = j_matrix(1);
          break;
        }
        const int i = uniform_int(rng, 0, g - 1);
        int j = uniform_int(rng, 0, g - 2);
        if (j >= i) ++j;
        const std::int64_t s = uniform_below(rng, 2) == 0 ? 1 : -1;
        IMatrix u = IMatrix::Identity(g, g);
        IMatrix u_inv = IMatrix::Identity(g, g);
        u(i, j) = s;
        u_inv(i, j) = -s;
        gen = SymplecticMatrix::gl_block(u, u_inv);
        break;
      }
    }
    word = word * gen;
  }
  return word;
}

}  // namespace siegel
