#pragma once

// Sp(2g) matrices, points of the Siegel upper half space H_g and the
// fractional-linear action (AZ+B)(CZ+D)^{-1}.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "siegel/errors.hpp"

namespace siegel {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using IMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// A point Z = X + iY of H_g: symmetric, Im Z positive definite.
///
/// Construction symmetrizes Z after checking that the asymmetry is at
/// roundoff level (1e-12 relative to the largest entry). Genus 0 is allowed
/// and stands for the single point of A_0.
class SiegelPoint {
 public:
  explicit SiegelPoint(CMatrix z);

  static SiegelPoint from_parts(const RMatrix& re, const RMatrix& im);
  static SiegelPoint diagonal(std::span<const cplx> entries);
  static SiegelPoint scaled_identity(int g, double y = 1.0);  // i*y*I_g

  int genus() const { return static_cast<int>(z_.rows()); }
  const CMatrix& matrix() const { return z_; }
  cplx operator()(int i, int j) const { return z_(i, j); }
  RMatrix real() const { return z_.real(); }
  RMatrix imag() const { return z_.imag(); }

  double min_imag_eigenvalue() const;
  double imag_determinant() const;

 private:
  CMatrix z_;
};

namespace detail {
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
IMatrix checked_product(const IMatrix& x, const IMatrix& y);
}  // namespace detail

/// 2g x 2g matrix x with x^t J_g x = J_g. Integer instances are checked
/// exactly and multiplied with overflow detection; real instances are checked
/// to 1e-12 relative.
template <typename Scalar>
class BasicSymplectic {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  static BasicSymplectic identity(int g) { return BasicSymplectic(Matrix::Identity(2 * g, 2 * g)); }

  static BasicSymplectic j_matrix(int g) {
    if (g < 1) throw InputError("j_matrix: genus must be positive");
    Matrix m = Matrix::Zero(2 * g, 2 * g);
    m.topRightCorner(g, g) = Matrix::Identity(g, g);
    m.bottomLeftCorner(g, g) = -Matrix::Identity(g, g);
    return BasicSymplectic(std::move(m));
  }

  // Throws InputError unless m is symplectic.
  static BasicSymplectic from_entries(Matrix m) {
    if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0)
      throw DimensionMismatch("symplectic matrix must be 2g x 2g with g >= 1");
    BasicSymplectic s(std::move(m));
    if (!s.satisfies_identity()) throw InputError("matrix does not satisfy x^t J x = J");
    return s;
  }

  // (U, 0; 0, U^{-t}) given U and its inverse.
  static BasicSymplectic gl_block(const Matrix& u, const Matrix& u_inv) {
    const auto g = u.rows();
    Matrix m = Matrix::Zero(2 * g, 2 * g);
    m.topLeftCorner(g, g) = u;
    m.bottomRightCorner(g, g) = u_inv.transpose();
    return from_entries(std::move(m));
  }

  // (I, B; 0, I) with B symmetric.
  static BasicSymplectic translation(const Matrix& b) {
    const auto g = b.rows();
    Matrix m = Matrix::Identity(2 * g, 2 * g);
    m.topRightCorner(g, g) = b;
    return from_entries(std::move(m));
  }

  int genus() const { return static_cast<int>(m_.rows() / 2); }
  const Matrix& entries() const { return m_; }
  Scalar operator()(int i, int j) const { return m_(i, j); }

  Matrix A() const { return m_.topLeftCorner(genus(), genus()); }
  Matrix B() const { return m_.topRightCorner(genus(), genus()); }
  Matrix C() const { return m_.bottomLeftCorner(genus(), genus()); }
  Matrix D() const { return m_.bottomRightCorner(genus(), genus()); }

  bool satisfies_identity() const {
    const int g = genus();
    Matrix j = Matrix::Zero(2 * g, 2 * g);
    j.topRightCorner(g, g) = Matrix::Identity(g, g);
    j.bottomLeftCorner(g, g) = -Matrix::Identity(g, g);
    if constexpr (std::is_integral_v<Scalar>) {
      const IMatrix lhs = detail::checked_product(detail::checked_product(m_.transpose(), j), m_);
      return lhs == j;
    } else {
      const Matrix lhs = m_.transpose() * j * m_;
      const double scale = std::max<double>(1.0, m_.cwiseAbs().maxCoeff());
      return (lhs - j).cwiseAbs().maxCoeff() <= 1e-12 * scale * scale;
    }
  }

  BasicSymplectic operator*(const BasicSymplectic& other) const {
    if (genus() != other.genus()) throw DimensionMismatch("symplectic product: genus mismatch");
    if constexpr (std::is_integral_v<Scalar>) {
      return BasicSymplectic(detail::checked_product(m_, other.m_));
    } else {
      return BasicSymplectic(m_ * other.m_);
    }
  }

  // x^{-1} = (D^t, -B^t; -C^t, A^t), exact.
  BasicSymplectic inverse() const {
    const int g = genus();
    Matrix m(2 * g, 2 * g);
    m.topLeftCorner(g, g) = D().transpose();
    m.topRightCorner(g, g) = -B().transpose();
    m.bottomLeftCorner(g, g) = -C().transpose();
    m.bottomRightCorner(g, g) = A().transpose();
    return BasicSymplectic(std::move(m));
  }

  template <typename Other>
  BasicSymplectic<Other> cast() const {
    return BasicSymplectic<Other>::from_entries(m_.template cast<Other>());
  }

  friend bool operator==(const BasicSymplectic& a, const BasicSymplectic& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  explicit BasicSymplectic(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

using SymplecticMatrix = BasicSymplectic<std::int64_t>;
using RealSymplecticMatrix = BasicSymplectic<double>;

inline SymplecticMatrix j_matrix(int g) { return SymplecticMatrix::j_matrix(g); }

namespace detail {
SiegelPoint mobius_complex(const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& d,
                           const SiegelPoint& z);
}  // namespace detail

/// gamma . Z = (AZ+B)(CZ+D)^{-1}, symmetrized. Throws SingularDenominator when
/// cond(CZ+D) > 1e14.
template <typename Scalar>
SiegelPoint mobius_act(const BasicSymplectic<Scalar>& gamma, const SiegelPoint& z) {
  if (gamma.genus() != z.genus()) throw DimensionMismatch("mobius_act: genus mismatch");
  return detail::mobius_complex(gamma.A().template cast<cplx>(), gamma.B().template cast<cplx>(),
                                gamma.C().template cast<cplx>(), gamma.D().template cast<cplx>(), z);
}

/// Phi: SL2^g -> Sp(2g), placing factor k on the k-th diagonal slot of each block.
template <typename Scalar>
BasicSymplectic<Scalar> sl2_product_embed(std::span<const BasicSymplectic<Scalar>> factors) {
  const int g = static_cast<int>(factors.size());
  if (g < 1) throw InputError("sl2_product_embed: need at least one factor");
  using Matrix = typename BasicSymplectic<Scalar>::Matrix;
  Matrix m = Matrix::Zero(2 * g, 2 * g);
  for (int k = 0; k < g; ++k) {
    const auto& f = factors[k];
    if (f.genus() != 1) throw DimensionMismatch("sl2_product_embed: factors must be 2x2");
    m(k, k) = f(0, 0);
    m(k, g + k) = f(0, 1);
    m(g + k, k) = f(1, 0);
    m(g + k, g + k) = f(1, 1);
  }
  return BasicSymplectic<Scalar>::from_entries(std::move(m));
}

/// diag(Z1, Z2) in H_{g1+g2}.
SiegelPoint block_embed(const SiegelPoint& z1, const SiegelPoint& z2);

/// Embedded J_1 acting on coordinate k only (Z_kk -> -1/Z_kk when Z is diagonal).
SymplecticMatrix partial_involution(int g, int k);

/// GL block of the permutation sending coordinate i to perm[i]; acts by Z -> P Z P^t.
SymplecticMatrix permutation_block(std::span<const int> perm);

/// Deterministic product of `length` generators drawn from: J_g, symmetric
/// integer translations with entries in [-2, 2], permutation blocks and
/// elementary transvection blocks.
SymplecticMatrix random_symplectic_word(int g, int length, std::uint64_t seed);

}  // namespace siegel
