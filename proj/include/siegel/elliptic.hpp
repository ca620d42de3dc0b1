#pragma once

// Weierstrass elliptic functions on C/(Z + tau Z).
//
// Conventions: zeta(z + 1) = zeta(z) + H1, zeta(z + tau) = zeta(z) + H2,
// so that H1 tau - H2 = 2 pi i (Legendre). The second-kind kernel is
// (wp(x - p) + H1) dx, whose A-period over [0, 1] vanishes and whose
// B-period over [0, tau] equals 2 pi i.

#include <complex>
#include <vector>

#include "siegel/errors.hpp"

namespace siegel {

using cplx = std::complex<double>;

class TorusModulus {
 public:
  explicit TorusModulus(cplx tau);
  cplx value() const { return tau_; }

 private:
  cplx tau_;
};

/// tau' = (a tau + b)/(c tau + d) in the standard fundamental domain
/// |Re tau'| <= 1/2, |tau'| >= 1.
struct ModularReduction {
  cplx tau_reduced;
  long a = 1, b = 0, c = 0, d = 1;
};
ModularReduction reduce_modulus(cplx tau);

/// Euclidean distance from z to the nearest point of Z + tau Z.
double lattice_distance(cplx z, const TorusModulus& tau);

/// Weierstrass wp(z; Z + tau Z). Throws PoleProximity within 1e-12 of the lattice.
cplx wp(cplx z, const TorusModulus& tau);

struct QuasiPeriods {
  cplx h1;
  cplx h2;

  double legendre_residual(const TorusModulus& tau) const;
};

/// H1 = -int wp over a horizontal period, H2 = -int wp over a period along tau,
/// both on pole-free paths, by composite Gauss-Legendre with `nodes` per panel.
QuasiPeriods quasi_periods(const TorusModulus& tau, int nodes = 64);

struct KernelPeriods {
  cplx a_period;
  cplx b_period;
};

/// Periods of (wp(x - p) + H1) dx over [0, 1] and [0, tau]. Each path is moved
/// off the pole rows (offset 0.11, or half the row spacing if smaller).
KernelPeriods kernel_periods(const TorusModulus& tau, cplx p, int nodes = 64);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n);

}  // namespace siegel
