#include "siegel/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace siegel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kTwoPiI{0.0, 2.0 * kPi};
constexpr double kPathOffset = 0.11;
constexpr double kMinPathClearance = 1e-3;

// Lattice-reduce w against Z + tau Z (tau in the fundamental domain) so that
// |Im w| <= Im tau / 2 and |Re w| <= 1/2 approximately.
cplx reduce_argument(cplx w, cplx tau) {
  const double n = std::round(w.imag() / tau.imag());
  w -= n * tau;
  w -= std::round(w.real());
  return w;
}

double distance_to_lattice(cplx w, cplx tau) {
  double best = std::abs(w);
  for (int m = -1; m <= 1; ++m)
    for (int n = -1; n <= 1; ++n) best = std::min(best, std::abs(w - (double(m) + double(n) * tau)));
  return best;
}

// u/(1-u)^2, symmetric under u -> 1/u.
cplx q_term(cplx u) { return u / ((1.0 - u) * (1.0 - u)); }

// wp on Z + tau Z, tau reduced, w already lattice-reduced. Each exponential is
// formed directly so tall tori neither overflow nor produce 0 * inf.
cplx wp_reduced(cplx w, cplx tau) {
  cplx series = 1.0 / 12.0;
  for (int n = 1; n <= 400; ++n) {
    const cplx shift = double(n) * tau;
    const cplx term = q_term(std::exp(kTwoPiI * (shift + w))) + q_term(std::exp(kTwoPiI * (shift - w))) -
                      2.0 * q_term(std::exp(kTwoPiI * shift));
    series += term;
    if (std::abs(term) <= 1e-18 * std::max(1.0, std::abs(series))) break;
  }
  // n = 0 term (2 pi i)^2 u/(1-u)^2 = pi^2/sin^2(pi w); away from the real
  // axis the exponential form avoids overflow in sin.
  cplx zero_term;
  if (std::abs(w.imag()) < 1.0) {
    const cplx s = std::sin(kPi * w);
    zero_term = kPi * kPi / (s * s);
  } else {
    zero_term = kTwoPiI * kTwoPiI * q_term(std::exp(kTwoPiI * (w.imag() > 0.0 ? w : -w)));
  }
  return zero_term + kTwoPiI * kTwoPiI * series;
}

cplx gauss_panel(cplx a, cplx b, cplx pole, const TorusModulus& tau, const GaussLegendreRule& rule) {
  const cplx half = 0.5 * (b - a);
  const cplx mid = a + half;
  cplx sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * wp(mid + half * rule.nodes[i] - pole, tau);
  return sum * half;
}

// Panels are bisected until each is no longer than its midpoint's distance
// to the nearest pole, so every pole stays outside the panel's
// Bernstein ellipse with rho >= 1 + sqrt(2).
cplx integrate_panel(cplx a, cplx b, cplx pole, const TorusModulus& tau, const GaussLegendreRule& rule,
                     int depth) {
  const double clearance = lattice_distance(0.5 * (a + b) - pole, tau);
  if (std::abs(b - a) <= clearance || depth >= 48) return gauss_panel(a, b, pole, tau, rule);
  const cplx mid = 0.5 * (a + b);
  return integrate_panel(a, mid, pole, tau, rule, depth + 1) + integrate_panel(mid, b, pole, tau, rule, depth + 1);
}

// int_start^end wp(x - pole) dx by adaptive composite Gauss-Legendre.
cplx integrate_wp(cplx start, cplx end, cplx pole, const TorusModulus& tau, const GaussLegendreRule& rule) {
  return integrate_panel(start, end, pole, tau, rule, 0);
}

// Rows of poles pole + n*tau sit at heights Im(pole) + n Im(tau). Returns a
// height near `y` with clearance min(kPathOffset, Im tau / 2) from all rows.
double clear_height(double y, double pole_im, double spacing, double& clearance) {
  const double want = std::min(kPathOffset, spacing / 2.0);
  const double n = std::round((y - pole_im) / spacing);
  const double row = pole_im + n * spacing;
  if (std::abs(y - row) >= want) {
    clearance = std::min(std::abs(y - row), spacing - std::abs(y - row));
    return y;
  }
  clearance = want;
  return row + (y >= row ? want : -want);
}

}  // namespace

TorusModulus::TorusModulus(cplx tau) : tau_(tau) {
  if (!(tau.imag() > 0.0) || !std::isfinite(tau.real())) throw InputError("torus modulus must have Im tau > 0");
}

ModularReduction reduce_modulus(cplx tau) {
  ModularReduction r{tau};
  for (int guard = 0; guard < 10000; ++guard) {
    const long n = std::lround(r.tau_reduced.real());
    if (n != 0) {
      // tau -> tau - n
      r.tau_reduced -= double(n);
      r.a -= n * r.c;
      r.b -= n * r.d;
    }
    if (std::norm(r.tau_reduced) < 1.0 - 1e-15) {
      // tau -> -1/tau
      r.tau_reduced = -1.0 / r.tau_reduced;
      const long a = r.a, b = r.b;
      r.a = -r.c;
      r.b = -r.d;
      r.c = a;
      r.d = b;
    } else {
      return r;
    }
  }
  throw NumericalFailure("reduce_modulus: no convergence");
}

cplx wp(cplx z, const TorusModulus& tau) {
  const ModularReduction red = reduce_modulus(tau.value());
  const cplx lambda = double(red.c) * tau.value() + double(red.d);
  const cplx w = reduce_argument(z / lambda, red.tau_reduced);
  if (std::abs(lambda) * distance_to_lattice(w, red.tau_reduced) < 1e-12)
    throw PoleProximity("wp: argument within 1e-12 of a lattice point");
  return wp_reduced(w, red.tau_reduced) / (lambda * lambda);
}

double lattice_distance(cplx z, const TorusModulus& tau) {
  const cplx t = tau.value();
  const double n0 = std::round(z.imag() / t.imag());
  double best = std::numeric_limits<double>::infinity();
  // Scan rows outward until their vertical offset alone exceeds the best hit.
  for (double k = 0.0;; k += 1.0) {
    bool any_row = false;
    for (double n : {n0 - k, n0 + k}) {
      const cplx w = z - n * t;
      if (std::abs(w.imag()) >= best) continue;
      any_row = true;
      best = std::min(best, std::abs(w - std::round(w.real())));
      if (k == 0.0) break;
    }
    if (!any_row && k > 0.0) return best;
  }
}

double QuasiPeriods::legendre_residual(const TorusModulus& tau) const {
  return std::abs(h1 * tau.value() - h2 - kTwoPiI);
}

QuasiPeriods quasi_periods(const TorusModulus& tau, int nodes) {
  const GaussLegendreRule rule = gauss_legendre(nodes);
  const cplx t = tau.value();
  // Horizontal line midway between pole rows; line along tau through 1/2.
  const cplx h_start{0.0, t.imag() / 2.0};
  return {-integrate_wp(h_start, h_start + 1.0, 0.0, tau, rule), -integrate_wp(0.5, 0.5 + t, 0.0, tau, rule)};
}

KernelPeriods kernel_periods(const TorusModulus& tau, cplx p, int nodes) {
  const GaussLegendreRule rule = gauss_legendre(nodes);
  const cplx t = tau.value();
  const QuasiPeriods qp = quasi_periods(tau, nodes);

  // A-cycle [0, 1], moved vertically off the rows p + n tau.
  double a_clear = 0.0;
  const double y = clear_height(0.0, p.imag(), t.imag(), a_clear);

  // B-cycle [0, tau], moved along the real axis. Lines of poles through
  // p + m have real intercepts ip + m; clearance measured perpendicular.
  const double ip = p.real() - p.imag() / t.imag() * t.real();
  double intercept_clear = 0.0;
  const double c = clear_height(0.0, ip, 1.0, intercept_clear);
  const double b_clear = intercept_clear * t.imag() / std::abs(t);
  if (a_clear < kMinPathClearance || b_clear < kMinPathClearance)
    throw PoleProximity("kernel_periods: cannot move the paths 1e-3 away from the pole");

  const cplx a_start{0.0, y};
  const cplx a_period = integrate_wp(a_start, a_start + 1.0, p, tau, rule) + qp.h1;
  const cplx b_period = integrate_wp(c, c + t, p, tau, rule) + qp.h1 * t;
  return {a_period, b_period};
}

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw InputError("gauss_legendre: need at least one node");
  GaussLegendreRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace siegel
