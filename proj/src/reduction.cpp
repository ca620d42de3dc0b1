#include "siegel/reduction.hpp"

#include <cmath>
#include <map>
#include <optional>

#include "siegel/kernels.hpp"

namespace siegel {

void SiegelSetParams::validate() const {
  if (!(a > 0.0)) throw ConfigError("Siegel set parameter a must be positive");
  if (!(n_bound >= 0.5)) throw ConfigError("Siegel set parameter n_bound must be at least 1/2");
}

LllResult lll_reduce_gram(const RMatrix& gram, double delta) {
  const Eigen::Index n = gram.rows();
  LllResult res{IMatrix::Identity(n, n), IMatrix::Identity(n, n), false};
  if (n < 2) return res;

  RMatrix mu = RMatrix::Zero(n, n);
  RVector bstar(n);
  auto orthogonalize = [&] {
    const RMatrix tf = res.transform.cast<double>();
    const RMatrix g = tf * gram * tf.transpose();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < i; ++j) {
        double v = g(i, j);
        for (Eigen::Index k = 0; k < j; ++k) v -= mu(j, k) * mu(i, k) * bstar(k);
        mu(i, j) = v / bstar(j);
      }
      double b = g(i, i);
      for (Eigen::Index k = 0; k < i; ++k) b -= mu(i, k) * mu(i, k) * bstar(k);
      if (!(b > 0.0)) throw NumericalFailure("LLL: Gram matrix lost positive definiteness");
      bstar(i) = b;
    }
  };

  Eigen::Index k = 1;
  long guard = 0;
  while (k < n) {
    if (++guard > 1'000'000) throw NumericalFailure("LLL: no termination");
    orthogonalize();
    for (Eigen::Index j = k - 1; j >= 0; --j) {
      if (std::abs(mu(k, j)) <= 0.5 + 1e-9) continue;
      const std::int64_t q = std::llround(mu(k, j));
      for (Eigen::Index c = 0; c < n; ++c) {
        res.transform(k, c) = detail::checked_add(res.transform(k, c), -detail::checked_mul(q, res.transform(j, c)));
        res.inverse(c, j) = detail::checked_add(res.inverse(c, j), detail::checked_mul(q, res.inverse(c, k)));
      }
      for (Eigen::Index l = 0; l < j; ++l) mu(k, l) -= static_cast<double>(q) * mu(j, l);
      mu(k, j) -= static_cast<double>(q);
      res.changed = true;
    }
    if (bstar(k) >= (delta - mu(k, k - 1) * mu(k, k - 1)) * bstar(k - 1)) {
      ++k;
    } else {
      res.transform.row(k).swap(res.transform.row(k - 1));
      res.inverse.col(k).swap(res.inverse.col(k - 1));
      res.changed = true;
      k = std::max<Eigen::Index>(k - 1, 1);
    }
  }
  return res;
}

bool in_siegel_set(const SiegelPoint& z, const SiegelSetParams& params) {
  params.validate();
  const FlatCoordinates fc = flat_coordinates(z);
  const ChamberPoint cp{fc.heights(), params.a};
  if (!cp.satisfies_chamber()) return false;
  const auto g = z.genus();
  const double u_dev = (fc.u - RMatrix::Identity(g, g)).cwiseAbs().maxCoeff();
  const double x_max = z.real().cwiseAbs().maxCoeff();
  return u_dev <= params.n_bound && x_max <= params.n_bound;
}

namespace {

// LLL in reversed coordinate order, so the shortest vector ends up last and
// the UDU^t shadow is ordered like the chamber (d_1 large, d_g small).
std::optional<SymplecticMatrix> lattice_step(const SiegelPoint& z) {
  const int g = z.genus();
  if (g < 2) return std::nullopt;
  const RMatrix y = z.imag();
  const RMatrix reversed = y.reverse();
  const LllResult lll = lll_reduce_gram(reversed);
  if (!lll.changed) return std::nullopt;
  const IMatrix v = lll.transform.reverse();
  const IMatrix v_inv = lll.inverse.reverse();
  if (v == IMatrix::Identity(g, g)) return std::nullopt;
  return SymplecticMatrix::gl_block(v, v_inv);
}

std::optional<SymplecticMatrix> translation_step(const SiegelPoint& z) {
  const int g = z.genus();
  const RMatrix x = z.real();
  IMatrix b = IMatrix::Zero(g, g);
  bool any = false;
  for (int i = 0; i < g; ++i) {
    for (int j = i; j < g; ++j) {
      if (std::abs(x(i, j)) > 0.5 + 1e-12) {
        b(i, j) = b(j, i) = -std::llround(x(i, j));
        any = true;
      }
    }
  }
  if (!any) return std::nullopt;
  return SymplecticMatrix::translation(b);
}

// det Im(gamma.Z) = det Im Z / |det(CZ+D)|^2. For J_g, |det(CZ+D)| = |det Z|;
// for the partial involution at k it is |Z_kk|.
std::optional<SymplecticMatrix> involution_step(const SiegelPoint& z) {
  const int g = z.genus();
  double best_gain = std::pow(std::abs(z.matrix().determinant()), -2.0);
  int best = -1;
  for (int k = g - 1; k >= 0; --k) {
    const double gain = std::pow(std::abs(z(k, k)), -2.0);
    if (gain > best_gain) {
      best_gain = gain;
      best = k;
    }
  }
  if (!(best_gain > 1.0 + 1e-12)) return std::nullopt;
  return best < 0 ? j_matrix(g) : partial_involution(g, best);
}

}  // namespace

ReductionResult reduce(const SiegelPoint& z_in, const SiegelSetParams& params, int max_iter) {
  params.validate();
  if (max_iter < 1) throw ConfigError("reduce: max_iter must be positive");
  const int g = z_in.genus();
  ReductionResult res{z_in, SymplecticMatrix::identity(g), 0, false, false, {z_in.imag_determinant()}};

  auto apply = [&](const std::optional<SymplecticMatrix>& step) {
    if (!step) return false;
    res.z_reduced = mobius_act(*step, res.z_reduced);
    res.gamma = *step * res.gamma;
    return true;
  };

  while (true) {
    bool fired = apply(lattice_step(res.z_reduced));
    fired = apply(translation_step(res.z_reduced)) || fired;
    fired = apply(involution_step(res.z_reduced)) || fired;
    if (!fired) {
      res.converged = true;
      break;
    }
    ++res.iterations;
    res.heights.push_back(res.z_reduced.imag_determinant());
    if (res.iterations >= max_iter) break;
  }
  res.in_siegel_set = in_siegel_set(res.z_reduced, params);
  return res;
}

std::vector<SymplecticMatrix> search_alphabet(int g) {
  if (g < 1) throw InputError("search_alphabet: genus must be positive");
  std::vector<SymplecticMatrix> letters;
  letters.push_back(j_matrix(g));
  for (int k = 0; k < g; ++k) letters.push_back(partial_involution(g, k));
  for (int i = 0; i < g; ++i) {
    for (int j = i; j < g; ++j) {
      for (int s : {1, -1}) {
        IMatrix b = IMatrix::Zero(g, g);
        b(i, j) = b(j, i) = s;
        letters.push_back(SymplecticMatrix::translation(b));
      }
    }
  }
  for (int k = 0; k + 1 < g; ++k) {
    std::vector<int> perm(g);
    for (int i = 0; i < g; ++i) perm[i] = i;
    std::swap(perm[k], perm[k + 1]);
    letters.push_back(permutation_block(perm));
  }
  if (g > 1) {
    for (int k = 0; k < g; ++k) {
      IMatrix u = IMatrix::Identity(g, g);
      u(k, k) = -1;
      letters.push_back(SymplecticMatrix::gl_block(u, u));
    }
  }
  return letters;
}

namespace {

// Key identifying gamma and -gamma.
std::vector<std::int64_t> projective_key(const SymplecticMatrix& m) {
  const IMatrix& e = m.entries();
  std::vector<std::int64_t> key(e.data(), e.data() + e.size());
  for (auto v : key) {
    if (v == 0) continue;
    if (v < 0)
      for (auto& w : key) w = -w;
    break;
  }
  return key;
}

}  // namespace

std::vector<SymplecticMatrix> words_up_to(int g, int radius) {
  if (radius < 0) throw ConfigError("search radius must be non-negative");
  const auto letters = search_alphabet(g);
  std::vector<SymplecticMatrix> words{SymplecticMatrix::identity(g)};
  std::map<std::vector<std::int64_t>, bool> seen{{projective_key(words[0]), true}};
  std::size_t layer_begin = 0;
  for (int len = 1; len <= radius; ++len) {
    const std::size_t layer_end = words.size();
    for (std::size_t w = layer_begin; w < layer_end; ++w) {
      for (const auto& letter : letters) {
        SymplecticMatrix next = letter * words[w];
        if (seen.emplace(projective_key(next), true).second) words.push_back(std::move(next));
      }
    }
    layer_begin = layer_end;
  }
  return words;
}

QuotientDistance quotient_distance_search(const SiegelPoint& p, const SiegelPoint& q, int search_radius,
                                          bool parallel) {
  if (p.genus() != q.genus()) throw DimensionMismatch("quotient_distance: genus mismatch");
  const SiegelPoint p_red = reduce(p).z_reduced;
  const SiegelPoint q_red = reduce(q).z_reduced;
  const auto words = words_up_to(p.genus(), search_radius);
  const auto best = parallel ? kernels::min_distance_over_words_parallel(words, p_red, q_red)
                             : kernels::min_distance_over_words_serial(words, p_red, q_red);
  return {best.distance, words[best.index], p_red, q_red};
}

double quotient_distance_upper(const SiegelPoint& p, const SiegelPoint& q, int search_radius) {
  return quotient_distance_search(p, q, search_radius).value;
}

}  // namespace siegel
