#pragma once

// Siegel-set membership and approximate reduction of points of H_g into a
// fundamental set for Sp(2g, Z).

#include <vector>

#include "siegel/metric.hpp"
#include "siegel/symplectic.hpp"

namespace siegel {

/// Siegel set S_{a,omega}: chamber parameter a and the box
/// ||U - I||_max <= n_bound, ||Re Z||_max <= n_bound standing in for omega.
struct SiegelSetParams {
  double a = 0.5;
  double n_bound = 1.0;

  void validate() const;
};

struct ReductionResult {
  SiegelPoint z_reduced;
  SymplecticMatrix gamma;  // gamma . Z_input = z_reduced
  int iterations = 0;
  bool converged = false;
  bool in_siegel_set = false;     // membership of z_reduced for the params passed to reduce()
  std::vector<double> heights;    // det Im Z at the start and after every iteration
};

/// Unimodular T (and its inverse) such that T G T^t is LLL-reduced with
/// parameter delta; rows of T are the new basis in terms of the old one.
struct LllResult {
  IMatrix transform;
  IMatrix inverse;
  bool changed = false;
};
LllResult lll_reduce_gram(const RMatrix& gram, double delta = 0.99);

bool in_siegel_set(const SiegelPoint& z, const SiegelSetParams& params);

/// Repeats (1) LLL step on Im Z in reversed coordinate order, (2) integer
/// translation to |Re Z_ij| <= 1/2, (3) the height-increasing involution among
/// J_g and the partial involutions, until no step fires or max_iter passes.
ReductionResult reduce(const SiegelPoint& z, const SiegelSetParams& params = {}, int max_iter = 1000);

/// Generators used by the quotient-distance word search: J_g, partial
/// involutions, unit symmetric translations of both signs, adjacent
/// transpositions and coordinate sign flips.
std::vector<SymplecticMatrix> search_alphabet(int g);

/// All distinct products of at most `radius` alphabet letters, identified up
/// to the sign -I (which acts trivially). The identity comes first, then words
/// in order of length.
std::vector<SymplecticMatrix> words_up_to(int g, int radius);

struct QuotientDistance {
  double value = 0.0;
  SymplecticMatrix word;  // minimizer; acts on the reduced p
  SiegelPoint p_reduced;
  SiegelPoint q_reduced;
};

QuotientDistance quotient_distance_search(const SiegelPoint& p, const SiegelPoint& q, int search_radius,
                                          bool parallel = true);

/// Upper bound for the distance in Sp(2g,Z)\H_g: min over words w of length
/// <= search_radius of distance(w . reduce(p), reduce(q)).
double quotient_distance_upper(const SiegelPoint& p, const SiegelPoint& q, int search_radius);

}  // namespace siegel
