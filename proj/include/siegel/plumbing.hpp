#pragma once

// First-order period matrices of surfaces obtained by plumbing tori.
//
// Rows and columns of a chain period matrix are indexed by gluing position:
// position j carries torus order[j], and junction j joins positions j and j+1.

#include <optional>
#include <utility>
#include <vector>

#include "siegel/elliptic.hpp"
#include "siegel/symplectic.hpp"

namespace siegel {

constexpr double kDefaultValidityRadius = 0.1;
constexpr cplx kDefaultGluePoint{0.3, 0.0};
constexpr cplx kHyperellipticGluePoint{0.5, 0.0};  // 2-torsion, fixed by z -> -z

struct TorusChainFamily {
  std::vector<cplx> tau;                          // moduli of S_1..S_g, by torus index
  std::vector<int> order;                         // 0-based torus index at each gluing position
  std::vector<std::pair<cplx, cplx>> glue_points;  // per junction: point on the left and right torus
  std::vector<cplx> t;                            // per junction plumbing parameter
  double validity_radius = kDefaultValidityRadius;
  bool hyperelliptic = false;  // flag only; glue points carry the geometry

  int genus() const { return static_cast<int>(tau.size()); }

  /// Identity order, all junctions at the same t, default (or 2-torsion) glue points.
  static TorusChainFamily make(std::vector<cplx> tau, cplx t, bool hyperelliptic = false);

  /// Throws on malformed sizes, a bad permutation, lattice glue points, or
  /// |t_k| >= validity_radius (ExpansionDomain).
  void validate() const;
};

/// Coefficient kappa_j with Pi(t)_{j,j+1} = -t_j kappa_j: the left normalized
/// differential at the glue point (dz, so 1) times the B-period of the
/// second-kind kernel on the right torus.
std::vector<cplx> chain_coefficients(const TorusChainFamily& fam);

SiegelPoint chain_period_matrix(const TorusChainFamily& fam);
SiegelPoint chain_period_matrix(const TorusChainFamily& fam, const std::vector<cplx>& coefficients);

/// Same tori, glue points and t's by position; new gluing order (0-based).
TorusChainFamily reorder_family(const TorusChainFamily& fam, const std::vector<int>& order);

/// A genus g-1 chain with one extra handle attached at points a, b of the
/// torus at gluing position `handle_position`, pinched by t.
struct NonSeparatingFamily {
  TorusChainFamily base;
  int handle_position = 0;
  cplx a{0.1, 0.1};
  cplx b{0.4, 0.2};
  cplx t{0.01, 0.0};
  cplx c0{0.0, 0.0};
  cplx c1{0.0, 0.0};
  std::optional<CMatrix> first_order;  // pi_{ij}, g x g; zero when absent

  int genus() const { return base.genus() + 1; }
  void validate() const;
};

/// Upper-left block Pi_base + t pi, last row/column a_j + t pi_{j,g},
/// corner -(i/2pi) log t + c0 + c1 t (principal branch). a_j = b - a on the
/// handle torus and 0 elsewhere.
SiegelPoint nonseparating_period_matrix(const NonSeparatingFamily& fam);

}  // namespace siegel
