#pragma once

// The smooth principal series Ind_P^G chi for a tame torus character chi,
// on functions with f(b g) = chi(b) f(g), acted on by right translation.
// A function of level N is right invariant under 1 + p^N M_2(Z_p) and is
// stored by its values on the points of P^1(Z/p^N): [x:1] for
// x = 0..p^N-1 (representative lower_u(x)), then [1:py] for
// y = 0..p^{N-1}-1 (representative [[0,1],[1,py]]).  The point [0:1] has
// representative 1, so values[0] is the value at the identity.

#include <optional>
#include <stdexcept>
#include <vector>

#include "borel/linalg.hpp"
#include "borel/padic.hpp"
#include "borel/weights.hpp"

namespace borel {

inline constexpr int kDefaultLevelMax = 4;

class LevelOverflow : public std::runtime_error {
 public:
  LevelOverflow() : std::runtime_error("level overflow") {}
};

struct PSFunction {
  int level = 1;
  Vec values;

  bool operator==(const PSFunction&) const = default;
};

class PrincipalSeries {
 public:
  explicit PrincipalSeries(TorusCharacter chi, int n_max = kDefaultLevelMax);

  const TorusCharacter& chi() const { return chi_; }
  const FieldPtr& field() const { return chi_.field; }
  int p() const { return chi_.p(); }
  int n_max() const { return n_max_; }

  std::size_t point_count(int level) const;
  Mat2 point_rep(int level, std::size_t index) const;
  /// Point of P^1(Z/p^N) through which k in K acts on the identity coset,
  /// i.e. the point of the bottom row of k.
  std::size_t point_index(int level, const Mat2& k) const;

  PSFunction zero(int level) const;
  PSFunction basis(int level, std::size_t index) const;
  PSFunction from_values(int level, Vec values) const;

  Elem eval(const PSFunction& f, const Mat2& g) const;
  Elem eval_at_identity(const PSFunction& f) const { return f.values.at(0); }

  /// Right translation; the output level is N + tree_distance(g).  Throws
  /// LevelOverflow beyond n_max.
  PSFunction act(const Mat2& g, const PSFunction& f) const;
  PSFunction refine(const PSFunction& f, int level) const;
  /// Lowest level at which f is defined.
  PSFunction minimize(const PSFunction& f) const;

  PSFunction add(const PSFunction& a, const PSFunction& b) const;
  PSFunction sub(const PSFunction& a, const PSFunction& b) const;
  PSFunction scale(Elem c, const PSFunction& a) const;
  bool equal(const PSFunction& a, const PSFunction& b) const;
  bool is_zero(const PSFunction& f) const { return is_zero_vec(f.values); }

  /// Supported on P I_1 with value 1 at the identity.
  PSFunction phi1() const;
  /// sum_lambda u(lambda) s phi1.
  PSFunction phi2() const;

  /// Basis of the I_1-fixed functions of the given level.
  std::vector<PSFunction> i1_invariants(int level) const;

  /// Functions f of the given level with b f = eig(b) f for the Borel
  /// generators (in Ind(chi)); restricted to ker(evaluation at 1) when
  /// kappa_only is set.
  std::vector<PSFunction> p_eigenvectors(const TorusCharacter& eig, int level, bool kappa_only) const;

 private:
  TorusCharacter chi_;
  int n_max_;
};

/// Topological generators of the Borel subgroup used for P-equivariance
/// checks: u(1), t, t^{-1}, unit diagonals.
std::vector<Mat2> borel_generators(int p);

/// Matrix of f -> g f on value tables, from the given level to out_level
/// (default and minimum: level + tree_distance(g)).
Matrix ps_action_matrix(const PrincipalSeries& ps, const Mat2& g, int level, int out_level = -1);

struct EigenRelation {
  Elem lambda = 0;
  PSFunction hecke_sum;          // sum_mu u(mu) t phi2, level 2
  bool residual_zero = false;
  /// sum_mu u(mu) t phi1 = a phi1 + b phi2 (diagnostic).
  Elem phi1_coeff = 0;
  Elem phi2_coeff = 0;
  bool phi1_proportional = false;
};

/// Solves sum_mu u(mu) t phi2 = lambda phi2.  Throws
/// std::logic_error("model inconsistency") when no such lambda exists.
EigenRelation eigen_relation(const PrincipalSeries& ps);

/// The P-splitting of 0 -> kappa -> Ind(psi o det) -> psi o det -> 0.
class DetSplitting {
 public:
  /// Throws std::invalid_argument unless chi = psi o det.
  explicit DetSplitting(const PrincipalSeries& ps);

  /// psi o det as an element of Ind(chi).
  const PSFunction& constant() const { return constant_; }
  Elem psi_det(const Mat2& g) const;
  /// Evaluation at the identity.
  Elem project(const PSFunction& f) const { return ps_.eval_at_identity(f); }
  PSFunction include(Elem c) const;
  PSFunction kappa_part(const PSFunction& f) const;
  /// kappa_chi -> Sp (kappa of the trivial character), f -> f / psi o det.
  PSFunction untwist(const PSFunction& f) const;
  PSFunction twist(const PSFunction& f) const;
  const PrincipalSeries& trivial_model() const { return trivial_; }

 private:
  PrincipalSeries ps_;
  PrincipalSeries trivial_;
  int j_;
  Elem psi_p_;
  PSFunction constant_;
};

}  // namespace borel
