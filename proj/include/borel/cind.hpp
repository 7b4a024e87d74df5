#pragma once

// Compact induction c-Ind_{ZK}^G sigma for a weight sigma on which p acts
// trivially.  An element is a finite formal sum of terms [g, v], the
// function supported on ZK g^{-1} with value v at g^{-1}; terms are keyed by
// the tree vertex g KZ, using the normal-form representative, so
// [rep * kz, v] = [rep, sigma(kz) v] and h [g, v] = [h g, v].
//
// The Hecke operator T is fixed by its value on phi = [1, v0], where v0
// spans sigma^{I_1}:
//   non-character sigma:  T phi = sum_lambda u(lambda) t phi
//   sigma = det^m:        T phi = sum_lambda u(lambda) t phi + (-1)^m Pi phi
// and extended to all of c-Ind linearly and G-equivariantly.  Integer lifts
// 0..p-1 stand in for Teichmuller lifts.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "borel/linalg.hpp"
#include "borel/padic.hpp"
#include "borel/weights.hpp"

namespace borel {

struct CindElement {
  std::map<TreeVertex, Vec> terms;  // no zero vectors

  bool is_zero() const { return terms.empty(); }
  bool operator==(const CindElement&) const = default;
};

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Monic polynomial in T, coefficients low degree first.
struct HeckeIdeal {
  FieldPtr field;
  std::vector<Elem> coeffs;

  /// Accepts "T", "T^n", "T-c", "T+c" (c an integer).
  static HeckeIdeal parse(FieldPtr field, std::string_view spec);
  static HeckeIdeal power(FieldPtr field, int n);
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  std::string to_string() const;
};

/// Vertices of a ball, outermost sphere first, with a coordinate system
/// for elements supported in the ball.
class BallIndex {
 public:
  BallIndex(std::vector<TreeVertex> vertices, std::size_t fiber);

  const std::vector<TreeVertex>& vertices() const { return vertices_; }
  std::size_t dim() const { return vertices_.size() * fiber_; }
  std::size_t fiber() const { return fiber_; }
  std::optional<std::size_t> index(const TreeVertex& v) const;
  /// Throws TruncationError if f is not supported in the ball.
  Vec coords(const CindElement& f) const;
  CindElement element(std::span<const Elem> coords) const;
  CindElement basis_element(std::size_t coord) const;

 private:
  std::vector<TreeVertex> vertices_;
  std::map<TreeVertex, std::size_t> index_;
  std::size_t fiber_;
};

class CindSpace {
 public:
  explicit CindSpace(Weight w);

  const Weight& weight() const { return weight_; }
  const FieldPtr& field() const { return weight_.field(); }
  int p() const { return weight_.p(); }
  std::size_t fiber() const { return weight_.dim(); }
  const Vec& fixed_vector() const { return v0_; }

  CindElement phi() const;
  CindElement term(const TreeVertex& v, Vec coeffs) const;

  CindElement add(const CindElement& a, const CindElement& b) const;
  CindElement sub(const CindElement& a, const CindElement& b) const;
  CindElement scale(Elem c, const CindElement& a) const;
  CindElement act(const Mat2& g, const CindElement& f) const;

  /// T phi from the closed formula.
  CindElement hecke_on_phi() const;
  CindElement hecke(const CindElement& f) const;
  /// T applied through the expansion of [1, e_i] over a given K-spanning
  /// set (elements k_j with sigma(k_j) v0 spanning sigma).  Used to check
  /// that T does not depend on the expansion.
  std::vector<CindElement> hecke_on_basis_via(const std::vector<Mat2>& spanning) const;
  const std::vector<Mat2>& spanning_set() const { return spanning_; }
  /// A second spanning set found by a different search order.
  std::vector<Mat2> alternate_spanning_set() const;

  CindElement apply(const HeckeIdeal& ideal, const CindElement& f) const;

  int radius(const CindElement& f) const;  // -1 for zero
  std::vector<TreeVertex> ball(int radius) const;
  BallIndex ball_index(int radius) const { return BallIndex(ball(radius), fiber()); }

 private:
  std::vector<Mat2> find_spanning(bool reversed) const;

  Weight weight_;
  Vec v0_;
  std::vector<Mat2> spanning_;
  std::vector<CindElement> hecke_basis_;  // T [1, e_i]
};

/// act(g, f) as a free function over an explicit space.
CindElement act(const CindSpace& space, const Mat2& g, const CindElement& f);
CindElement hecke_T(const CindSpace& space, const CindElement& f);

struct MembershipResult {
  bool zero = false;
  CindElement preimage;        // ideal(T) preimage = f, when zero
  Vec certificate;             // inconsistency certificate, when nonzero
  int radius = 0;              // radius bound used for the preimage search
  int certified_radius = 0;    // largest radius at which the verdict was confirmed
};

inline constexpr int kDefaultRadiusMax = 4;

/// Decides whether f lies in ideal(T) c-Ind by solving for a preimage
/// supported in the ball of radius R.  A nonzero verdict is re-checked at
/// R + 1 when R + 1 <= r_max.
MembershipResult quotient_membership(const CindSpace& space, const CindElement& f, const HeckeIdeal& ideal, int R,
                                     int r_max = kDefaultRadiusMax);

/// Quotient c-Ind / ideal(T) (or c-Ind itself) with cached image spaces.
/// Since T raises the radius of its argument by exactly one, the
/// intersection of ideal(T) c-Ind with the ball of radius R is the image of
/// the ball of radius R - deg, which makes the zero test exact.
class CindQuotient {
 public:
  CindQuotient(std::shared_ptr<const CindSpace> space, std::optional<HeckeIdeal> ideal);

  const CindSpace& space() const { return *space_; }
  std::shared_ptr<const CindSpace> space_ptr() const { return space_; }
  const std::optional<HeckeIdeal>& ideal() const { return ideal_; }

  bool is_zero(const CindElement& f) const;
  /// Coordinates in the ball of radius R reduced modulo the ideal; f must be
  /// supported in that ball.
  Vec reduce(const CindElement& f, int R) const;
  /// Representative with reduced coordinates at radius(f).
  CindElement canonical(const CindElement& f) const;
  /// Dimension of the image of the radius-R ball in the quotient.
  std::size_t ball_image_dim(int R) const;
  const BallIndex& ball(int R) const;

 private:
  struct Level {
    BallIndex ball;
    SpanBuilder image;
  };
  const Level& level(int R) const;

  std::shared_ptr<const CindSpace> space_;
  std::optional<HeckeIdeal> ideal_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<Level>> levels_;
};

/// Basis of the I_1-fixed elements supported in the radius-R ball, taken in
/// the quotient when an ideal is given (representatives are canonical).
std::vector<CindElement> i1_fixed_ball(const CindSpace& space, int R, const std::optional<HeckeIdeal>& ideal,
                                       int r_max = kDefaultRadiusMax);

}  // namespace borel
