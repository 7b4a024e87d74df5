#pragma once

// Executable versions of the constructive arguments on I_1-fixed vectors,
// run against a uniform interface to the concrete models.  A model exposes
// a finite coordinate frame (a truncation) with canonical coordinates, so
// that a vector is zero exactly when its coordinates are.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "borel/cind.hpp"
#include "borel/pseries.hpp"
#include "borel/weights.hpp"

namespace borel {

class RepHandle {
 public:
  virtual ~RepHandle() = default;

  virtual std::string name() const = 0;
  virtual const FieldPtr& field() const = 0;
  virtual int p() const = 0;
  virtual std::size_t dim() const = 0;
  /// Throws TruncationError or LevelOverflow when g v leaves the frame.
  virtual Vec act(const Mat2& g, const Vec& v) const = 0;
  /// Vectors spanning the part of the frame within a smaller truncation
  /// (radius or level); linearly independent.
  virtual std::vector<Vec> frame_basis_within(int truncation) const = 0;
  /// sum c_i g_i v, formed outside the frame and brought back at the end;
  /// individual translates may leave the frame.
  virtual Vec combine_translates(const std::vector<std::pair<Mat2, Elem>>& terms, const Vec& v) const;
  /// Human-readable description of a vector.
  virtual std::string describe(const Vec& v) const = 0;
  /// Truncation parameter (radius or level).
  virtual int truncation() const = 0;

  std::vector<Vec> frame_basis() const { return frame_basis_within(truncation()); }
  bool is_zero(const Vec& v) const { return is_zero_vec(v); }
  Vec add(const Vec& a, const Vec& b) const;
  Vec scale(Elem c, const Vec& v) const;
  Vec sub(const Vec& a, const Vec& b) const;
  bool is_i1_fixed(const Vec& v) const;
  /// Basis of the I_1-fixed vectors of the frame.
  std::vector<Vec> i1_fixed() const;
  /// sum_lambda lambda^j u(lambda) t v (with 0^0 = 1).
  Vec twisted_hecke_sum(const Vec& v, int j) const;
  Vec hecke_sum(const Vec& v) const { return twisted_hecke_sum(v, 0); }
};

/// c-Ind sigma or c-Ind sigma / ideal(T), truncated to the ball of radius R;
/// coordinates are reduced modulo the ideal.
class CindModel : public RepHandle {
 public:
  CindModel(const Weight& w, std::optional<HeckeIdeal> ideal, int radius, int r_max = kDefaultRadiusMax);

  std::string name() const override;
  const FieldPtr& field() const override { return space_->field(); }
  int p() const override { return space_->p(); }
  std::size_t dim() const override { return ball_.dim(); }
  Vec act(const Mat2& g, const Vec& v) const override;
  Vec combine_translates(const std::vector<std::pair<Mat2, Elem>>& terms, const Vec& v) const override;
  std::vector<Vec> frame_basis_within(int truncation) const override;
  std::string describe(const Vec& v) const override;
  int truncation() const override { return radius_; }

  const CindSpace& space() const { return *space_; }
  const CindQuotient& quotient() const { return *quotient_; }
  Vec coords(const CindElement& f) const;
  CindElement element(const Vec& v) const { return ball_.element(v); }
  Vec phi() const { return coords(space_->phi()); }

 private:
  std::shared_ptr<const CindSpace> space_;
  std::shared_ptr<CindQuotient> quotient_;
  int radius_;
  int r_max_;
  BallIndex ball_;
};

/// Ind_P^G chi truncated to functions of level N.
class PSModel : public RepHandle {
 public:
  PSModel(const TorusCharacter& chi, int level, int n_max = kDefaultLevelMax);

  std::string name() const override;
  const FieldPtr& field() const override { return ps_.field(); }
  int p() const override { return ps_.p(); }
  std::size_t dim() const override { return ps_.point_count(level_); }
  Vec act(const Mat2& g, const Vec& v) const override;
  Vec combine_translates(const std::vector<std::pair<Mat2, Elem>>& terms, const Vec& v) const override;
  std::vector<Vec> frame_basis_within(int truncation) const override;
  std::string describe(const Vec& v) const override;
  int truncation() const override { return level_; }

  const PrincipalSeries& series() const { return ps_; }
  Vec coords(const PSFunction& f) const;
  PSFunction function(const Vec& v) const { return ps_.from_values(level_, v); }

 private:
  PrincipalSeries ps_;
  int level_;
};

/// A linear combination of translates g v of one fixed vector.
struct TranslateCertificate {
  std::vector<std::pair<Mat2, Elem>> terms;

  Vec evaluate(const RepHandle& rep, const Vec& base) const;
  void add_scaled(Elem c, const TranslateCertificate& other, const Field& f);
  /// Left-multiplies every group element by g.
  TranslateCertificate translated(const Mat2& g) const;
};

/// The K-span of v as a representation of GL_2(F_p).  Throws
/// std::logic_error when K_1 does not act trivially on it.
FiniteKModule k_span_module(const RepHandle& rep, const Vec& v);

struct NextResult {
  int j = -1;
  Vec w;
  bool w0_zero = false;
  IrreducibilityResult irreducibility;
  std::size_t k_span_dim = 0;
};

/// First j with w_j nonzero, I_1-fixed and with irreducible
/// K-span.  Throws std::runtime_error("lemma-next failure") if none.
NextResult lemma_next(const RepHandle& rep, const Vec& v, std::uint64_t seed = 1);

struct GiveResult {
  Vec v;
  int k = 0;
  IwahoriCharacter averaging_character;
  NextResult next;
  TranslateCertificate certificate;  // v = sum c_i g_i w with g_i in P
  bool certificate_valid = false;
  bool i1_fixed = false;
  bool irreducible = false;
};

/// A nonzero I_1-fixed v in the P-span of w with
/// irreducible K-span.
GiveResult prop_give(const RepHandle& rep, const Vec& w, std::uint64_t seed = 1);

struct RecursionResult {
  std::vector<Vec> sequence;  // v_0, v_1, ...
  std::optional<int> n;       // least n with v_n = 0
  bool all_i1_fixed = true;
};

/// v_{i+1} = sum_lambda u(lambda) t v_i until zero or the bound.
RecursionResult recursion(const RepHandle& rep, const Vec& v0, int bound);

class HypothesisViolated : public std::runtime_error {
 public:
  HypothesisViolated() : std::runtime_error("hypothesis violated") {}
};

struct LemmaSResult {
  bool pass = false;
  Vec direct;          // s v
  Vec reconstruction;  // -sum_{lambda != 0} [[-p/l, 1], [0, l/p]] v
};

/// The elements [[-p/l, 1], [0, l/p]] for l = 1..p-1.
std::vector<Mat2> lemma_s_elements(int p);

LemmaSResult lemma_s_check(const RepHandle& rep, const Vec& v);

struct GenerationTrial {
  std::string start;
  std::size_t span_dim = 0;
  bool contains_target = false;
};

struct GenerationReport {
  std::size_t target_dim = 0;
  int target_radius = 0;
  int word_length = 0;
  std::vector<GenerationTrial> trials;
  bool pass = false;
  std::string note;
};

/// Generators u(1), u(1/p), t, t^{-1}, diag(g, 1), diag(1, g).
std::vector<Mat2> p_generation_set(int p);

/// Dimension of the image of the radius-R ball in c-Ind / ideal(T), by
/// ranks of the ball and of its image under the ideal.
std::size_t ball_image_dimension_oracle(const CindSpace& space, const HeckeIdeal& ideal, int R);

/// P-span evidence for the model's starting vectors: the span of all words
/// of length <= L applied to w, compared with the image of the radius
/// R_target ball.
GenerationReport p_generation_evidence(const CindModel& model, const std::vector<Vec>& starts, int target_radius,
                                       int word_length);

enum class HomCase { supersingular, sp_to_ind, char_rigidity, princ_endo };

const char* hom_case_name(HomCase c);
std::optional<HomCase> hom_case_from_name(std::string_view name);

struct HomCaseReport {
  HomCase which = HomCase::supersingular;
  bool pass = false;
  std::vector<std::pair<std::string, std::string>> details;
};

struct HomCaseParams {
  int p = 3;
  int r = 1;  // weight of the supersingular case
  int m = 0;
  int radius = 3;
  int level = 2;        // level of the unknown image in the relation solves
  int word_length = 4;  // Borel words used to collect relations
};

/// Images F of gen under P-maps Ind(chi) -> Ind(chi), truncated: F has the
/// given level and satisfies every linear relation among the translates
/// g gen for Borel words g of length <= word_length.
std::vector<PSFunction> truncated_p_maps(const PrincipalSeries& ps, const PSFunction& gen, int level,
                                         int word_length);

/// Uniformly random nonzero combination of frame_basis_within(truncation).
Vec random_frame_vector(const RepHandle& rep, std::mt19937_64& rng, int truncation);

HomCaseReport hom_transfer_case(HomCase which, const HomCaseParams& params);

}  // namespace borel
