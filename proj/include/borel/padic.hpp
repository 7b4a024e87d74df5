#pragma once

// Exact arithmetic in GL_2(Q_p) on matrices with rational entries, and the
// coset decompositions used throughout: Iwasawa (G = PK), the cover
// G = P I_1 u P s I_1, subgroup membership, and normal forms for vertices
// of the Bruhat-Tits tree (cosets g KZ).
//
// Scalars are exact rationals.  Everything p-adic (valuations, residues,
// integrality) is evaluated against an explicit prime p.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace borel {

using Int = __int128;

std::string int_to_string(Int v);

class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Valuation of zero; ordered above every finite valuation.
inline constexpr int kInfiniteValuation = 1 << 30;

/// An exact rational number, viewed inside Q_p.  Always stored in lowest
/// terms with a positive denominator; zero is 0/1.
class PadicRational {
 public:
  PadicRational() = default;
  PadicRational(long long n) : num_(n), den_(1) {}  // NOLINT(implicit)
  PadicRational(Int num, Int den);

  static PadicRational from_parts(Int num, Int den) { return {num, den}; }
  /// p^e for any integer e.
  static PadicRational power(int p, int e);

  Int num() const { return num_; }
  Int den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  PadicRational operator+(const PadicRational& o) const;
  PadicRational operator-(const PadicRational& o) const;
  PadicRational operator*(const PadicRational& o) const;
  PadicRational operator/(const PadicRational& o) const;
  PadicRational operator-() const { return from_parts(-num_, den_); }
  PadicRational inverse() const;

  bool operator==(const PadicRational& o) const = default;
  std::strong_ordering operator<=>(const PadicRational& o) const;

  /// v_p; kInfiniteValuation for zero.
  int valuation(int p) const;
  /// Residue in {0,...,p-1}; requires valuation >= 0.
  int residue(int p) const;
  /// Residue modulo p^n as an integer in [0, p^n); requires valuation >= 0.
  Int residue_mod(int p, int n) const;

  std::string to_string() const;

 private:
  Int num_ = 0;
  Int den_ = 1;
};

/// Integer lift of a residue class mod p; stands in for the Teichmuller
/// lift [lambda].
PadicRational unit_lift(int residue, int p);

/// A 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  PadicRational a{1}, b{0}, c{0}, d{1};

  static Mat2 identity() { return {}; }
  static Mat2 of(PadicRational a, PadicRational b, PadicRational c, PadicRational d) {
    Mat2 m;
    m.a = a;
    m.b = b;
    m.c = c;
    m.d = d;
    return m;
  }

  PadicRational det() const { return a * d - b * c; }
  bool is_invertible() const { return !det().is_zero(); }
  Mat2 inverse() const;
  Mat2 operator*(const Mat2& o) const;
  Mat2 scaled(const PadicRational& s) const { return of(a * s, b * s, c * s, d * s); }
  bool operator==(const Mat2&) const = default;
  /// Smallest valuation among the four entries.
  int min_valuation(int p) const;
  std::string to_string() const;
};

// Named elements.
Mat2 upper_unipotent(const PadicRational& x);  // [[1, x], [0, 1]]
Mat2 lower_unipotent(const PadicRational& x);  // [[1, 0], [x, 1]]
Mat2 diagonal(const PadicRational& x, const PadicRational& y);
Mat2 weyl_s();                                 // [[0, 1], [1, 0]]
Mat2 weyl_t(int p);                            // [[p, 0], [0, 1]]
Mat2 weyl_pi(int p);                           // [[0, 1], [p, 0]]

class SingularMatrix : public std::invalid_argument {
 public:
  SingularMatrix() : std::invalid_argument("singular matrix") {}
};

enum class SubgroupTag { K, K1, I, I1, P, T_diag, U_upper, Center };

const char* subgroup_name(SubgroupTag tag);
bool is_member(const Mat2& g, SubgroupTag tag, int p);
/// g in KZ: p^{-m} g lies in K for some integer m.
bool in_kz(const Mat2& g, int p);
/// For g in KZ: the K-part p^{-m} g.  Throws std::domain_error otherwise.
Mat2 strip_center(const Mat2& g, int p);

struct Iwasawa {
  Mat2 borel;  // upper triangular
  Mat2 k;      // in K
};
/// g = borel * k.
Iwasawa iwasawa(const Mat2& g, int p);

enum class BruhatSide { PI1, PsI1 };
struct BruhatFactor {
  BruhatSide side;
  Mat2 borel;  // upper triangular
  Mat2 unip;   // in I_1
};
/// g = borel * unip (side PI1) or g = borel * s * unip (side PsI1).
BruhatFactor bruhat_side(const Mat2& g, int p);

/// A vertex of the tree: the coset [[p^d, a], [0, 1]] KZ.  The offset a has
/// p-power denominator and is reduced into [0, p^d), i.e. modulo p^d Z_p.
struct TreeVertex {
  int d = 0;
  PadicRational a{0};

  Mat2 representative(int p) const;
  auto operator<=>(const TreeVertex&) const = default;
  bool operator==(const TreeVertex&) const = default;
  std::string to_string() const;
};

struct VertexForm {
  TreeVertex vertex;
  Mat2 kz;  // g = vertex.representative(p) * kz, kz in KZ
};
VertexForm vertex_normalize(const Mat2& g, int p);

/// Distance from the base vertex to g * (base vertex).
int tree_distance(const Mat2& g, int p);
int vertex_distance(const TreeVertex& v, int p);

/// The mod-p reduction of an element of K, as residues (a, b, c, d).
struct Residues {
  int a, b, c, d;
  bool operator==(const Residues&) const = default;
};
Residues reduce_mod_p(const Mat2& k, int p);

}  // namespace borel
