#pragma once

// Representations of K = GL_2(Z_p) that factor through GL_2(F_p): the
// weights Sym^r (x) det^m, tame characters of the torus and of the Iwahori
// subgroup, induced modules Ind_I^K chi, and an irreducibility test.
//
// Action convention: a matrix g = [[a, b], [c, d]] acts on a binary form
// f(x, y) by (g f)(x, y) = f((x, y) g) * det(g)^m, i.e. x -> a x + c y and
// y -> b x + d y.  The basis of Sym^r is x^r, x^{r-1} y, ..., y^r, and
// x^r spans the line fixed by the upper unipotent radical (so by I_1).

#include <optional>
#include <string>
#include <vector>

#include "borel/field.hpp"
#include "borel/linalg.hpp"
#include "borel/padic.hpp"

namespace borel {

/// Smallest positive integer generating (Z/p)^x.
int primitive_root(int p);

/// Lifts of a generating set of GL_2(F_p): u(1), s, diag(g, 1), diag(1, g)
/// with g = primitive_root(p).
std::vector<Mat2> gl2_generators(int p);
/// Topological generators of K_1 (plus diag(-1, 1), diag(1, -1) at p = 2).
std::vector<Mat2> k1_generators(int p);
/// Topological generators of I_1.
std::vector<Mat2> i1_generators(int p);

/// An element of GL_2(F_p) written as a word in gl2_generators():
/// pairs (generator index, exponent >= 1), applied left to right as a
/// product.
std::vector<std::pair<int, int>> gl2_word(const Residues& g, int p);

/// Exponent pair (e1, e2) of a tame character diag(x, y) -> xbar^e1 ybar^e2
/// of I (or of T(Z_p)), reduced modulo p - 1.
struct IwahoriCharacter {
  int e1 = 0;
  int e2 = 0;
  static IwahoriCharacter from_exponents(int p, long long e1, long long e2);
  bool operator==(const IwahoriCharacter&) const = default;
};

class Weight {
 public:
  Weight(FieldPtr field, int r, int m);

  const FieldPtr& field() const { return field_; }
  int p() const { return field_->p(); }
  int r() const { return r_; }
  int m() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(r_ + 1); }
  bool is_character() const { return r_ == 0; }
  /// "Sym^r det^m"
  std::string name() const;

  /// Matrix of an element of GL_2(F_p).
  Matrix matrix_of(const Residues& g) const;
  /// Matrix of k in K (central p-powers are stripped first).  Throws
  /// std::domain_error("not integral") outside KZ.
  Matrix matrix(const Mat2& k) const;
  Vec act(const Mat2& k, std::span<const Elem> v) const;

  bool operator==(const Weight& o) const { return r_ == o.r_ && m_ == o.m_ && *field_ == *o.field_; }

 private:
  FieldPtr field_;
  int r_;
  int m_;
};

Vec weight_action(const Weight& w, const Mat2& k, std::span<const Elem> v);

struct FixedLine {
  Vec vector;
  IwahoriCharacter character;
};
/// The I_1-fixed line of a weight and the character of I on it.
FixedLine i1_fixed_line(const Weight& w);

/// A smooth tame character of the diagonal torus:
/// diag(p^a u, p^b v) -> s1^a s2^b ubar^i1 vbar^i2.
struct TorusCharacter {
  FieldPtr field;
  int i1 = 0;
  int i2 = 0;
  Elem s1 = 1;
  Elem s2 = 1;

  static TorusCharacter make(FieldPtr field, long long i1, long long i2, Elem s1, Elem s2);
  static TorusCharacter trivial(FieldPtr field) { return make(std::move(field), 0, 0, 1, 1); }
  /// psi o det with psi(u) = ubar^j on units and psi(p) = psi_p.
  static TorusCharacter from_det(FieldPtr field, long long j, Elem psi_p) {
    return make(std::move(field), j, j, psi_p, psi_p);
  }

  int p() const { return field->p(); }
  /// Value on an upper-triangular matrix (through its diagonal).
  Elem value(const Mat2& b) const;
  Elem value_on_units(int u1, int u2) const;
  TorusCharacter conjugate() const { return make(field, i2, i1, s2, s1); }
  bool is_symmetric() const { return i1 == i2 && s1 == s2; }
  /// "(i1,i2;s1,s2)"
  std::string to_string() const;
  bool operator==(const TorusCharacter& o) const {
    return i1 == o.i1 && i2 == o.i2 && s1 == o.s1 && s2 == o.s2 && *field == *o.field;
  }
};

/// A finite-dimensional representation of GL_2(F_p), given by the matrices
/// of gl2_generators() in a fixed basis.
struct FiniteKModule {
  FieldPtr field;
  std::size_t dim = 0;
  std::vector<Matrix> generators;  // u, s, diag(g,1), diag(1,g)
  std::string provenance;

  /// Matrix of an arbitrary element via gl2_word().
  Matrix word_action(const Residues& g) const;
};

FiniteKModule weight_module(const Weight& w);

/// Ind_I^K chi on functions f(b k) = chi(b) f(k), a basis indexed by
/// P^1(F_p): points [j:1] (j = 0..p-1) then [1:0].
FiniteKModule induce_from_iwahori(const TorusCharacter& chi);
/// Matrix of an element of GL_2(F_p) on Ind_I^K chi, computed directly
/// from the coset action (no generator words).
Matrix induced_matrix(const TorusCharacter& chi, const Residues& g);

/// Closure of a set of vectors under the module's generators.
std::vector<Vec> generated_submodule(const FiniteKModule& mod, const std::vector<Vec>& seeds);

enum class Irreducibility { irreducible, reducible, inconclusive };

struct IrreducibilityResult {
  Irreducibility verdict = Irreducibility::inconclusive;
  std::vector<Vec> witness;  // basis of a proper nonzero submodule when reducible
};

/// Decides irreducibility through the U-fixed vectors: every nonzero
/// submodule contains a torus eigenvector fixed by U.  Eigenspaces are
/// searched exhaustively (projectively) when small; otherwise random probes
/// are used and the verdict may be inconclusive.
IrreducibilityResult is_irreducible(const FiniteKModule& mod, std::uint64_t seed = 1);

/// Space of intertwiners X with X A_g = B_g X for every generator.
std::vector<Matrix> intertwiners(const FiniteKModule& from, const FiniteKModule& to);

}  // namespace borel
