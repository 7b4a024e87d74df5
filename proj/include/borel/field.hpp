#pragma once

// Finite coefficient fields F_p and F_{p^k} for small p and k.
//
// Elements are encoded as integers: the polynomial c_0 + c_1 x + ... +
// c_{k-1} x^{k-1} (reduced modulo the field's monic modulus) has code
// c_0 + c_1 p + ... + c_{k-1} p^{k-1}.  The prime subfield therefore sits
// at codes 0..p-1.  Multiplication goes through discrete-log tables built
// from a primitive element at construction time.

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace borel {

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Field {
 public:
  using Elem = std::uint32_t;

  /// F_p.  Supported primes: 2 <= p <= 13.
  static std::shared_ptr<const Field> prime(int p);
  /// F_{p^k} using the lexicographically first irreducible monic modulus.
  static std::shared_ptr<const Field> extension(int p, int k);
  /// F_{p^k} with an explicit monic modulus given low-degree-first
  /// (modulus.size() == k + 1, modulus.back() == 1).  Throws FieldError
  /// if the modulus is reducible.
  static std::shared_ptr<const Field> create(int p, std::vector<int> modulus);

  int p() const { return p_; }
  int degree() const { return k_; }
  std::uint32_t size() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  /// a^e for any integer e; 0^0 = 1, 0^e for e < 0 throws.
  Elem pow(Elem a, long long e) const;
  /// a*x + y, the elimination kernel.
  Elem axpy(Elem a, Elem x, Elem y) const { return add(mul(a, x), y); }

  /// Image of an integer in the prime subfield.
  Elem from_int(long long n) const;
  Elem from_coeffs(std::span<const int> coeffs) const;
  std::vector<int> coeffs(Elem a) const;

  /// A fixed generator of the multiplicative group.
  Elem generator() const { return exp_[1]; }
  /// Discrete log to base generator(); a must be nonzero.
  std::uint32_t log(Elem a) const;

  /// "3" in a prime field, "x+1" / "2x^2+x" in an extension.
  std::string to_string(Elem a) const;

  bool operator==(const Field& o) const {
    return p_ == o.p_ && modulus_ == o.modulus_;
  }

  /// Exhaustive irreducibility test for degree <= 4 (no monic factor of
  /// degree <= k/2).
  static bool is_irreducible(int p, const std::vector<int>& modulus);
  static bool is_prime(int n);

 private:
  Field(int p, std::vector<int> modulus);

  int p_;
  int k_;
  std::uint32_t q_;
  std::vector<int> modulus_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;  // length 2(q-1) so exp_[log a + log b] needs no reduction
};

using FieldPtr = std::shared_ptr<const Field>;
using Elem = Field::Elem;

/// A field element bundled with its field.  Arithmetic between elements of
/// different fields throws "field mismatch".
class FieldElem {
 public:
  FieldElem(FieldPtr f, Elem v) : field_(std::move(f)), value_(v) {}
  static FieldElem from_int(FieldPtr f, long long n) {
    auto v = f->from_int(n);
    return {std::move(f), v};
  }

  const FieldPtr& field() const { return field_; }
  Elem value() const { return value_; }
  std::vector<int> coeffs() const { return field_->coeffs(value_); }
  bool is_zero() const { return value_ == 0; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const { return {field_, field_->neg(value_)}; }
  FieldElem inv() const { return {field_, field_->inv(value_)}; }

  bool operator==(const FieldElem& o) const;
  std::string to_string() const { return field_->to_string(value_); }

 private:
  void check(const FieldElem& o) const;

  FieldPtr field_;
  Elem value_;
};

enum class FieldOp { add, mul, inv };

/// The single-dispatch arithmetic entry point; for inv the second operand
/// is ignored.
FieldElem field_arith(const FieldElem& a, const FieldElem& b, FieldOp op);

}  // namespace borel
