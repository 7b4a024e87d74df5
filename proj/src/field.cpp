#include "borel/field.hpp"

#include <algorithm>
#include <sstream>

namespace borel {

namespace {

using Poly = std::vector<int>;  // low degree first

int mod(long long a, int p) {
  long long r = a % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a modulo monic b
Poly poly_rem(Poly a, const Poly& b, int p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db && !a.empty()) {
    const int lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = mod(a[shift + i] - static_cast<long long>(lead) * b[i], p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = mod(c[i + j] + static_cast<long long>(a[i]) * b[j], p);
  return poly_rem(std::move(c), m, p);
}

std::uint32_t encode(const Poly& a, int p) {
  std::uint32_t code = 0;
  std::uint32_t base = 1;
  for (int c : a) {
    code += static_cast<std::uint32_t>(c) * base;
    base *= static_cast<std::uint32_t>(p);
  }
  return code;
}

Poly decode(std::uint32_t code, int p, int k) {
  Poly a(k, 0);
  for (int i = 0; i < k; ++i) {
    a[i] = static_cast<int>(code % p);
    code /= p;
  }
  return a;
}

}  // namespace

bool Field::is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool Field::is_irreducible(int p, const std::vector<int>& modulus) {
  const int k = static_cast<int>(modulus.size()) - 1;
  if (k < 1 || modulus.back() != 1) return false;
  if (k == 1) return true;
  // Try every monic divisor of degree 1..k/2.
  for (int d = 1; d <= k / 2; ++d) {
    std::uint32_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint32_t code = 0; code < count; ++code) {
      Poly f = decode(code, p, d);
      f.push_back(1);
      if (poly_rem(modulus, f, p).empty()) return false;
    }
  }
  return true;
}

Field::Field(int p, std::vector<int> modulus)
    : p_(p), k_(static_cast<int>(modulus.size()) - 1), q_(1), modulus_(std::move(modulus)) {
  for (int i = 0; i < k_; ++i) q_ *= static_cast<std::uint32_t>(p_);
  // Find a primitive element by brute force; q <= 13^4.
  log_.assign(q_, 0);
  exp_.assign(2 * (q_ - 1), 0);
  for (std::uint32_t cand = 1; cand < q_; ++cand) {
    Poly g = decode(cand, p_, k_);
    trim(g);
    Poly acc{1};
    std::vector<bool> seen(q_, false);
    std::uint32_t order = 0;
    bool ok = true;
    for (std::uint32_t e = 0; e < q_ - 1; ++e) {
      std::uint32_t c = encode(acc, p_);
      if (seen[c]) {
        ok = false;
        break;
      }
      seen[c] = true;
      exp_[e] = c;
      log_[c] = e;
      acc = poly_mulmod(acc, g, modulus_, p_);
      ++order;
    }
    if (ok && order == q_ - 1) {
      for (std::uint32_t e = 0; e < q_ - 1; ++e) exp_[e + q_ - 1] = exp_[e];
      return;
    }
  }
  throw FieldError("no primitive element found");
}

std::shared_ptr<const Field> Field::prime(int p) {
  if (!is_prime(p) || p > 13) throw FieldError("unsupported characteristic " + std::to_string(p));
  return std::shared_ptr<const Field>(new Field(p, {0, 1}));
}

std::shared_ptr<const Field> Field::extension(int p, int k) {
  if (!is_prime(p) || p > 13) throw FieldError("unsupported characteristic " + std::to_string(p));
  if (k < 1 || k > 4) throw FieldError("unsupported extension degree " + std::to_string(k));
  if (k == 1) return prime(p);
  std::uint32_t count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (std::uint32_t code = 0; code < count; ++code) {
    Poly f = decode(code, p, k);
    f.push_back(1);
    if (is_irreducible(p, f)) return create(p, f);
  }
  throw FieldError("no irreducible modulus");
}

std::shared_ptr<const Field> Field::create(int p, std::vector<int> modulus) {
  if (!is_prime(p) || p > 13) throw FieldError("unsupported characteristic " + std::to_string(p));
  for (int& c : modulus) c = mod(c, p);
  if (modulus.size() < 2 || modulus.back() != 1) throw FieldError("modulus must be monic of degree >= 1");
  if (modulus.size() > 5) throw FieldError("extension degree above 4 is not supported");
  if (!is_irreducible(p, modulus)) throw FieldError("modulus is reducible");
  return std::shared_ptr<const Field>(new Field(p, std::move(modulus)));
}

Elem Field::add(Elem a, Elem b) const {
  if (k_ == 1) {
    Elem s = a + b;
    return s >= static_cast<Elem>(p_) ? s - p_ : s;
  }
  Elem out = 0, base = 1;
  for (int i = 0; i < k_; ++i) {
    Elem d = (a % p_ + b % p_) % p_;
    out += d * base;
    base *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

Elem Field::neg(Elem a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  Elem out = 0, base = 1;
  for (int i = 0; i < k_; ++i) {
    Elem d = a % p_;
    out += ((p_ - d) % p_) * base;
    base *= p_;
    a /= p_;
  }
  return out;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::inv(Elem a) const {
  if (a == 0) throw FieldError("division by zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::pow(Elem a, long long e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw FieldError("division by zero");
    return 0;
  }
  const long long n = q_ - 1;
  long long l = (static_cast<long long>(log_[a]) * (e % n)) % n;
  if (l < 0) l += n;
  return exp_[l];
}

Elem Field::from_int(long long n) const { return static_cast<Elem>(mod(n, p_)); }

Elem Field::from_coeffs(std::span<const int> coeffs) const {
  Poly a(coeffs.begin(), coeffs.end());
  for (int& c : a) c = mod(c, p_);
  return encode(poly_rem(std::move(a), modulus_, p_), p_);
}

std::vector<int> Field::coeffs(Elem a) const { return decode(a, p_, k_); }

std::uint32_t Field::log(Elem a) const {
  if (a == 0) throw FieldError("logarithm of zero");
  return log_[a];
}

std::string Field::to_string(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  auto c = coeffs(a);
  std::ostringstream os;
  bool first = true;
  for (int i = k_ - 1; i >= 0; --i) {
    if (c[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0 || c[i] != 1) os << c[i];
    if (i >= 1) os << 'x';
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

void FieldElem::check(const FieldElem& o) const {
  if (field_ != o.field_ && !(*field_ == *o.field_)) throw FieldError("field mismatch");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check(o);
  return {field_, field_->add(value_, o.value_)};
}
FieldElem FieldElem::operator-(const FieldElem& o) const {
  check(o);
  return {field_, field_->sub(value_, o.value_)};
}
FieldElem FieldElem::operator*(const FieldElem& o) const {
  check(o);
  return {field_, field_->mul(value_, o.value_)};
}
FieldElem FieldElem::operator/(const FieldElem& o) const {
  check(o);
  return {field_, field_->div(value_, o.value_)};
}
bool FieldElem::operator==(const FieldElem& o) const {
  check(o);
  return value_ == o.value_;
}

FieldElem field_arith(const FieldElem& a, const FieldElem& b, FieldOp op) {
  switch (op) {
    case FieldOp::add: return a + b;
    case FieldOp::mul: return a * b;
    case FieldOp::inv: return a.inv();
  }
  throw FieldError("unknown field operation");
}

}  // namespace borel
