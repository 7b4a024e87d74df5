#include "borel/padic.hpp"

#include <algorithm>

namespace borel {

namespace {

Int checked_mul(Int x, Int y) {
  Int r;
  if (__builtin_mul_overflow(x, y, &r)) throw ArithmeticOverflow("rational arithmetic overflow");
  return r;
}

Int checked_add(Int x, Int y) {
  Int r;
  if (__builtin_add_overflow(x, y, &r)) throw ArithmeticOverflow("rational arithmetic overflow");
  return r;
}

Int abs_int(Int x) { return x < 0 ? -x : x; }

Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int ipow(int p, int e) {
  Int r = 1;
  for (int i = 0; i < e; ++i) r = checked_mul(r, p);
  return r;
}

// Inverse of x modulo m, gcd(x, m) = 1.
Int inv_mod(Int x, Int m) {
  Int g = m, r = ((x % m) + m) % m;
  Int s0 = 0, s1 = 1;
  while (r != 0) {
    Int q = g / r;
    Int t = g - q * r;
    g = r;
    r = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (g != 1) throw std::domain_error("not invertible modulo p^n");
  return ((s0 % m) + m) % m;
}

int val_int(Int n, int p) {
  if (n == 0) return kInfiniteValuation;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace

std::string int_to_string(Int v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  // -2^127 cannot be negated; it never arises from checked arithmetic here.
  if (neg) v = -v;
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

PadicRational::PadicRational(Int num, Int den) {
  if (den == 0) throw std::domain_error("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Int g = gcd_int(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  num_ = num;
  den_ = den;
}

PadicRational PadicRational::power(int p, int e) {
  if (e >= 0) return from_parts(ipow(p, e), 1);
  return from_parts(1, ipow(p, -e));
}

PadicRational PadicRational::operator+(const PadicRational& o) const {
  if (den_ == o.den_) return from_parts(checked_add(num_, o.num_), den_);
  Int g = gcd_int(den_, o.den_);
  Int l = checked_mul(den_ / g, o.den_);
  return from_parts(checked_add(checked_mul(num_, l / den_), checked_mul(o.num_, l / o.den_)), l);
}

PadicRational PadicRational::operator-(const PadicRational& o) const { return *this + (-o); }

PadicRational PadicRational::operator*(const PadicRational& o) const {
  if (num_ == 0 || o.num_ == 0) return {};
  Int g1 = gcd_int(num_, o.den_);
  Int g2 = gcd_int(o.num_, den_);
  return from_parts(checked_mul(num_ / g1, o.num_ / g2), checked_mul(den_ / g2, o.den_ / g1));
}

PadicRational PadicRational::inverse() const {
  if (num_ == 0) throw std::domain_error("division by zero");
  return from_parts(den_, num_);
}

PadicRational PadicRational::operator/(const PadicRational& o) const { return *this * o.inverse(); }

std::strong_ordering PadicRational::operator<=>(const PadicRational& o) const {
  Int lhs = checked_mul(num_, o.den_);
  Int rhs = checked_mul(o.num_, den_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int PadicRational::valuation(int p) const {
  if (num_ == 0) return kInfiniteValuation;
  return val_int(num_, p) - val_int(den_, p);
}

int PadicRational::residue(int p) const { return static_cast<int>(residue_mod(p, 1)); }

Int PadicRational::residue_mod(int p, int n) const {
  if (valuation(p) < 0) throw std::domain_error("residue of a non-integral element");
  if (n <= 0) return 0;
  Int m = ipow(p, n);
  if (m > (Int{1} << 62)) throw ArithmeticOverflow("modulus too large");
  Int a = ((num_ % m) + m) % m;
  Int b = inv_mod(den_ % m, m);
  return (a * b) % m;
}

std::string PadicRational::to_string() const {
  if (den_ == 1) return int_to_string(num_);
  return int_to_string(num_) + "/" + int_to_string(den_);
}

PadicRational unit_lift(int residue, int p) {
  if (residue < 0 || residue >= p) throw std::invalid_argument("residue out of range");
  return PadicRational(residue);
}

Mat2 Mat2::inverse() const {
  PadicRational det_inv = det().inverse();
  return of(d * det_inv, -b * det_inv, -c * det_inv, a * det_inv);
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return of(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d);
}

int Mat2::min_valuation(int p) const {
  return std::min({a.valuation(p), b.valuation(p), c.valuation(p), d.valuation(p)});
}

std::string Mat2::to_string() const {
  return "[[" + a.to_string() + "," + b.to_string() + "],[" + c.to_string() + "," + d.to_string() + "]]";
}

Mat2 upper_unipotent(const PadicRational& x) { return Mat2::of(1, x, 0, 1); }
Mat2 lower_unipotent(const PadicRational& x) { return Mat2::of(1, 0, x, 1); }
Mat2 diagonal(const PadicRational& x, const PadicRational& y) { return Mat2::of(x, 0, 0, y); }
Mat2 weyl_s() { return Mat2::of(0, 1, 1, 0); }
Mat2 weyl_t(int p) { return Mat2::of(p, 0, 0, 1); }
Mat2 weyl_pi(int p) { return Mat2::of(0, 1, p, 0); }

const char* subgroup_name(SubgroupTag tag) {
  switch (tag) {
    case SubgroupTag::K: return "K";
    case SubgroupTag::K1: return "K1";
    case SubgroupTag::I: return "I";
    case SubgroupTag::I1: return "I1";
    case SubgroupTag::P: return "P";
    case SubgroupTag::T_diag: return "T";
    case SubgroupTag::U_upper: return "U";
    case SubgroupTag::Center: return "Z";
  }
  return "?";
}

bool is_member(const Mat2& g, SubgroupTag tag, int p) {
  if (!g.is_invertible()) return false;
  const PadicRational one(1);
  auto integral_unit_det = [&] { return g.min_valuation(p) >= 0 && g.det().valuation(p) == 0; };
  switch (tag) {
    case SubgroupTag::K: return integral_unit_det();
    case SubgroupTag::I: return integral_unit_det() && g.c.valuation(p) >= 1;
    case SubgroupTag::I1:
      return integral_unit_det() && g.c.valuation(p) >= 1 && (g.a - one).valuation(p) >= 1 &&
             (g.d - one).valuation(p) >= 1;
    case SubgroupTag::K1:
      return integral_unit_det() && g.b.valuation(p) >= 1 && g.c.valuation(p) >= 1 &&
             (g.a - one).valuation(p) >= 1 && (g.d - one).valuation(p) >= 1;
    case SubgroupTag::P: return g.c.is_zero();
    case SubgroupTag::T_diag: return g.b.is_zero() && g.c.is_zero();
    case SubgroupTag::U_upper: return g.c.is_zero() && g.a == one && g.d == one;
    case SubgroupTag::Center: return g.b.is_zero() && g.c.is_zero() && g.a == g.d;
  }
  return false;
}

bool in_kz(const Mat2& g, int p) {
  if (!g.is_invertible()) return false;
  int v = g.det().valuation(p);
  if (v % 2 != 0) return false;
  return is_member(g.scaled(PadicRational::power(p, -v / 2)), SubgroupTag::K, p);
}

Mat2 strip_center(const Mat2& g, int p) {
  if (!in_kz(g, p)) throw std::domain_error("not integral");
  int v = g.det().valuation(p);
  return g.scaled(PadicRational::power(p, -v / 2));
}

Iwasawa iwasawa(const Mat2& g, int p) {
  if (!g.is_invertible()) throw SingularMatrix();
  const int vc = g.c.valuation(p);
  const int vd = g.d.valuation(p);
  Mat2 k;
  if (vd <= vc) {
    k = lower_unipotent(g.c / g.d);
  } else {
    k = Mat2::of(0, 1, 1, g.d / g.c);
  }
  Mat2 b = g * k.inverse();
  b.c = PadicRational(0);  // exact already; keep the representation canonical
  return {b, k};
}

BruhatFactor bruhat_side(const Mat2& g, int p) {
  if (!g.is_invertible()) throw SingularMatrix();
  const int vc = g.c.valuation(p);
  const int vd = g.d.valuation(p);
  if (vc > vd) {
    Mat2 u = lower_unipotent(g.c / g.d);
    return {BruhatSide::PI1, g * u.inverse(), u};
  }
  Mat2 u = upper_unipotent(g.d / g.c);
  Mat2 b = g * (weyl_s() * u).inverse();
  return {BruhatSide::PsI1, b, u};
}

Mat2 TreeVertex::representative(int p) const { return Mat2::of(PadicRational::power(p, d), a, 0, 1); }

std::string TreeVertex::to_string() const { return "(" + std::to_string(d) + "," + a.to_string() + ")"; }

VertexForm vertex_normalize(const Mat2& g, int p) {
  Iwasawa iw = iwasawa(g, p);
  const Mat2& b = iw.borel;
  const PadicRational ratio = b.a / b.d;
  const int d = ratio.valuation(p);
  const PadicRational offset = b.b / b.d;
  PadicRational a(0);
  if (!offset.is_zero()) {
    const int e = std::max(0, -offset.valuation(p));
    const int n = d + e;
    if (n > 0) {
      const PadicRational scaled = offset * PadicRational::power(p, e);
      a = PadicRational(scaled.residue_mod(p, n), 1) * PadicRational::power(p, -e);
    }
  }
  TreeVertex v{d, a};
  Mat2 kz = v.representative(p).inverse() * g;
  return {v, kz};
}

int tree_distance(const Mat2& g, int p) {
  if (!g.is_invertible()) throw SingularMatrix();
  return g.det().valuation(p) - 2 * g.min_valuation(p);
}

int vertex_distance(const TreeVertex& v, int p) { return tree_distance(v.representative(p), p); }

Residues reduce_mod_p(const Mat2& k, int p) {
  if (!is_member(k, SubgroupTag::K, p)) throw std::domain_error("not integral");
  return {k.a.residue(p), k.b.residue(p), k.c.residue(p), k.d.residue(p)};
}

}  // namespace borel
