#include "borel/weights.hpp"

#include <random>
#include <sstream>

namespace borel {

namespace {

int modp(long long a, int p) {
  long long r = a % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

int inv_modp(int a, int p) {
  for (int x = 1; x < p; ++x)
    if ((a * x) % p == 1) return x;
  throw std::domain_error("division by zero");
}

// Discrete log of a nonzero residue to base primitive_root(p).
int dlog(int a, int p) {
  const int g = primitive_root(p);
  int acc = 1;
  for (int e = 0; e < p - 1; ++e) {
    if (acc == a) return e;
    acc = (acc * g) % p;
  }
  throw std::domain_error("logarithm of zero");
}

Matrix mat_pow(const Field& f, const Matrix& m, int e) {
  Matrix r = Matrix::identity(m.rows);
  for (int i = 0; i < e; ++i) r = mat_mul(f, r, m);
  return r;
}

// Binary form arithmetic: coefficient vectors over x^{n-i} y^i.
using Form = std::vector<long long>;

Form form_mul(const Form& a, const Form& b, int p) {
  Form c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return c;
}

Form form_pow(const Form& a, int e, int p) {
  Form r{1};
  for (int i = 0; i < e; ++i) r = form_mul(r, a, p);
  return r;
}

}  // namespace

int primitive_root(int p) {
  for (int g = 1; g < p; ++g) {
    int acc = 1, order = 0;
    do {
      acc = (acc * g) % p;
      ++order;
    } while (acc != 1);
    if (order == p - 1) return g;
  }
  throw std::invalid_argument("not a prime");
}

std::vector<Mat2> gl2_generators(int p) {
  const int g = primitive_root(p);
  return {upper_unipotent(1), weyl_s(), diagonal(g, 1), diagonal(1, g)};
}

std::vector<Mat2> k1_generators(int p) {
  std::vector<Mat2> gens = {lower_unipotent(p), upper_unipotent(p), diagonal(1 + p, 1), diagonal(1, 1 + p)};
  if (p == 2) {
    gens.push_back(diagonal(-1, 1));
    gens.push_back(diagonal(1, -1));
  }
  return gens;
}

std::vector<Mat2> i1_generators(int p) {
  std::vector<Mat2> gens = {upper_unipotent(1), lower_unipotent(p), diagonal(1 + p, 1), diagonal(1, 1 + p)};
  if (p == 2) {
    gens.push_back(diagonal(-1, 1));
    gens.push_back(diagonal(1, -1));
  }
  return gens;
}

std::vector<std::pair<int, int>> gl2_word(const Residues& g, int p) {
  std::vector<std::pair<int, int>> w;
  auto push = [&](int gen, int e) {
    e = modp(e, gen == 0 ? p : (gen == 1 ? 2 : p - 1));
    if (e != 0) w.emplace_back(gen, e);
  };
  const int det = modp(static_cast<long long>(g.a) * g.d - static_cast<long long>(g.b) * g.c, p);
  if (det == 0) throw SingularMatrix();
  if (g.c != 0) {
    // g = u(a/c) s diag(c, -det/c) u(d/c)
    const int ic = inv_modp(g.c, p);
    push(0, g.a * ic);
    push(1, 1);
    push(2, dlog(g.c, p));
    push(3, dlog(modp(-static_cast<long long>(det) * ic, p), p));
    push(0, g.d * ic);
  } else {
    // g = diag(a, d) u(b/a)
    push(2, dlog(g.a, p));
    push(3, dlog(g.d, p));
    push(0, g.b * inv_modp(g.a, p));
  }
  return w;
}

IwahoriCharacter IwahoriCharacter::from_exponents(int p, long long e1, long long e2) {
  const int n = p - 1;
  return {modp(e1, n), modp(e2, n)};
}

Weight::Weight(FieldPtr field, int r, int m) : field_(std::move(field)), r_(r), m_(m) {
  const int p = field_->p();
  if (r < 0 || r > p - 1) throw std::invalid_argument("weight r out of range");
  if (m < 0 || m >= std::max(1, p - 1)) throw std::invalid_argument("weight m out of range");
}

std::string Weight::name() const { return "Sym^" + std::to_string(r_) + " det^" + std::to_string(m_); }

Matrix Weight::matrix_of(const Residues& g) const {
  const int p = this->p();
  const Field& f = *field_;
  const std::size_t n = dim();
  Matrix out(n, n);
  const Form xs{g.a, g.c};  // image of x
  const Form ys{g.b, g.d};  // image of y
  const long long det = modp(static_cast<long long>(g.a) * g.d - static_cast<long long>(g.b) * g.c, p);
  long long detm = 1;
  for (int i = 0; i < m_; ++i) detm = detm * det % p;
  for (int i = 0; i <= r_; ++i) {
    Form img = form_mul(form_pow(xs, r_ - i, p), form_pow(ys, i, p), p);
    for (int j = 0; j <= r_; ++j) out(j, i) = f.from_int(img[j] * detm);
  }
  return out;
}

Matrix Weight::matrix(const Mat2& k) const { return matrix_of(reduce_mod_p(strip_center(k, p()), p())); }

Vec Weight::act(const Mat2& k, std::span<const Elem> v) const {
  if (v.size() != dim()) throw std::invalid_argument("dimension mismatch");
  return mat_vec(*field_, matrix(k), v);
}

Vec weight_action(const Weight& w, const Mat2& k, std::span<const Elem> v) { return w.act(k, v); }

FixedLine i1_fixed_line(const Weight& w) {
  const Field& f = *w.field();
  const std::size_t n = w.dim();
  const auto gens = i1_generators(w.p());
  Matrix sys(n * gens.size(), n);
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    Matrix a = mat_sub(f, w.matrix(gens[gi]), Matrix::identity(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) sys(gi * n + i, j) = a(i, j);
  }
  auto ker = kernel(f, sys);
  if (ker.size() != 1) throw std::logic_error("weight model broken");
  Vec v = ker.front();
  const int p = w.p();
  const int g = primitive_root(p);
  auto eigen_exponent = [&](const Mat2& t) {
    Vec tv = w.act(t, v);
    std::size_t i = 0;
    while (v[i] == 0) ++i;
    const Elem ev = f.div(tv[i], v[i]);
    long long acc = 1;
    for (int e = 0; e < std::max(1, p - 1); ++e) {
      if (f.from_int(acc) == ev) return e;
      acc = acc * g % p;
    }
    throw std::logic_error("weight model broken");
  };
  return {v, IwahoriCharacter::from_exponents(p, eigen_exponent(diagonal(g, 1)), eigen_exponent(diagonal(1, g)))};
}

TorusCharacter TorusCharacter::make(FieldPtr field, long long i1, long long i2, Elem s1, Elem s2) {
  if (s1 == 0 || s2 == 0) throw std::invalid_argument("character values must be nonzero");
  const int n = std::max(1, field->p() - 1);
  TorusCharacter chi;
  chi.field = std::move(field);
  chi.i1 = modp(i1, n);
  chi.i2 = modp(i2, n);
  chi.s1 = s1;
  chi.s2 = s2;
  return chi;
}

Elem TorusCharacter::value_on_units(int u1, int u2) const {
  const Field& f = *field;
  return f.mul(f.pow(f.from_int(u1), i1), f.pow(f.from_int(u2), i2));
}

Elem TorusCharacter::value(const Mat2& b) const {
  if (!b.c.is_zero()) throw std::invalid_argument("character evaluated off the Borel subgroup");
  const int p = this->p();
  const Field& f = *field;
  const int va = b.a.valuation(p);
  const int vd = b.d.valuation(p);
  const PadicRational ua = b.a * PadicRational::power(p, -va);
  const PadicRational ud = b.d * PadicRational::power(p, -vd);
  Elem out = f.mul(f.pow(s1, va), f.pow(s2, vd));
  return f.mul(out, value_on_units(ua.residue(p), ud.residue(p)));
}

std::string TorusCharacter::to_string() const {
  std::ostringstream os;
  os << "(" << i1 << "," << i2 << ";" << field->to_string(s1) << "," << field->to_string(s2) << ")";
  return os.str();
}

Matrix FiniteKModule::word_action(const Residues& g) const {
  const int p = field->p();
  Matrix out = Matrix::identity(dim);
  for (auto [gen, e] : gl2_word(g, p)) out = mat_mul(*field, out, mat_pow(*field, generators[gen], e));
  return out;
}

FiniteKModule weight_module(const Weight& w) {
  FiniteKModule mod{w.field(), w.dim(), {}, w.name()};
  for (const auto& g : gl2_generators(w.p())) mod.generators.push_back(w.matrix(g));
  return mod;
}

Matrix induced_matrix(const TorusCharacter& chi, const Residues& g) {
  const int p = chi.p();
  const Field& f = *chi.field;
  const std::size_t n = static_cast<std::size_t>(p + 1);
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    // rep_i * g, with rep_i = [[1,0],[i,1]] or s
    long long a, b, c, d;
    if (static_cast<int>(i) < p) {
      a = g.a;
      b = g.b;
      c = (static_cast<long long>(i) * g.a + g.c) % p;
      d = (static_cast<long long>(i) * g.b + g.d) % p;
    } else {
      a = g.c;
      b = g.d;
      c = g.a;
      d = g.b;
    }
    // rep_i g = beta rep_j with beta upper triangular; chi(beta) from its diagonal.
    std::size_t j;
    long long b11, b22;
    if (d % p != 0) {
      const int id = inv_modp(static_cast<int>(modp(d, p)), p);
      j = static_cast<std::size_t>(modp(c * id, p));
      // beta = (rep_i g) [[1,0],[-j,1]]: diagonal (a - b j, d)
      b11 = modp(a - b * static_cast<long long>(j), p);
      b22 = modp(d, p);
    } else {
      j = static_cast<std::size_t>(p);
      // beta = (rep_i g) s: diagonal (b, c)
      b11 = modp(b, p);
      b22 = modp(c, p);
    }
    out(i, j) = chi.value_on_units(static_cast<int>(b11), static_cast<int>(b22));
    (void)f;
  }
  return out;
}

FiniteKModule induce_from_iwahori(const TorusCharacter& chi) {
  const int p = chi.p();
  FiniteKModule mod{chi.field, static_cast<std::size_t>(p + 1), {}, "Ind_I^K " + chi.to_string()};
  for (const auto& g : gl2_generators(p)) mod.generators.push_back(induced_matrix(chi, reduce_mod_p(g, p)));
  return mod;
}

std::vector<Vec> generated_submodule(const FiniteKModule& mod, const std::vector<Vec>& seeds) {
  SpanBuilder span(mod.field, mod.dim);
  std::vector<Vec> frontier;
  for (const auto& s : seeds)
    if (span.insert(s)) frontier.push_back(s);
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& v : frontier)
      for (const auto& g : mod.generators) {
        Vec gv = mat_vec(*mod.field, g, v);
        if (span.insert(gv)) next.push_back(std::move(gv));
      }
    frontier = std::move(next);
  }
  return span.basis();
}

IrreducibilityResult is_irreducible(const FiniteKModule& mod, std::uint64_t seed) {
  const Field& f = *mod.field;
  const std::size_t n = mod.dim;
  IrreducibilityResult res;
  if (n == 0) {
    res.verdict = Irreducibility::reducible;
    return res;
  }
  const int p = f.p();
  const Elem g = f.from_int(primitive_root(p));
  const int exps = std::max(1, p - 1);
  std::vector<std::vector<Vec>> eigenspaces;
  for (int a = 0; a < exps; ++a)
    for (int b = 0; b < exps; ++b) {
      Matrix sys(3 * n, n);
      const Matrix* mats[3] = {&mod.generators[0], &mod.generators[2], &mod.generators[3]};
      const Elem evs[3] = {1, f.pow(g, a), f.pow(g, b)};
      for (int k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            Elem x = (*mats[k])(i, j);
            if (i == j) x = f.sub(x, evs[k]);
            sys(k * n + i, j) = x;
          }
      auto ker = kernel(f, sys);
      if (!ker.empty()) eigenspaces.push_back(std::move(ker));
    }

  // Returns true if v generates a proper submodule (recorded as witness).
  auto proper = [&](const Vec& v) {
    auto sub = generated_submodule(mod, {v});
    if (sub.size() < n) {
      res.witness = std::move(sub);
      return true;
    }
    return false;
  };

  bool exhaustive = true;
  for (const auto& space : eigenspaces) {
    const std::size_t d = space.size();
    if (d == 1) {
      if (proper(space.front())) {
        res.verdict = Irreducibility::reducible;
        return res;
      }
      continue;
    }
    // Projective enumeration of the eigenspace when it is small.
    double count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= f.size();
    if (count <= 4096) {
      const std::uint32_t total = static_cast<std::uint32_t>(count);
      for (std::uint32_t code = 1; code < total; ++code) {
        std::vector<Elem> coeffs(d);
        std::uint32_t c = code;
        for (std::size_t i = 0; i < d; ++i) {
          coeffs[i] = c % f.size();
          c /= f.size();
        }
        std::size_t lead = 0;
        while (coeffs[lead] == 0) ++lead;
        if (coeffs[lead] != 1) continue;
        Vec v(n, 0);
        for (std::size_t i = 0; i < d; ++i) axpy(f, coeffs[i], space[i], v);
        if (proper(v)) {
          res.verdict = Irreducibility::reducible;
          return res;
        }
      }
    } else {
      exhaustive = false;
      std::mt19937_64 rng(seed);
      for (int probe = 0; probe < 64; ++probe) {
        Vec v(n, 0);
        for (std::size_t i = 0; i < d; ++i) axpy(f, static_cast<Elem>(rng() % f.size()), space[i], v);
        if (!is_zero_vec(v) && proper(v)) {
          res.verdict = Irreducibility::reducible;
          return res;
        }
      }
    }
  }
  res.verdict = exhaustive ? Irreducibility::irreducible : Irreducibility::inconclusive;
  return res;
}

std::vector<Matrix> intertwiners(const FiniteKModule& from, const FiniteKModule& to) {
  const Field& f = *from.field;
  const std::size_t n = from.dim, m = to.dim;
  const std::size_t gens = from.generators.size();
  Matrix sys(gens * m * n, m * n);
  for (std::size_t g = 0; g < gens; ++g) {
    const Matrix& a = from.generators[g];
    const Matrix& b = to.generators[g];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        const std::size_t row = (g * m + i) * n + l;
        for (std::size_t j = 0; j < n; ++j) sys(row, i * n + j) = f.add(sys(row, i * n + j), a(j, l));
        for (std::size_t k = 0; k < m; ++k) sys(row, k * n + l) = f.sub(sys(row, k * n + l), b(i, k));
      }
  }
  std::vector<Matrix> out;
  for (const auto& v : kernel(f, sys)) {
    Matrix x(m, n);
    x.data = v;
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace borel
