#include "borel/pseries.hpp"

#include <algorithm>

namespace borel {

namespace {

std::size_t ipow(int p, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(p);
  return r;
}

struct Transport {
  std::size_t source;
  Elem coeff;
};

}  // namespace

PrincipalSeries::PrincipalSeries(TorusCharacter chi, int n_max) : chi_(std::move(chi)), n_max_(n_max) {
  if (n_max_ < 1) throw std::invalid_argument("N_max must be >= 1");
}

std::size_t PrincipalSeries::point_count(int level) const {
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  return ipow(p(), level) + ipow(p(), level - 1);
}

Mat2 PrincipalSeries::point_rep(int level, std::size_t index) const {
  const std::size_t affine = ipow(p(), level);
  if (index < affine) return lower_unipotent(PadicRational(static_cast<Int>(index)));
  if (index >= point_count(level)) throw std::out_of_range("point index");
  const Int y = static_cast<Int>(index - affine);
  return Mat2::of(0, 1, 1, PadicRational(y * p()));
}

std::size_t PrincipalSeries::point_index(int level, const Mat2& k) const {
  const int p = this->p();
  if (k.d.valuation(p) == 0) return static_cast<std::size_t>((k.c / k.d).residue_mod(p, level));
  if (k.c.valuation(p) != 0) throw std::domain_error("not integral");
  const Int z = (k.d / k.c).residue_mod(p, level);
  return ipow(p, level) + static_cast<std::size_t>(z / p);
}

PSFunction PrincipalSeries::zero(int level) const { return PSFunction{level, Vec(point_count(level), 0)}; }

PSFunction PrincipalSeries::basis(int level, std::size_t index) const {
  PSFunction f = zero(level);
  f.values.at(index) = 1;
  return f;
}

PSFunction PrincipalSeries::from_values(int level, Vec values) const {
  if (values.size() != point_count(level)) throw std::invalid_argument("value table has the wrong size");
  return PSFunction{level, std::move(values)};
}

Elem PrincipalSeries::eval(const PSFunction& f, const Mat2& g) const {
  Iwasawa iw = iwasawa(g, p());
  const Elem v = f.values.at(point_index(f.level, iw.k));
  if (v == 0) return 0;
  return field()->mul(chi_.value(iw.borel), v);
}

namespace {

std::vector<Transport> transport(const PrincipalSeries& ps, const Mat2& g, int level, int out_level) {
  std::vector<Transport> out(ps.point_count(out_level));
  for (std::size_t i = 0; i < out.size(); ++i) {
    Iwasawa iw = iwasawa(ps.point_rep(out_level, i) * g, ps.p());
    out[i] = {ps.point_index(level, iw.k), ps.chi().value(iw.borel)};
  }
  return out;
}

int output_level(const PrincipalSeries& ps, const Mat2& g, int level) {
  const int n = level + tree_distance(g, ps.p());
  if (n > ps.n_max()) throw LevelOverflow();
  return n;
}

}  // namespace

PSFunction PrincipalSeries::act(const Mat2& g, const PSFunction& f) const {
  const int out_level = output_level(*this, g, f.level);
  const auto tr = transport(*this, g, f.level, out_level);
  PSFunction out = zero(out_level);
  for (std::size_t i = 0; i < tr.size(); ++i) out.values[i] = field()->mul(tr[i].coeff, f.values[tr[i].source]);
  return out;
}

Matrix ps_action_matrix(const PrincipalSeries& ps, const Mat2& g, int level, int out_level) {
  const int natural = output_level(ps, g, level);
  if (out_level < 0) out_level = natural;
  if (out_level < natural) throw std::invalid_argument("output level too low");
  if (out_level > ps.n_max()) throw LevelOverflow();
  const auto tr = transport(ps, g, level, out_level);
  Matrix m(tr.size(), ps.point_count(level));
  for (std::size_t i = 0; i < tr.size(); ++i) m(i, tr[i].source) = tr[i].coeff;
  return m;
}

PSFunction PrincipalSeries::refine(const PSFunction& f, int level) const {
  if (level < f.level) throw std::invalid_argument("refinement must not lower the level");
  if (level > n_max_) throw LevelOverflow();
  if (level == f.level) return f;
  const auto tr = transport(*this, Mat2::identity(), f.level, level);
  PSFunction out = zero(level);
  for (std::size_t i = 0; i < tr.size(); ++i) out.values[i] = field()->mul(tr[i].coeff, f.values[tr[i].source]);
  return out;
}

PSFunction PrincipalSeries::minimize(const PSFunction& f) const {
  PSFunction cur = f;
  while (cur.level > 1) {
    PSFunction coarse = zero(cur.level - 1);
    for (std::size_t i = 0; i < coarse.values.size(); ++i) coarse.values[i] = eval(cur, point_rep(coarse.level, i));
    if (refine(coarse, cur.level) != cur) break;
    cur = std::move(coarse);
  }
  return cur;
}

PSFunction PrincipalSeries::add(const PSFunction& a, const PSFunction& b) const {
  const int level = std::max(a.level, b.level);
  PSFunction out = refine(a, level);
  const PSFunction rb = refine(b, level);
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = field()->add(out.values[i], rb.values[i]);
  return out;
}

PSFunction PrincipalSeries::scale(Elem c, const PSFunction& a) const {
  PSFunction out = a;
  for (auto& x : out.values) x = field()->mul(c, x);
  return out;
}

PSFunction PrincipalSeries::sub(const PSFunction& a, const PSFunction& b) const {
  return add(a, scale(field()->neg(1), b));
}

bool PrincipalSeries::equal(const PSFunction& a, const PSFunction& b) const {
  const int level = std::max(a.level, b.level);
  return refine(a, level) == refine(b, level);
}

PSFunction PrincipalSeries::phi1() const { return basis(1, 0); }

PSFunction PrincipalSeries::phi2() const {
  const PSFunction f1 = phi1();
  PSFunction out = zero(1);
  for (int lam = 0; lam < p(); ++lam) out = add(out, act(upper_unipotent(lam) * weyl_s(), f1));
  return out;
}

std::vector<PSFunction> PrincipalSeries::i1_invariants(int level) const {
  if (level > n_max_) throw LevelOverflow();
  const Field& f = *field();
  const std::size_t n = point_count(level);
  const auto gens = i1_generators(p());
  Matrix sys(gens.size() * n, n);
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    Matrix a = mat_sub(f, ps_action_matrix(*this, gens[gi], level), Matrix::identity(n));
    std::copy(a.data.begin(), a.data.end(), sys.data.begin() + static_cast<std::ptrdiff_t>(gi * n * n));
  }
  std::vector<PSFunction> out;
  for (auto& v : kernel(f, sys)) out.push_back(PSFunction{level, std::move(v)});
  return out;
}

std::vector<Mat2> borel_generators(int p) {
  const int g = primitive_root(p);
  std::vector<Mat2> gens = {upper_unipotent(1), weyl_t(p), weyl_t(p).inverse(), diagonal(g, 1), diagonal(1, g),
                            diagonal(1 + p, 1), diagonal(1, 1 + p)};
  if (p == 2) {
    gens.push_back(diagonal(-1, 1));
    gens.push_back(diagonal(1, -1));
  }
  return gens;
}

std::vector<PSFunction> PrincipalSeries::p_eigenvectors(const TorusCharacter& eig, int level, bool kappa_only) const {
  const Field& f = *field();
  const std::size_t n = point_count(level);
  std::vector<Matrix> blocks;
  for (const auto& b : borel_generators(p())) {
    const int out_level = output_level(*this, b, level);
    Matrix a = ps_action_matrix(*this, b, level);
    const auto tr = transport(*this, Mat2::identity(), level, out_level);
    const Elem c = eig.value(b);
    for (std::size_t i = 0; i < tr.size(); ++i) a(i, tr[i].source) = f.sub(a(i, tr[i].source), f.mul(c, tr[i].coeff));
    blocks.push_back(std::move(a));
  }
  std::size_t rows = kappa_only ? 1 : 0;
  for (const auto& b : blocks) rows += b.rows;
  Matrix sys(rows, n);
  std::size_t r = 0;
  for (const auto& b : blocks) {
    std::copy(b.data.begin(), b.data.end(), sys.data.begin() + static_cast<std::ptrdiff_t>(r * n));
    r += b.rows;
  }
  if (kappa_only) sys(r, 0) = 1;
  std::vector<PSFunction> out;
  for (auto& v : kernel(f, sys)) out.push_back(PSFunction{level, std::move(v)});
  return out;
}

EigenRelation eigen_relation(const PrincipalSeries& ps) {
  const Field& f = *ps.field();
  const int p = ps.p();
  auto hecke_sum = [&](const PSFunction& v) {
    PSFunction out = ps.zero(v.level + 1);
    for (int mu = 0; mu < p; ++mu) out = ps.add(out, ps.act(upper_unipotent(mu) * weyl_t(p), v));
    return out;
  };
  EigenRelation rel;
  const PSFunction phi1 = ps.refine(ps.phi1(), 2);
  const PSFunction phi2 = ps.refine(ps.phi2(), 2);
  rel.hecke_sum = hecke_sum(ps.phi2());
  const auto nz = std::find_if(phi2.values.begin(), phi2.values.end(), [](Elem x) { return x != 0; });
  if (nz == phi2.values.end()) throw std::logic_error("model inconsistency");
  const std::size_t i = static_cast<std::size_t>(nz - phi2.values.begin());
  rel.lambda = f.div(rel.hecke_sum.values[i], phi2.values[i]);
  rel.residual_zero = ps.equal(rel.hecke_sum, ps.scale(rel.lambda, phi2));
  if (!rel.residual_zero) throw std::logic_error("model inconsistency");

  const PSFunction w1 = hecke_sum(ps.phi1());
  Matrix a(phi1.values.size(), 2);
  for (std::size_t r = 0; r < a.rows; ++r) {
    a(r, 0) = phi1.values[r];
    a(r, 1) = phi2.values[r];
  }
  auto sol = solve_linear(f, a, w1.values);
  if (!sol.consistent) throw std::logic_error("model inconsistency");
  rel.phi1_coeff = sol.particular[0];
  rel.phi2_coeff = sol.particular[1];
  rel.phi1_proportional = rel.phi2_coeff == 0;
  return rel;
}

DetSplitting::DetSplitting(const PrincipalSeries& ps)
    : ps_(ps), trivial_(TorusCharacter::trivial(ps.field()), ps.n_max()) {
  const TorusCharacter& chi = ps.chi();
  if (chi.i1 != chi.i2 || chi.s1 != chi.s2) throw std::invalid_argument("character does not factor through det");
  j_ = chi.i1;
  psi_p_ = chi.s1;
  constant_ = ps.zero(1);
  for (std::size_t i = 0; i < constant_.values.size(); ++i) constant_.values[i] = psi_det(ps.point_rep(1, i));
}

Elem DetSplitting::psi_det(const Mat2& g) const {
  const int p = ps_.p();
  const Field& f = *ps_.field();
  const PadicRational det = g.det();
  const int v = det.valuation(p);
  const PadicRational unit = det * PadicRational::power(p, -v);
  Elem out = v >= 0 ? f.pow(psi_p_, v) : f.inv(f.pow(psi_p_, -v));
  return f.mul(out, f.pow(f.from_int(unit.residue(p)), j_));
}

PSFunction DetSplitting::include(Elem c) const { return ps_.scale(c, constant_); }

PSFunction DetSplitting::kappa_part(const PSFunction& f) const { return ps_.sub(f, include(project(f))); }

PSFunction DetSplitting::untwist(const PSFunction& f) const {
  const Field& fld = *ps_.field();
  PSFunction out = f;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = fld.div(out.values[i], psi_det(ps_.point_rep(f.level, i)));
  return out;
}

PSFunction DetSplitting::twist(const PSFunction& f) const {
  const Field& fld = *ps_.field();
  PSFunction out = f;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = fld.mul(out.values[i], psi_det(ps_.point_rep(f.level, i)));
  return out;
}

}  // namespace borel
