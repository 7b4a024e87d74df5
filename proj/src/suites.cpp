#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "borel/cind.hpp"
#include "borel/lab.hpp"
#include "borel/pseries.hpp"
#include "borel/report.hpp"
#include "borel/weights.hpp"

namespace borel {

namespace {

using json = nlohmann::json;

FieldPtr field_for(const RunConfig& c) { return c.k == 1 ? Field::prime(c.p) : Field::extension(c.p, c.k); }

TorusCharacter chi_for(const RunConfig& c) {
  return TorusCharacter::make(field_for(c), c.i1, c.i2, static_cast<Elem>(c.s1), static_cast<Elem>(c.s2));
}

// Each check draws from its own stream so adding a check never shifts another.
std::mt19937_64 rng_for(const RunConfig& c, std::string_view check) {
  std::uint64_t h = 1469598103934665603ull;
  for (char ch : check) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ull;
  return std::mt19937_64(c.seed ^ h);
}

long long uniform(std::mt19937_64& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

long long unit_int(std::mt19937_64& rng, int p) {
  for (;;) {
    const long long u = uniform(rng, 1, static_cast<long long>(p) * p * p);
    if (u % p != 0) return u;
  }
}

// a / b with b prime to p, so the valuation of the result is that of a.
PadicRational p_integral(std::mt19937_64& rng, int p) {
  const long long a = uniform(rng, -static_cast<long long>(p) * p * p, static_cast<long long>(p) * p * p);
  return PadicRational(a, unit_int(rng, p));
}

PadicRational nonzero_rational(std::mt19937_64& rng, int p, int vmin, int vmax) {
  const long long sign = rng() % 2 ? 1 : -1;
  return PadicRational(sign * unit_int(rng, p), unit_int(rng, p)) *
         PadicRational::power(p, static_cast<int>(uniform(rng, vmin, vmax)));
}

std::vector<Mat2> g_letters(int p) {
  const int g = primitive_root(p);
  return {upper_unipotent(1),    upper_unipotent(PadicRational(1, p)),
          lower_unipotent(1),    lower_unipotent(p),
          weyl_s(),              weyl_t(p),
          weyl_t(p).inverse(),   weyl_pi(p),
          diagonal(g, 1),        diagonal(1, g),
          diagonal(1 + p, 1),    upper_unipotent(-1)};
}

Mat2 random_word(std::mt19937_64& rng, int p, int max_len) {
  const auto letters = g_letters(p);
  Mat2 g = Mat2::identity();
  const int len = static_cast<int>(uniform(rng, 1, max_len));
  for (int i = 0; i < len; ++i) g = g * letters[rng() % letters.size()];
  return g;
}

Mat2 random_k(std::mt19937_64& rng, int p) {
  const auto gens = gl2_generators(p);
  Mat2 k = Mat2::identity();
  for (int i = 0; i < 4; ++i) k = k * gens[rng() % gens.size()];
  return k * lower_unipotent(PadicRational(p) * p_integral(rng, p));
}

// Random upper triangular element at bounded tree distance.
Mat2 random_p_element(std::mt19937_64& rng, int p, int max_distance) {
  for (;;) {
    const Mat2 b = Mat2::of(PadicRational(unit_int(rng, p), unit_int(rng, p)) *
                                PadicRational::power(p, static_cast<int>(uniform(rng, -1, 1))),
                            rng() % 3 == 0 ? PadicRational(0) : nonzero_rational(rng, p, -1, 1), 0,
                            PadicRational(unit_int(rng, p), unit_int(rng, p)) *
                                PadicRational::power(p, static_cast<int>(uniform(rng, -1, 1))));
    if (tree_distance(b, p) <= max_distance) return b;
  }
}

Vec random_vec(std::mt19937_64& rng, const Field& f, std::size_t n) {
  Vec v(n);
  for (auto& x : v) x = static_cast<Elem>(rng() % f.size());
  return v;
}

Check make_check(std::string name, CheckStatus status, json details = json::object(),
                 json certification = json::object()) {
  Check c;
  c.name = std::move(name);
  c.status = status;
  c.details = std::move(details);
  c.certification = std::move(certification);
  return c;
}

CheckStatus verdict(bool ok) { return ok ? CheckStatus::pass : CheckStatus::fail; }

// Truncation limits make a check inconclusive; anything else thrown is a failure.
template <class Body>
Check guarded(const std::string& name, Body body) {
  try {
    Check c = body();
    c.name = name;
    return c;
  } catch (const TruncationError& e) {
    return make_check(name, CheckStatus::inconclusive, {{"reason", e.what()}});
  } catch (const LevelOverflow& e) {
    return make_check(name, CheckStatus::inconclusive, {{"reason", e.what()}});
  } catch (const std::exception& e) {
    return make_check(name, CheckStatus::fail, {{"error", e.what()}});
  }
}

json maybe_int(const std::string& s) {
  if (s.empty()) return s;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size() || s.size() > 15) return s;
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') return s;
  return std::stoll(s);
}

json elem_json(const Field& f, Elem x) {
  if (f.degree() == 1) return static_cast<long long>(x);
  return f.to_string(x);
}

// Fully reduced row echelon form; equal subspaces give equal results.
std::vector<Vec> rref(const Field& f, std::vector<Vec> rows) {
  std::vector<Vec> out;
  if (rows.empty()) return out;
  const std::size_t n = rows.front().size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const Elem inv = f.inv(rows[r][col]);
    for (auto& x : rows[r]) x = f.mul(inv, x);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const Elem c = f.neg(rows[i][col]);
      axpy(f, c, rows[r], rows[i]);
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

}  // namespace

// ---------------------------------------------------------------- identities

std::vector<Check> suite_identities(const RunConfig& c) {
  const int p = c.p;
  const int n = c.trials;
  const json cert = {{"samples", n}, {"arithmetic", "exact"}};
  std::vector<Check> out;

  out.push_back(guarded("trix-identity", [&] {
    auto rng = rng_for(c, "trix-identity");
    int bad = 0;
    for (int i = 0; i < n; ++i) {
      const PadicRational beta = nonzero_rational(rng, p, -3, 3);
      const Mat2 lhs = weyl_s() * upper_unipotent(beta);
      const Mat2 rhs = Mat2::of(-beta.inverse(), 1, 0, beta) * lower_unipotent(beta.inverse());
      if (!(lhs == rhs)) ++bad;
    }
    return make_check("", verdict(bad == 0), {{"samples", n}, {"mismatches", bad}}, cert);
  }));

  out.push_back(guarded("restP-conjugation", [&] {
    auto rng = rng_for(c, "restP-conjugation");
    int bad = 0;
    for (int i = 0; i < n; ++i) {
      const PadicRational alpha = p_integral(rng, p);
      const PadicRational beta = PadicRational(p) * p_integral(rng, p);
      const PadicRational x = PadicRational(1) + alpha * beta;
      const Mat2 lhs = lower_unipotent(beta) * upper_unipotent(alpha);
      const Mat2 rhs = upper_unipotent(alpha / x) * Mat2::of(x.inverse(), 0, beta, x);
      if (!(lhs == rhs) || !is_member(Mat2::of(x.inverse(), 0, beta, x), SubgroupTag::I, p)) ++bad;
    }
    return make_check("", verdict(bad == 0), {{"samples", n}, {"mismatches", bad}}, cert);
  }));

  out.push_back(guarded("iwasawa-roundtrip", [&] {
    auto rng = rng_for(c, "iwasawa-roundtrip");
    int bad = 0;
    for (int i = 0; i < n; ++i) {
      const Mat2 g = random_word(rng, p, 6);
      const Iwasawa iw = iwasawa(g, p);
      if (!(iw.borel * iw.k == g) || !iw.borel.c.is_zero() || !is_member(iw.k, SubgroupTag::K, p)) ++bad;
    }
    return make_check("", verdict(bad == 0), {{"samples", n}, {"mismatches", bad}}, cert);
  }));

  out.push_back(guarded("bruhat-roundtrip", [&] {
    auto rng = rng_for(c, "bruhat-roundtrip");
    int bad = 0, cell_p = 0, cell_ps = 0;
    for (int i = 0; i < n; ++i) {
      const Mat2 g = random_word(rng, p, 6);
      const BruhatFactor bf = bruhat_side(g, p);
      const bool plain = bf.side == BruhatSide::PI1;
      (plain ? cell_p : cell_ps)++;
      const Mat2 back = plain ? bf.borel * bf.unip : bf.borel * weyl_s() * bf.unip;
      if (!(back == g) || !bf.borel.c.is_zero() || !is_member(bf.unip, SubgroupTag::I1, p)) ++bad;
    }
    return make_check("", verdict(bad == 0),
                      {{"samples", n}, {"mismatches", bad}, {"cell_PI1", cell_p}, {"cell_PsI1", cell_ps}}, cert);
  }));

  out.push_back(guarded("vertex-normalize-roundtrip", [&] {
    auto rng = rng_for(c, "vertex-normalize-roundtrip");
    int bad = 0;
    for (int i = 0; i < n; ++i) {
      const Mat2 g = random_word(rng, p, 6);
      const VertexForm vf = vertex_normalize(g, p);
      const bool ok = vf.vertex.representative(p) * vf.kz == g && in_kz(vf.kz, p) &&
                      tree_distance(g, p) == vertex_distance(vf.vertex, p) &&
                      vertex_normalize(g * random_k(rng, p), p).vertex == vf.vertex;
      if (!ok) ++bad;
    }
    return make_check("", verdict(bad == 0), {{"samples", n}, {"mismatches", bad}}, cert);
  }));
  return out;
}

// ------------------------------------------------------------------- weights

std::vector<Check> suite_weights(const RunConfig& c) {
  const int p = c.p;
  const FieldPtr field = field_for(c);
  const Field& f = *field;
  const int m_count = std::max(1, p - 1);
  std::vector<Check> out;

  out.push_back(guarded("i1-fixed-line", [&] {
    int bad = 0, total = 0;
    const int g = primitive_root(p);
    for (int r = 0; r < p; ++r)
      for (int m = 0; m < m_count; ++m) {
        ++total;
        const Weight w(field, r, m);
        // Oracle: kernel of the stacked (g - 1) over the I_1 generators.
        const auto gens = i1_generators(p);
        Matrix stacked(gens.size() * w.dim(), w.dim());
        for (std::size_t i = 0; i < gens.size(); ++i) {
          const Matrix a = w.matrix(gens[i]);
          for (std::size_t row = 0; row < w.dim(); ++row)
            for (std::size_t col = 0; col < w.dim(); ++col)
              stacked(i * w.dim() + row, col) = f.sub(a(row, col), row == col ? 1 : 0);
        }
        const auto fixed = kernel(f, stacked);
        const FixedLine line = i1_fixed_line(w);
        const Vec v = fixed.empty() ? Vec{} : fixed.front();
        bool ok = fixed.size() == 1 && line.character == IwahoriCharacter::from_exponents(p, r + m, m);
        if (ok) {
          const Elem a = f.from_int(g);
          ok = w.act(diagonal(g, 1), v) == [&] {
            Vec x = v;
            for (auto& e : x) e = f.mul(f.pow(a, r + m), e);
            return x;
          }() && w.act(diagonal(1, g), v) == [&] {
            Vec x = v;
            for (auto& e : x) e = f.mul(f.pow(a, m), e);
            return x;
          }();
        }
        if (!ok) ++bad;
      }
    return make_check("", verdict(bad == 0), {{"weights", total}, {"mismatches", bad}},
                      {{"search", "all (r, m)"}});
  }));

  out.push_back(guarded("weight-irreducible", [&] {
    int bad = 0, inconclusive = 0, total = 0;
    for (int r = 0; r < p; ++r)
      for (int m = 0; m < m_count; ++m) {
        ++total;
        const auto res = is_irreducible(weight_module(Weight(field, r, m)), c.seed);
        if (res.verdict == Irreducibility::reducible) ++bad;
        if (res.verdict == Irreducibility::inconclusive) ++inconclusive;
      }
    const CheckStatus s = bad ? CheckStatus::fail : inconclusive ? CheckStatus::inconclusive : CheckStatus::pass;
    return make_check("", s, {{"weights", total}, {"reducible", bad}, {"inconclusive", inconclusive}});
  }));

  out.push_back(guarded("induced-trivial-decomposition", [&] {
    const FiniteKModule mod = induce_from_iwahori(TorusCharacter::trivial(field));
    const std::size_t d = mod.dim;
    std::set<std::vector<Vec>> subs;
    subs.insert(std::vector<Vec>{});
    long long space_size = 1;
    for (std::size_t i = 0; i < d; ++i) space_size *= f.size();
    const bool exhaustive = space_size <= 20000;
    if (exhaustive) {
      // Every cyclic submodule, then closure under sums.
      Vec v(d, 0);
      for (long long idx = 1; idx < space_size; ++idx) {
        long long x = idx;
        for (std::size_t i = 0; i < d; ++i) {
          v[i] = static_cast<Elem>(x % f.size());
          x /= f.size();
        }
        subs.insert(rref(f, generated_submodule(mod, {v})));
      }
      for (bool grown = true; grown;) {
        grown = false;
        const std::vector<std::vector<Vec>> current(subs.begin(), subs.end());
        for (std::size_t i = 0; i < current.size(); ++i)
          for (std::size_t j = i + 1; j < current.size(); ++j) {
            std::vector<Vec> both = current[i];
            both.insert(both.end(), current[j].begin(), current[j].end());
            if (subs.insert(rref(f, both)).second) grown = true;
          }
      }
    } else {
      Vec one(d, 1), diff(d, 0);
      diff[0] = 1;
      diff[1] = f.neg(1);
      subs.insert(rref(f, generated_submodule(mod, {one})));
      subs.insert(rref(f, generated_submodule(mod, {diff})));
      subs.insert(rref(f, generated_submodule(mod, {one, diff})));
    }
    std::vector<std::size_t> dims;
    for (const auto& s : subs) dims.push_back(s.size());
    std::sort(dims.begin(), dims.end());
    const std::vector<std::size_t> expected = {0, 1, static_cast<std::size_t>(p), d};
    bool ok = dims == expected && d == static_cast<std::size_t>(p + 1);
    if (ok) {
      // The line and the p-dimensional piece together span everything.
      std::vector<Vec> both;
      for (const auto& s : subs)
        if (s.size() == 1 || s.size() == static_cast<std::size_t>(p)) both.insert(both.end(), s.begin(), s.end());
      ok = rref(f, both).size() == d;
    }
    json dj = json::array();
    for (auto x : dims) dj.push_back(x);
    return make_check("", verdict(ok), {{"submodule_dims", dj}, {"submodules", subs.size()}},
                      {{"exhaustive", exhaustive}, {"vectors_searched", exhaustive ? space_size - 1 : 3}});
  }));
  return out;
}

// --------------------------------------------------------------------- hecke

namespace {

CindElement random_cind_element(std::mt19937_64& rng, const CindSpace& space, int radius) {
  const auto ball = space.ball(radius);
  CindElement f;
  const int terms = static_cast<int>(uniform(rng, 1, 3));
  for (int i = 0; i < terms; ++i)
    f = space.add(f, space.term(ball[rng() % ball.size()], random_vec(rng, *space.field(), space.fiber())));
  if (f.is_zero()) f = space.phi();
  return f;
}

}  // namespace

std::vector<Check> suite_hecke(const RunConfig& c) {
  const int p = c.p;
  const FieldPtr field = field_for(c);
  const Field& f = *field;
  const auto space = std::make_shared<const CindSpace>(Weight(field, c.r, c.m));
  const CindSpace& S = *space;
  std::vector<Check> out;

  out.push_back(guarded("hecke-formula", [&] {
    // T phi = sum over the p neighbours (1, lambda) of v0, plus the Pi term
    // for a character weight: (-1)^m [Pi, v0] = (-1)^m sigma(p s) v0 at (-1, 0).
    const Vec& v0 = S.fixed_vector();
    CindElement expected;
    for (int lam = 0; lam < p; ++lam) expected = S.add(expected, S.term(TreeVertex{1, PadicRational(lam)}, v0));
    const bool character = c.r == 0;
    if (character) {
      Vec pi_term = S.weight().act(weyl_s(), v0);
      if (c.m % 2 == 1)
        for (auto& x : pi_term) x = f.neg(x);
      expected = S.add(expected, S.term(TreeVertex{-1, PadicRational(0)}, pi_term));
    }
    const CindElement got = S.hecke(S.phi());
    const bool pi_present = got.terms.count(TreeVertex{-1, PadicRational(0)}) > 0;
    return make_check("", verdict(got == expected && pi_present == character),
                      {{"character_weight", character}, {"pi_term_present", pi_present}, {"terms", got.terms.size()}});
  }));

  out.push_back(guarded("hecke-equivariance", [&] {
    auto rng = rng_for(c, "hecke-equivariance");
    int bad = 0;
    for (int i = 0; i < c.trials; ++i) {
      const Mat2 g = random_word(rng, p, 3);
      const CindElement x = random_cind_element(rng, S, 2);
      if (!(S.hecke(S.act(g, x)) == S.act(g, S.hecke(x)))) ++bad;
    }
    return make_check("", verdict(bad == 0), {{"pairs", c.trials}, {"mismatches", bad}}, {{"sample_radius", 2}});
  }));

  out.push_back(guarded("hecke-well-defined", [&] {
    const auto base = S.hecke_on_basis_via(S.spanning_set());
    const auto alt = S.hecke_on_basis_via(S.alternate_spanning_set());
    return make_check("", verdict(base == alt),
                      {{"basis_images", base.size()},
                       {"spanning_set_size", S.spanning_set().size()},
                       {"alternate_set_size", S.alternate_spanning_set().size()}});
  }));

  out.push_back(guarded("hecke-radius", [&] {
    auto rng = rng_for(c, "hecke-radius");
    int bad = 0;
    for (int i = 0; i < c.trials; ++i) {
      const CindElement x = random_cind_element(rng, S, 2);
      if (S.radius(S.hecke(x)) != S.radius(x) + 1) ++bad;
    }
    return make_check("", verdict(bad == 0), {{"samples", c.trials}, {"mismatches", bad}});
  }));

  out.push_back(guarded("quotient-membership", [&] {
    const HeckeIdeal ideal = HeckeIdeal::parse(field, c.ideal);
    const int deg = ideal.degree();
    const MembershipResult in = quotient_membership(S, S.apply(ideal, S.phi()), ideal, deg, c.r_max);
    const MembershipResult phi = quotient_membership(S, S.phi(), ideal, deg, c.r_max);
    return make_check("", verdict(in.zero && !phi.zero),
                      {{"ideal", ideal.to_string()}, {"ideal_phi_zero", in.zero}, {"phi_zero", phi.zero}},
                      {{"certified_radius", phi.certified_radius}});
  }));
  return out;
}

// ----------------------------------------------------------------- recursion

namespace {

std::optional<int> pure_power(const HeckeIdeal& ideal) {
  for (int i = 0; i < ideal.degree(); ++i)
    if (ideal.coeffs[static_cast<std::size_t>(i)] != 0) return std::nullopt;
  return ideal.degree();
}

struct CindRun {
  std::unique_ptr<CindModel> model;
  RecursionResult rec;
};

CindRun cind_recursion(const RunConfig& c) {
  const FieldPtr field = field_for(c);
  CindRun run;
  run.model = std::make_unique<CindModel>(Weight(field, c.r, c.m), HeckeIdeal::parse(field, c.ideal), c.R, c.r_max);
  run.rec = recursion(*run.model, run.model->phi(), c.bound);
  return run;
}

}  // namespace

std::vector<Check> suite_recursion(const RunConfig& c) {
  std::vector<Check> out;
  out.push_back(guarded("recursion", [&] {
    const CindRun run = cind_recursion(c);
    const CindModel& model = *run.model;
    const CindSpace& S = model.space();
    const auto& seq = run.rec.sequence;
    // Recompute each step from the element level.
    bool steps_ok = true;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      CindElement sum;
      for (int lam = 0; lam < c.p; ++lam)
        sum = S.add(sum, S.act(upper_unipotent(lam) * weyl_t(c.p), model.element(seq[i])));
      if (model.coords(sum) != seq[i + 1]) steps_ok = false;
    }
    json details = {{"bound", c.bound}, {"steps_recomputed", steps_ok}, {"all_i1_fixed", run.rec.all_i1_fixed}};
    const json cert = {{"radius", c.R}, {"R_max", c.r_max}};
    if (!run.rec.n) {
      details["n"] = nullptr;
      details["note"] = "not terminated within bound";
      const bool consistent = steps_ok && run.rec.all_i1_fixed;
      return make_check("", consistent ? CheckStatus::inconclusive : CheckStatus::fail, details, cert);
    }
    details["n"] = *run.rec.n;
    bool ok = steps_ok && run.rec.all_i1_fixed;
    const auto power = pure_power(model.quotient().ideal().value());
    if (power && c.r > 0) {
      details["expected_n"] = *power;
      ok = ok && *run.rec.n == *power;
    }
    return make_check("", verdict(ok), details, cert);
  }));
  return out;
}

// ------------------------------------------------------------------- lemma-s

std::vector<Check> suite_lemma_s(const RunConfig& c) {
  std::vector<Check> out;

  out.push_back(guarded("lemma-s-cind", [&] {
    const CindRun run = cind_recursion(c);
    const json cert = {{"radius", c.R}, {"R_max", c.r_max}};
    if (!run.rec.n) return make_check("", CheckStatus::inconclusive, {{"note", "recursion not terminated"}}, cert);
    if (*run.rec.n == 0) return make_check("", CheckStatus::inconclusive, {{"note", "start vector is zero"}}, cert);
    const Vec& vprime = run.rec.sequence[static_cast<std::size_t>(*run.rec.n - 1)];
    const LemmaSResult ls = lemma_s_check(*run.model, vprime);
    return make_check("", verdict(ls.pass), {{"n", *run.rec.n}, {"equal", ls.pass}}, cert);
  }));

  const int level = std::max(c.N, 2);
  const int n_max = std::max(c.n_max, level + 1);

  out.push_back(guarded("lemma-s-pseries", [&] {
    const PSModel model(chi_for(c), level, n_max);
    const Field& f = *model.field();
    // Hypothesis vectors: I_1-fixed v with sum_lambda u(lambda) t v = 0.
    const auto fixed = model.i1_fixed();
    Matrix sums(model.dim(), fixed.size());
    for (std::size_t j = 0; j < fixed.size(); ++j) {
      const Vec s = model.hecke_sum(fixed[j]);
      for (std::size_t r = 0; r < s.size(); ++r) sums(r, j) = s[r];
    }
    const auto ker = kernel(f, sums);
    const json cert = {{"level", level}, {"N_max", n_max}};
    if (ker.empty())
      return make_check("", CheckStatus::inconclusive, {{"note", "no vector satisfies the hypothesis"}}, cert);
    int passed = 0;
    for (const auto& coeffs : ker) {
      Vec v(model.dim(), 0);
      for (std::size_t j = 0; j < fixed.size(); ++j) axpy(f, coeffs[j], fixed[j], v);
      if (lemma_s_check(model, v).pass) ++passed;
    }
    const EigenRelation rel = eigen_relation(model.series());
    return make_check("", verdict(passed == static_cast<int>(ker.size())),
                      {{"i1_fixed_dim", fixed.size()},
                       {"hypothesis_dim", ker.size()},
                       {"passed", passed},
                       {"lambda", elem_json(f, rel.lambda)}},
                      cert);
  }));

  out.push_back(guarded("lemma-s-guard", [&] {
    const PSModel model(chi_for(c), level, n_max);
    const Vec v = model.coords(model.series().phi2());
    bool raised = false;
    try {
      lemma_s_check(model, v);
    } catch (const HypothesisViolated&) {
      raised = true;
    }
    return make_check("", verdict(raised), {{"hypothesis_violated_raised", raised}});
  }));
  return out;
}

// ------------------------------------------------------------------- pseries

std::vector<Check> suite_pseries(const RunConfig& c) {
  const int p = c.p;
  const TorusCharacter chi = chi_for(c);
  const PrincipalSeries ps(chi, c.n_max);
  const Field& f = *ps.field();
  std::vector<Check> out;

  out.push_back(guarded("i1-invariants", [&] {
    json dims = json::array();
    bool ok = true;
    for (int level = 1; level <= c.N; ++level) {
      const std::size_t direct = ps.i1_invariants(level).size();
      // Oracle: the generic fixed-vector solve of the truncated model.
      const std::size_t generic = PSModel(chi, level, c.n_max).i1_fixed().size();
      dims.push_back(direct);
      ok = ok && direct == 2 && generic == 2;
    }
    return make_check("", verdict(ok), {{"dims", dims}}, {{"levels", c.N}});
  }));

  out.push_back(guarded("phi-basis", [&] {
    const PSModel model(chi, 1, c.n_max);
    const PSFunction phi1 = ps.phi1(), phi2 = ps.phi2();
    const bool values = ps.eval_at_identity(phi1) == 1 && ps.eval_at_identity(phi2) == 0 && !ps.is_zero(phi2);
    const bool fixed = model.is_i1_fixed(model.coords(phi1)) && model.is_i1_fixed(model.coords(phi2));
    return make_check("", verdict(values && fixed), {{"values_at_identity", values}, {"i1_fixed", fixed}});
  }));

  out.push_back(guarded("eigen-relation", [&] {
    const EigenRelation rel = eigen_relation(ps);
    const Elem s2 = chi.value(diagonal(1, p));
    return make_check("", verdict(rel.lambda != 0 && rel.residual_zero),
                      {{"lambda", elem_json(f, rel.lambda)},
                       {"residual_zero", rel.residual_zero},
                       {"lambda_is_value_at_diag_1_p", rel.lambda == s2},
                       {"phi1_coefficient", elem_json(f, rel.phi1_coeff)},
                       {"phi2_coefficient", elem_json(f, rel.phi2_coeff)}});
  }));

  out.push_back(guarded("level-coherence", [&] {
    auto rng = rng_for(c, "level-coherence");
    int bad = 0, compared = 0, skipped = 0;
    for (int i = 0; i < c.trials; ++i) {
      const PSFunction x = ps.from_values(1, random_vec(rng, f, ps.point_count(1)));
      const Mat2 g = random_word(rng, p, 3);
      try {
        const PSFunction direct = ps.act(g, x);
        const PSFunction refined = ps.act(g, ps.refine(x, 2));
        ++compared;
        if (!ps.equal(direct, refined)) ++bad;
      } catch (const LevelOverflow&) {
        ++skipped;
      }
    }
    const CheckStatus s = bad ? CheckStatus::fail : compared ? CheckStatus::pass : CheckStatus::inconclusive;
    return make_check("", s, {{"compared", compared}, {"skipped_level_overflow", skipped}, {"mismatches", bad}},
                      {{"N_max", c.n_max}});
  }));

  out.push_back(guarded("borel-evaluation", [&] {
    // (b f)(1) = f(b) = chi(b) f(1) for b in P.
    auto rng = rng_for(c, "borel-evaluation");
    int bad = 0;
    for (int i = 0; i < c.trials; ++i) {
      const PSFunction x = ps.from_values(1, random_vec(rng, f, ps.point_count(1)));
      const Mat2 b = random_p_element(rng, p, c.n_max - 1);
      const Elem expect = f.mul(chi.value(b), ps.eval_at_identity(x));
      if (ps.eval_at_identity(ps.act(b, x)) != expect || ps.eval(x, b) != expect) ++bad;
    }
    return make_check("", verdict(bad == 0), {{"samples", c.trials}, {"mismatches", bad}});
  }));

  out.push_back(guarded("p-eigenvectors", [&] {
    const int level = std::min(2, c.n_max - 1);
    if (level < 1) throw LevelOverflow();
    const auto all = ps.p_eigenvectors(chi, level, false);
    const auto kappa = ps.p_eigenvectors(chi, level, true);
    const bool det_form = chi.i1 == chi.i2 && chi.s1 == chi.s2;
    return make_check("", verdict(kappa.empty() && all.size() == (det_form ? 1u : 0u)),
                      {{"eigenspace_dim", all.size()}, {"kernel_eigenspace_dim", kappa.size()}, {"det_character", det_form}},
                      {{"level", level}});
  }));

  if (chi.i1 == chi.i2 && chi.s1 == chi.s2) {
    out.push_back(guarded("p-splitting", [&] {
      auto rng = rng_for(c, "p-splitting");
      const DetSplitting split(ps);
      const PrincipalSeries& triv = split.trivial_model();
      const int samples = std::max(50, c.trials);
      int bad = 0;
      bool section = true;
      for (int i = 0; i < samples; ++i) {
        const Mat2 b = random_p_element(rng, p, c.n_max - 1);
        const PSFunction x = ps.from_values(1, random_vec(rng, f, ps.point_count(1)));
        const PSFunction bx = ps.act(b, x);
        const Elem eta = split.psi_det(b);
        bool ok = split.project(bx) == f.mul(eta, split.project(x));
        ok = ok && ps.equal(split.kappa_part(bx), ps.act(b, split.kappa_part(x)));
        // Untwisting moves the kernel of evaluation into the trivial model, up to eta(b).
        const PSFunction kx = split.kappa_part(x);
        ok = ok && triv.equal(split.untwist(ps.act(b, kx)), triv.scale(eta, triv.act(b, split.untwist(kx))));
        ok = ok && ps.equal(split.twist(split.untwist(kx)), kx);
        if (!ok) ++bad;
        const Elem a = static_cast<Elem>(rng() % f.size());
        section = section && split.project(split.include(a)) == a;
      }
      return make_check("", verdict(bad == 0 && section),
                        {{"samples", samples}, {"mismatches", bad}, {"section_identity", section}},
                        {{"N_max", c.n_max}});
    }));
  }
  return out;
}

// ---------------------------------------------------------------- generation

std::vector<Check> suite_generation(const RunConfig& c) {
  const int p = c.p;
  const FieldPtr field = field_for(c);
  const HeckeIdeal ideal = HeckeIdeal::parse(field, c.ideal);
  const Weight weight(field, c.r, c.m);
  std::vector<Check> out;

  out.push_back(guarded("ball-image-oracle", [&] {
    const CindModel model(weight, ideal, c.R_target, c.r_max);
    const std::size_t fast = model.quotient().ball_image_dim(c.R_target);
    const std::size_t oracle = ball_image_dimension_oracle(model.space(), ideal, c.R_target);
    return make_check("", verdict(fast == oracle), {{"dim", fast}, {"oracle_dim", oracle}}, {{"radius", c.R_target}});
  }));

  out.push_back(guarded("p-generation", [&] {
    auto rng = rng_for(c, "p-generation");
    const CindModel model(weight, ideal, c.r_max, c.r_max + 1);
    std::vector<Vec> starts = {model.phi(), model.act(upper_unipotent(PadicRational(1, p)), model.phi())};
    while (static_cast<int>(starts.size()) < c.trials)
      starts.push_back(random_frame_vector(model, rng, std::min(1, c.R_target)));
    starts.resize(static_cast<std::size_t>(c.trials));
    const GenerationReport g = p_generation_evidence(model, starts, c.R_target, c.L);
    json dims = json::array();
    for (const auto& t : g.trials) dims.push_back(t.span_dim);
    json details = {{"target_dim", g.target_dim}, {"span_dims", dims}};
    if (!g.note.empty()) details["note"] = g.note;
    // A shortfall at finite word length is missing evidence, not a counterexample.
    return make_check("", g.pass ? CheckStatus::pass : CheckStatus::inconclusive, details,
                      {{"target_radius", c.R_target}, {"word_length", c.L}, {"frame_radius", c.r_max}});
  }));

  const auto give = [&](const RepHandle& model, int start_truncation, std::string_view tag) {
    auto rng = rng_for(c, tag);
    int certified = 0;
    json ks = json::array();
    for (int i = 0; i < c.trials; ++i) {
      const Vec w = random_frame_vector(model, rng, start_truncation);
      const GiveResult g = prop_give(model, w, c.seed + static_cast<std::uint64_t>(i));
      // Re-verify the certificate independently of prop_give's own checks.
      bool ok = g.certificate_valid && g.i1_fixed && g.irreducible && !model.is_zero(g.v);
      for (const auto& [h, coeff] : g.certificate.terms) ok = ok && is_member(h, SubgroupTag::P, p);
      ok = ok && g.certificate.evaluate(model, w) == g.v && model.is_i1_fixed(g.v);
      if (ok) ++certified;
      ks.push_back(g.k);
    }
    return make_check("", verdict(certified == c.trials), {{"certified", certified}, {"trials", c.trials}, {"k", ks}});
  };

  out.push_back(guarded("prop-give-cind", [&] {
    const CindModel model(weight, ideal, c.R, c.r_max + 1);
    Check ch = give(model, std::min(1, c.R), "prop-give-cind");
    ch.certification = {{"frame_radius", c.R}, {"R_max", c.r_max + 1}};
    return ch;
  }));

  out.push_back(guarded("prop-give-pseries", [&] {
    const PSModel model(chi_for(c), c.N + 1, c.n_max + 1);
    Check ch = give(model, c.N, "prop-give-pseries");
    ch.certification = {{"frame_level", c.N + 1}, {"N_max", c.n_max + 1}};
    return ch;
  }));
  return out;
}

// -------------------------------------------------------------- hom-transfer

std::vector<Check> suite_hom_transfer(const RunConfig& c) {
  std::vector<Check> out;
  for (HomCase which : {HomCase::supersingular, HomCase::sp_to_ind, HomCase::char_rigidity, HomCase::princ_endo}) {
    const std::string name = std::string("hom-") + hom_case_name(which);
    out.push_back(guarded(name, [&] {
      HomCaseParams prm;
      prm.p = c.p;
      prm.r = c.r;
      prm.m = c.m;
      prm.radius = c.R;
      prm.level = 2;
      prm.word_length = c.L;
      const json cert = {{"radius", c.R}, {"level", prm.level}, {"word_length", c.L}};
      if (which == HomCase::supersingular && c.r == 0)
        return make_check("", CheckStatus::inconclusive, {{"note", "needs a non-character weight"}}, cert);
      if ((which == HomCase::sp_to_ind || which == HomCase::princ_endo) && c.p > 3)
        return make_check("", CheckStatus::inconclusive, {{"note", "relation solve limited to p <= 3"}}, cert);
      const HomCaseReport rep = hom_transfer_case(which, prm);
      json details = json::object();
      for (const auto& [k, v] : rep.details) details[k] = v == "true" ? json(true) : v == "false" ? json(false) : maybe_int(v);
      return make_check("", verdict(rep.pass), details, cert);
    }));
  }
  return out;
}

}  // namespace borel
