#include "borel/cind.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

namespace borel {

HeckeIdeal HeckeIdeal::power(FieldPtr field, int n) {
  if (n < 1) throw std::invalid_argument("ideal degree must be >= 1");
  HeckeIdeal ideal{std::move(field), std::vector<Elem>(static_cast<std::size_t>(n) + 1, 0)};
  ideal.coeffs.back() = 1;
  return ideal;
}

HeckeIdeal HeckeIdeal::parse(FieldPtr field, std::string_view spec) {
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  auto bad = [&] { return std::invalid_argument("unrecognized ideal '" + std::string(spec) + "'"); };
  if (s.empty() || s[0] != 'T') throw bad();
  if (s == "T") return power(std::move(field), 1);
  if (s[1] == '^') {
    std::size_t pos = 0;
    int n = 0;
    try {
      n = std::stoi(s.substr(2), &pos);
    } catch (const std::exception&) {
      throw bad();
    }
    if (pos + 2 != s.size()) throw bad();
    return power(std::move(field), n);
  }
  if (s[1] == '-' || s[1] == '+') {
    long long c = 0;
    std::size_t pos = 0;
    try {
      c = std::stoll(s.substr(2), &pos);
    } catch (const std::exception&) {
      throw bad();
    }
    if (pos + 2 != s.size()) throw bad();
    const Elem ce = field->from_int(s[1] == '-' ? -c : c);
    return HeckeIdeal{field, {ce, 1}};
  }
  throw bad();
}

std::string HeckeIdeal::to_string() const {
  std::ostringstream os;
  const int d = degree();
  os << "T";
  if (d > 1) os << "^" << d;
  for (int i = d - 1; i >= 0; --i) {
    const Elem c = coeffs[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    os << "+";
    if (c != 1 || i == 0) os << field->to_string(c);
    if (i >= 1) os << "T";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

BallIndex::BallIndex(std::vector<TreeVertex> vertices, std::size_t fiber)
    : vertices_(std::move(vertices)), fiber_(fiber) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], i);
}

std::optional<std::size_t> BallIndex::index(const TreeVertex& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vec BallIndex::coords(const CindElement& f) const {
  Vec out(dim(), 0);
  for (const auto& [v, coeffs] : f.terms) {
    auto idx = index(v);
    if (!idx) throw TruncationError("truncation too small: element leaves the ball");
    std::copy(coeffs.begin(), coeffs.end(), out.begin() + static_cast<std::ptrdiff_t>(*idx * fiber_));
  }
  return out;
}

CindElement BallIndex::element(std::span<const Elem> coords) const {
  CindElement f;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    auto chunk = coords.subspan(i * fiber_, fiber_);
    if (!is_zero_vec(chunk)) f.terms.emplace(vertices_[i], Vec(chunk.begin(), chunk.end()));
  }
  return f;
}

CindElement BallIndex::basis_element(std::size_t coord) const {
  Vec e(dim(), 0);
  e[coord] = 1;
  return element(e);
}

CindSpace::CindSpace(Weight w) : weight_(std::move(w)) {
  v0_ = i1_fixed_line(weight_).vector;
  spanning_ = find_spanning(false);
  hecke_basis_ = hecke_on_basis_via(spanning_);
}

std::vector<Mat2> CindSpace::find_spanning(bool alternate) const {
  auto gens = gl2_generators(p());
  if (alternate) std::reverse(gens.begin(), gens.end());
  SpanBuilder span(field(), fiber());
  std::vector<Mat2> chosen;
  std::deque<std::pair<Mat2, Vec>> queue;
  const Mat2 start = alternate ? weyl_s() : Mat2::identity();
  Vec sv = weight_.act(start, v0_);
  span.insert(sv);
  chosen.push_back(start);
  queue.emplace_back(start, sv);
  while (!queue.empty() && span.rank() < fiber()) {
    auto [m, v] = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Vec gv = weight_.act(g, v);
      if (span.insert(gv)) {
        chosen.push_back(g * m);
        queue.emplace_back(g * m, gv);
      }
    }
  }
  if (span.rank() < fiber()) throw std::logic_error("spanning set insufficient");
  return chosen;
}

std::vector<Mat2> CindSpace::alternate_spanning_set() const { return find_spanning(true); }

CindElement CindSpace::phi() const { return term(TreeVertex{}, v0_); }

CindElement CindSpace::term(const TreeVertex& v, Vec coeffs) const {
  CindElement f;
  if (!is_zero_vec(coeffs)) f.terms.emplace(v, std::move(coeffs));
  return f;
}

CindElement CindSpace::add(const CindElement& a, const CindElement& b) const {
  CindElement out = a;
  const Field& f = *field();
  for (const auto& [v, coeffs] : b.terms) {
    auto [it, inserted] = out.terms.emplace(v, coeffs);
    if (inserted) continue;
    for (std::size_t i = 0; i < coeffs.size(); ++i) it->second[i] = f.add(it->second[i], coeffs[i]);
    if (is_zero_vec(it->second)) out.terms.erase(it);
  }
  return out;
}

CindElement CindSpace::scale(Elem c, const CindElement& a) const {
  if (c == 0) return {};
  CindElement out = a;
  for (auto& [v, coeffs] : out.terms)
    for (auto& x : coeffs) x = field()->mul(c, x);
  return out;
}

CindElement CindSpace::sub(const CindElement& a, const CindElement& b) const {
  return add(a, scale(field()->neg(1), b));
}

CindElement CindSpace::act(const Mat2& g, const CindElement& f) const {
  if (!g.is_invertible()) throw SingularMatrix();
  const int p = this->p();
  const Field& fld = *field();
  CindElement out;
  for (const auto& [v, coeffs] : f.terms) {
    VertexForm nf = vertex_normalize(g * v.representative(p), p);
    Vec w = weight_.act(nf.kz, coeffs);
    auto [it, inserted] = out.terms.emplace(nf.vertex, w);
    if (!inserted) {
      for (std::size_t i = 0; i < w.size(); ++i) it->second[i] = fld.add(it->second[i], w[i]);
    }
  }
  std::erase_if(out.terms, [](const auto& kv) { return is_zero_vec(kv.second); });
  return out;
}

CindElement CindSpace::hecke_on_phi() const {
  const int p = this->p();
  const CindElement phi0 = phi();
  CindElement out;
  for (int lam = 0; lam < p; ++lam) out = add(out, act(upper_unipotent(unit_lift(lam, p)) * weyl_t(p), phi0));
  if (weight_.is_character()) {
    const Elem sign = (weight_.m() % 2 == 0) ? 1 : field()->neg(1);
    out = add(out, scale(sign, act(weyl_pi(p), phi0)));
  }
  return out;
}

std::vector<CindElement> CindSpace::hecke_on_basis_via(const std::vector<Mat2>& spanning) const {
  const Field& f = *field();
  const std::size_t n = fiber();
  Matrix s(n, spanning.size());
  for (std::size_t j = 0; j < spanning.size(); ++j) {
    Vec col = weight_.act(spanning[j], v0_);
    for (std::size_t i = 0; i < n; ++i) s(i, j) = col[i];
  }
  const CindElement tphi = hecke_on_phi();
  std::vector<CindElement> translates;
  for (const auto& k : spanning) translates.push_back(act(k, tphi));
  std::vector<CindElement> out;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    auto sol = solve_linear(f, s, e);
    if (!sol.consistent) throw std::logic_error("spanning set insufficient");
    CindElement acc;
    for (std::size_t j = 0; j < spanning.size(); ++j)
      if (sol.particular[j] != 0) acc = add(acc, scale(sol.particular[j], translates[j]));
    out.push_back(std::move(acc));
  }
  return out;
}

CindElement CindSpace::hecke(const CindElement& f) const {
  const int p = this->p();
  CindElement out;
  for (const auto& [v, coeffs] : f.terms) {
    CindElement local;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) local = add(local, scale(coeffs[i], hecke_basis_[i]));
    out = add(out, act(v.representative(p), local));
  }
  return out;
}

CindElement CindSpace::apply(const HeckeIdeal& ideal, const CindElement& f) const {
  const int d = ideal.degree();
  CindElement out = scale(ideal.coeffs[static_cast<std::size_t>(d)], f);
  for (int i = d - 1; i >= 0; --i) out = add(hecke(out), scale(ideal.coeffs[static_cast<std::size_t>(i)], f));
  return out;
}

int CindSpace::radius(const CindElement& f) const {
  int r = -1;
  for (const auto& [v, coeffs] : f.terms) r = std::max(r, vertex_distance(v, p()));
  return r;
}

std::vector<TreeVertex> CindSpace::ball(int radius) const {
  const int p = this->p();
  std::vector<std::pair<int, TreeVertex>> found;
  if (radius < 0) return {};
  std::set<TreeVertex> seen;
  std::deque<std::pair<TreeVertex, int>> queue;
  queue.emplace_back(TreeVertex{}, 0);
  seen.insert(TreeVertex{});
  std::vector<Mat2> steps;
  for (int lam = 0; lam < p; ++lam) steps.push_back(Mat2::of(p, lam, 0, 1));
  steps.push_back(diagonal(1, p));
  while (!queue.empty()) {
    auto [v, dist] = queue.front();
    queue.pop_front();
    found.emplace_back(dist, v);
    if (dist == radius) continue;
    const Mat2 rep = v.representative(p);
    for (const auto& st : steps) {
      TreeVertex w = vertex_normalize(rep * st, p).vertex;
      if (seen.insert(w).second) queue.emplace_back(w, vertex_distance(w, p));
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return x.second < y.second;
  });
  std::vector<TreeVertex> out;
  out.reserve(found.size());
  for (auto& [d, v] : found) out.push_back(v);
  return out;
}

CindElement act(const CindSpace& space, const Mat2& g, const CindElement& f) { return space.act(g, f); }
CindElement hecke_T(const CindSpace& space, const CindElement& f) { return space.hecke(f); }

namespace {

struct Solve {
  bool consistent;
  CindElement preimage;
  Vec certificate;
};

Solve solve_preimage(const CindSpace& space, const CindElement& f, const HeckeIdeal& ideal, int R) {
  const BallIndex domain = space.ball_index(R);
  const BallIndex target = space.ball_index(R + ideal.degree());
  Matrix a(target.dim(), domain.dim());
  for (std::size_t j = 0; j < domain.dim(); ++j) {
    Vec col = target.coords(space.apply(ideal, domain.basis_element(j)));
    for (std::size_t i = 0; i < col.size(); ++i) a(i, j) = col[i];
  }
  auto sol = solve_linear(*space.field(), a, target.coords(f));
  if (sol.consistent) return {true, domain.element(sol.particular), {}};
  return {false, {}, sol.certificate};
}

}  // namespace

MembershipResult quotient_membership(const CindSpace& space, const CindElement& f, const HeckeIdeal& ideal, int R,
                                     int r_max) {
  if (R > r_max)
    throw TruncationError("truncation too small: radius bound " + std::to_string(R) + " exceeds R_max " +
                          std::to_string(r_max) + "; raise R_max");
  if (R < space.radius(f))
    throw TruncationError("truncation too small: radius bound " + std::to_string(R) + " below element radius " +
                          std::to_string(space.radius(f)) + "; raise R");
  MembershipResult res;
  res.radius = R;
  Solve s = solve_preimage(space, f, ideal, R);
  res.certified_radius = R;
  if (s.consistent) {
    res.zero = true;
    res.preimage = std::move(s.preimage);
    return res;
  }
  res.certificate = std::move(s.certificate);
  if (R + 1 <= r_max) {
    Solve again = solve_preimage(space, f, ideal, R + 1);
    if (again.consistent) {
      res.zero = true;
      res.preimage = std::move(again.preimage);
      res.certificate.clear();
      res.radius = R + 1;
      return res;
    }
    res.certified_radius = R + 1;
  }
  return res;
}

CindQuotient::CindQuotient(std::shared_ptr<const CindSpace> space, std::optional<HeckeIdeal> ideal)
    : space_(std::move(space)), ideal_(std::move(ideal)) {}

const CindQuotient::Level& CindQuotient::level(int R) const {
  std::lock_guard lock(mutex_);
  auto it = levels_.find(R);
  if (it != levels_.end()) return *it->second;
  auto lvl = std::make_unique<Level>(Level{space_->ball_index(R), SpanBuilder(space_->field(), 0)});
  lvl->image = SpanBuilder(space_->field(), lvl->ball.dim());
  if (ideal_ && R - ideal_->degree() >= 0) {
    const BallIndex inner = space_->ball_index(R - ideal_->degree());
    for (std::size_t j = 0; j < inner.dim(); ++j)
      lvl->image.insert(lvl->ball.coords(space_->apply(*ideal_, inner.basis_element(j))));
  }
  const Level& ref = *lvl;
  levels_.emplace(R, std::move(lvl));
  return ref;
}

const BallIndex& CindQuotient::ball(int R) const { return level(R).ball; }

Vec CindQuotient::reduce(const CindElement& f, int R) const {
  const Level& lvl = level(R);
  return lvl.image.reduce(lvl.ball.coords(f));
}

bool CindQuotient::is_zero(const CindElement& f) const {
  if (f.is_zero()) return true;
  if (!ideal_) return false;
  return is_zero_vec(reduce(f, space_->radius(f)));
}

CindElement CindQuotient::canonical(const CindElement& f) const {
  if (f.is_zero() || !ideal_) return f;
  const int R = space_->radius(f);
  return level(R).ball.element(reduce(f, R));
}

std::size_t CindQuotient::ball_image_dim(int R) const {
  const Level& lvl = level(R);
  return lvl.ball.dim() - lvl.image.rank();
}

std::vector<CindElement> i1_fixed_ball(const CindSpace& space, int R, const std::optional<HeckeIdeal>& ideal,
                                       int r_max) {
  if (R > r_max)
    throw TruncationError("truncation too small: radius " + std::to_string(R) + " exceeds R_max " +
                          std::to_string(r_max));
  const Field& f = *space.field();
  const BallIndex ball = space.ball_index(R);
  const std::size_t n = ball.dim();
  SpanBuilder image(space.field(), n);
  if (ideal && R - ideal->degree() >= 0) {
    const BallIndex inner = space.ball_index(R - ideal->degree());
    for (std::size_t j = 0; j < inner.dim(); ++j) image.insert(ball.coords(space.apply(*ideal, inner.basis_element(j))));
  }
  const auto gens = i1_generators(space.p());
  Matrix sys(gens.size() * n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const CindElement b = ball.basis_element(j);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      Vec col = ball.coords(space.act(gens[gi], b));
      col[j] = f.sub(col[j], 1);
      col = image.reduce(col);
      for (std::size_t i = 0; i < n; ++i) sys(gi * n + i, j) = col[i];
    }
  }
  SpanBuilder quotient = image;
  std::vector<CindElement> out;
  for (const auto& v : kernel(f, sys)) {
    Vec residual = quotient.reduce(v);
    if (quotient.insert(v)) out.push_back(ball.element(residual));
  }
  return out;
}

}  // namespace borel
