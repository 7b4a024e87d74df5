#include "borel/linalg.hpp"

#include <stdexcept>

namespace borel {

bool is_zero_vec(std::span<const Elem> v) {
  for (Elem e : v)
    if (e != 0) return false;
  return true;
}

void axpy(const Field& f, Elem c, std::span<const Elem> v, std::span<Elem> out) {
  if (c == 0) return;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) out[i] = f.add(out[i], f.mul(c, v[i]));
}

Vec mat_vec(const Field& f, const Matrix& a, std::span<const Elem> v) {
  if (v.size() != a.cols) throw std::invalid_argument("dimension mismatch");
  Vec out(a.rows, 0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    Elem acc = 0;
    for (std::size_t j = 0; j < a.cols; ++j)
      if (v[j] != 0 && a(i, j) != 0) acc = f.add(acc, f.mul(a(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("dimension mismatch");
  Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Elem x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j)
        if (b(k, j) != 0) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
    }
  return c;
}

Matrix mat_sub(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("dimension mismatch");
  Matrix c(a.rows, a.cols);
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] = f.sub(a.data[i], b.data[i]);
  return c;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(const Field& f, Matrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.rows; ++c) {
    std::size_t piv = r;
    while (piv < m.rows && m(piv, c) == 0) ++piv;
    if (piv == m.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
    const Elem inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols; ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Elem factor = f.neg(m(i, c));
      for (std::size_t j = c; j < m.cols; ++j)
        if (m(r, j) != 0) m(i, j) = f.add(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<Vec> kernel_from_rref(const Field& f, const Matrix& m, const std::vector<std::size_t>& pivots,
                                  std::size_t ncols) {
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Vec x(ncols, 0);
    x[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = f.neg(m(i, free));
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace

std::vector<Vec> kernel(const Field& f, const Matrix& a) {
  Matrix m = a;
  auto pivots = rref(f, m, m.cols);
  return kernel_from_rref(f, m, pivots, a.cols);
}

std::size_t rank(const Field& f, Matrix a) { return rref(f, a, a.cols).size(); }

LinearSolution solve_linear(const Field& f, const Matrix& a, std::span<const Elem> rhs) {
  if (rhs.size() != a.rows) throw std::invalid_argument("dimension mismatch");
  Matrix aug(a.rows, a.cols + 1);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) aug(i, j) = a(i, j);
    aug(i, a.cols) = rhs[i];
  }
  auto pivots = rref(f, aug, a.cols);
  LinearSolution out;
  for (std::size_t i = pivots.size(); i < aug.rows; ++i) {
    if (aug(i, a.cols) != 0) {
      // Inconsistent: find y with y^T [a | rhs] = (0,...,0,1) by solving
      // the transposed system.
      Matrix t(a.cols + 1, a.rows);
      for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < a.cols; ++c) t(c, r) = a(r, c);
        t(a.cols, r) = rhs[r];
      }
      Vec target(a.cols + 1, 0);
      target[a.cols] = 1;
      Matrix taug(t.rows, t.cols + 1);
      for (std::size_t r = 0; r < t.rows; ++r) {
        for (std::size_t c = 0; c < t.cols; ++c) taug(r, c) = t(r, c);
        taug(r, t.cols) = target[r];
      }
      auto tp = rref(f, taug, t.cols);
      Vec y(a.rows, 0);
      for (std::size_t k = 0; k < tp.size(); ++k) y[tp[k]] = taug(k, t.cols);
      out.consistent = false;
      out.certificate = std::move(y);
      return out;
    }
  }
  out.consistent = true;
  out.particular.assign(a.cols, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) out.particular[pivots[i]] = aug(i, a.cols);
  out.kernel = kernel_from_rref(f, aug, pivots, a.cols);
  return out;
}

bool SpanBuilder::insert(std::span<const Elem> v) {
  if (v.size() != dim_) throw std::invalid_argument("dimension mismatch");
  const Field& f = *field_;
  Vec r(v.begin(), v.end());
  Vec combo;
  if (track_) {
    combo.assign(inserted_ + 1, 0);
    combo[inserted_] = 1;
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Elem c = r[pivots_[i]];
    if (c == 0) continue;
    const Elem nc = f.neg(c);
    const Vec& row = rows_[i];
    for (std::size_t j = pivots_[i]; j < dim_; ++j)
      if (row[j] != 0) r[j] = f.add(r[j], f.mul(nc, row[j]));
    if (track_) axpy(f, nc, combos_[i], std::span<Elem>(combo.data(), combos_[i].size()));
  }
  ++inserted_;
  std::size_t piv = 0;
  while (piv < dim_ && r[piv] == 0) ++piv;
  if (piv == dim_) return false;
  const Elem inv = f.inv(r[piv]);
  for (std::size_t j = piv; j < dim_; ++j) r[j] = f.mul(r[j], inv);
  if (track_)
    for (auto& c : combo) c = f.mul(c, inv);
  rows_.push_back(std::move(r));
  pivots_.push_back(piv);
  if (track_) combos_.push_back(std::move(combo));
  return true;
}

Vec SpanBuilder::reduce(std::span<const Elem> v) const {
  if (v.size() != dim_) throw std::invalid_argument("dimension mismatch");
  const Field& f = *field_;
  Vec r(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Elem c = r[pivots_[i]];
    if (c == 0) continue;
    const Elem nc = f.neg(c);
    const Vec& row = rows_[i];
    for (std::size_t j = pivots_[i]; j < dim_; ++j)
      if (row[j] != 0) r[j] = f.add(r[j], f.mul(nc, row[j]));
  }
  return r;
}

std::optional<Vec> SpanBuilder::express(std::span<const Elem> v) const {
  if (!track_) throw std::logic_error("SpanBuilder::express requires tracking");
  const Field& f = *field_;
  Vec r(v.begin(), v.end());
  Vec combo(inserted_, 0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Elem c = r[pivots_[i]];
    if (c == 0) continue;
    const Elem nc = f.neg(c);
    const Vec& row = rows_[i];
    for (std::size_t j = pivots_[i]; j < dim_; ++j)
      if (row[j] != 0) r[j] = f.add(r[j], f.mul(nc, row[j]));
    axpy(f, c, combos_[i], std::span<Elem>(combo.data(), combos_[i].size()));
  }
  if (!is_zero_vec(r)) return std::nullopt;
  return combo;
}

}  // namespace borel
