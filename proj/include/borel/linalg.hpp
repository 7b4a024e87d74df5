#pragma once

// Dense exact linear algebra over a Field.  All elimination pivots on the
// first nonzero entry, so every result is reproducible.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "borel/field.hpp"

namespace borel {

using Vec = std::vector<Elem>;

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Elem> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  Elem& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  std::span<Elem> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const Elem> row(std::size_t i) const { return {data.data() + i * cols, cols}; }

  bool operator==(const Matrix&) const = default;
};

Vec mat_vec(const Field& f, const Matrix& a, std::span<const Elem> v);
Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b);
Matrix mat_sub(const Field& f, const Matrix& a, const Matrix& b);
bool is_zero_vec(std::span<const Elem> v);

/// out += c * v
void axpy(const Field& f, Elem c, std::span<const Elem> v, std::span<Elem> out);

/// Result of solving matrix * x = rhs.
struct LinearSolution {
  bool consistent = false;
  Vec particular;            // one solution when consistent
  std::vector<Vec> kernel;   // basis of the right null space
  Vec certificate;           // when inconsistent: y with y*matrix = 0, y*rhs = 1
};

LinearSolution solve_linear(const Field& f, const Matrix& a, std::span<const Elem> rhs);

/// Basis of {x : a x = 0}.
std::vector<Vec> kernel(const Field& f, const Matrix& a);
std::size_t rank(const Field& f, Matrix a);

/// Incrementally maintained echelon basis of a subspace of F^dim.
///
/// Stored rows have distinct pivots (first nonzero entry, normalized to 1)
/// and each row vanishes at the pivots of the rows inserted before it, so
/// reducing against the rows in insertion order yields a residual that
/// vanishes at every pivot.  With tracking enabled, each row also carries
/// its expression in terms of the vectors passed to insert().
class SpanBuilder {
 public:
  SpanBuilder(FieldPtr field, std::size_t dim, bool track = false)
      : field_(std::move(field)), dim_(dim), track_(track) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  std::size_t inserted() const { return inserted_; }

  /// Adds v; returns true when it enlarged the span.
  bool insert(std::span<const Elem> v);
  /// Residual of v after reduction; zero iff v lies in the span.
  Vec reduce(std::span<const Elem> v) const;
  bool contains(std::span<const Elem> v) const { return is_zero_vec(reduce(v)); }
  /// Coefficients c (over the insert() calls) with sum c_i v_i = v, when v
  /// lies in the span.  Requires tracking.
  std::optional<Vec> express(std::span<const Elem> v) const;
  /// Rows of the echelon basis.
  const std::vector<Vec>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  FieldPtr field_;
  std::size_t dim_;
  bool track_;
  std::size_t inserted_ = 0;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Vec> combos_;  // row i = sum combos_[i][j] * input_j
};

}  // namespace borel
