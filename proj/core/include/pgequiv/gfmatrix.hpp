#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "pgequiv/gfield.hpp"

namespace pgequiv {

using Vector = std::vector<Elem>;

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldPtr field, std::size_t n);
  static Matrix from_rows(FieldPtr field, const std::vector<Vector>& rows);
  static Matrix from_rows(FieldPtr field, std::initializer_list<std::initializer_list<Elem>> rows);
  /// Matrix whose columns are the given vectors (all of the same length).
  static Matrix from_columns(FieldPtr field, std::size_t rows, const std::vector<Vector>& cols);

  const FieldPtr& field_ptr() const { return field_; }
  const Field& field() const { return *field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  Vector column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Elem> v);

  Matrix transpose() const;
  /// Sub-matrix made of the listed columns, in the listed order.
  Matrix select_columns(std::span<const std::size_t> cols) const;
  /// Applies a field map entrywise.
  template <typename F>
  Matrix map(F&& f) const {
    Matrix out = *this;
    for (Elem& x : out.data_) x = f(x);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ &&
           (a.field_ == b.field_ || (a.field_ && b.field_ && *a.field_ == *b.field_));
  }

 private:
  FieldPtr field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

/// Throws std::invalid_argument on dimension or field mismatch.
Matrix operator*(const Matrix& a, const Matrix& b);

Vector mat_vec(const Matrix& a, std::span<const Elem> x);

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  Matrix transform;  // transform * input == reduced
};

RrefResult rref(const Matrix& a);
std::size_t rank(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);

/// Basis of { x : A x = 0 }, one vector per free column.
std::vector<Vector> nullspace_basis(const Matrix& a);

enum class SpanSearch { kFound, kNone, kBudgetExceeded };

struct NonzeroSearch {
  SpanSearch status = SpanSearch::kNone;
  Vector vector;  // set when status == kFound
};

inline constexpr std::uint64_t kDefaultSpanCap = 1'000'000;

/**
 * Looks for a vector with no zero coordinate in the span of `basis`.
 *
 * The basis is first brought to reduced echelon form, so the pivot
 * coordinates of a combination are its coefficients and must all be
 * nonzero. Since scaling preserves the property, the first coefficient is
 * fixed to 1, leaving (q-1)^(dim-1) candidates. The search is exhaustive
 * when that count is at most `cap`; otherwise kBudgetExceeded is returned
 * if the first `cap` candidates fail.
 */
NonzeroSearch all_nonzero_in_span(const Field& field, std::span<const Vector> basis,
                                  std::uint64_t cap = kDefaultSpanCap);

}  // namespace pgequiv
