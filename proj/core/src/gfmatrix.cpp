#include "pgequiv/gfmatrix.hpp"

#include <stdexcept>
#include <utility>

namespace pgequiv {

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(FieldPtr field, const std::vector<Vector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!field->contains(rows[r][c])) throw std::invalid_argument("matrix entry outside the field");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Matrix Matrix::from_rows(FieldPtr field, std::initializer_list<std::initializer_list<Elem>> rows) {
  std::vector<Vector> v;
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(std::move(field), v);
}

Matrix Matrix::from_columns(FieldPtr field, std::size_t rows, const std::vector<Vector>& cols) {
  Matrix m(std::move(field), rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
  return m;
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_column(std::size_t c, std::span<const Elem> v) {
  if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix s(field_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) s(r, j) = (*this)(r, cols[j]);
  return s;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
  if (!(a.field() == b.field())) throw std::invalid_argument("matrix product: field mismatch");
  const Field& f = a.field();
  Matrix out(a.field_ptr(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Elem x = a(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(x, b(l, j)));
    }
  return out;
}

Vector mat_vec(const Matrix& a, std::span<const Elem> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  const Field& f = a.field();
  Vector y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Elem s = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) s = f.add(s, f.mul(a(i, j), x[j]));
    y[i] = s;
  }
  return y;
}

RrefResult rref(const Matrix& a) {
  const Field& f = a.field();
  RrefResult res{a, 0, {}, Matrix::identity(a.field_ptr(), a.rows())};
  Matrix& m = res.reduced;
  Matrix& t = res.transform;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
      for (std::size_t c = 0; c < t.cols(); ++c) std::swap(t(piv, c), t(row, c));
    }
    const Elem s = f.inv(m(row, col));
    for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), s);
    for (std::size_t c = 0; c < t.cols(); ++c) t(row, c) = f.mul(t(row, c), s);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Elem factor = f.neg(m(r, col));
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = f.add(m(r, c), f.mul(factor, m(row, c)));
      for (std::size_t c = 0; c < t.cols(); ++c) t(r, c) = f.add(t(r, c), f.mul(factor, t(row, c)));
    }
    res.pivots.push_back(col);
    ++row;
  }
  res.rank = row;
  return res;
}

std::size_t rank(const Matrix& a) { return rref(a).rank; }

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  auto r = rref(a);
  if (r.rank != a.rows()) return std::nullopt;
  return std::move(r.transform);
}

std::vector<Vector> nullspace_basis(const Matrix& a) {
  const Field& f = a.field();
  const auto r = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = f.neg(r.reduced(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

NonzeroSearch all_nonzero_in_span(const Field& field, std::span<const Vector> basis, std::uint64_t cap) {
  if (basis.empty()) return {};
  const std::size_t n = basis.front().size();
  if (n == 0) return {SpanSearch::kFound, {}};

  FieldPtr fp(std::shared_ptr<const Field>{}, &field);  // non-owning view
  const auto red = rref(Matrix::from_rows(fp, std::vector<Vector>(basis.begin(), basis.end())));
  const std::size_t dim = red.rank;
  if (dim == 0) return {};

  for (std::size_t c = 0; c < n; ++c) {
    bool any = false;
    for (std::size_t i = 0; i < dim && !any; ++i) any = red.reduced(i, c) != 0;
    if (!any) return {};
  }

  // Odometer over coefficients in GF(q)^*, first coefficient fixed to 1.
  const Elem q = field.q();
  std::vector<Elem> coef(dim, 1);
  Vector v(n);
  for (std::uint64_t tried = 0;; ++tried) {
    if (tried >= cap) return {SpanSearch::kBudgetExceeded, {}};
    bool ok = true;
    for (std::size_t c = 0; c < n; ++c) {
      Elem s = 0;
      for (std::size_t i = 0; i < dim; ++i) s = field.add(s, field.mul(coef[i], red.reduced(i, c)));
      v[c] = s;
      if (s == 0) {
        ok = false;
        break;
      }
    }
    if (ok) return {SpanSearch::kFound, v};
    std::size_t i = dim;
    while (i > 1) {
      --i;
      if (++coef[i] < q) break;
      coef[i] = 1;
      if (i == 1) return {};
    }
    if (dim == 1) return {};
  }
}

}  // namespace pgequiv
