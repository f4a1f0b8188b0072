#include "pgequiv/lincode.hpp"

#include <algorithm>
#include <string>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "pgequiv/random.hpp"

namespace pgequiv {

namespace {

Matrix validated(Matrix m) {
  if (m.rows() == 0) throw std::domain_error("generator matrix needs at least one row");
  for (std::size_t c = 0; c < m.cols(); ++c) {
    bool nonzero = false;
    for (std::size_t r = 0; r < m.rows() && !nonzero; ++r) nonzero = m(r, c) != 0;
    if (!nonzero) throw std::domain_error("zero column " + std::to_string(c + 1) + " (code is not full length)");
  }
  if (rank(m) != m.rows())
    throw std::domain_error("generator matrix has rank below its " + std::to_string(m.rows()) + " rows");
  return m;
}

}  // namespace

GeneratorMatrix::GeneratorMatrix(Matrix m) : m_(validated(std::move(m))) {}

std::size_t CharacteristicVector::length() const {
  return std::accumulate(chi.begin(), chi.end(), std::size_t{0});
}

bool CharacteristicVector::is_projective() const {
  return std::all_of(chi.begin(), chi.end(), [](auto x) { return x <= 1; });
}

std::vector<std::size_t> column_points(const GeneratorMatrix& g, const PointTable& table) {
  if (g.k() != table.k() || !(g.field() == table.field()))
    throw std::invalid_argument("code and point table disagree on (k, q)");
  std::vector<std::size_t> idx(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) idx[j] = table.index_of_point(g.matrix().column(j));
  return idx;
}

CharacteristicVector characteristic_vector(const GeneratorMatrix& g, const PointTable& table) {
  CharacteristicVector cv{g.k(), g.field().q(), std::vector<std::uint32_t>(table.size(), 0)};
  for (auto u : column_points(g, table)) ++cv.chi[u];
  return cv;
}

GeneratorMatrix code_from_chi(const CharacteristicVector& chi, const PointTable& table) {
  if (chi.chi.size() != table.size()) throw std::invalid_argument("characteristic vector length mismatch");
  std::vector<Vector> cols;
  for (std::size_t u = 0; u < chi.chi.size(); ++u)
    for (std::uint32_t t = 0; t < chi.chi[u]; ++t) {
      auto p = table.point(u);
      cols.emplace_back(p.begin(), p.end());
    }
  Matrix m = Matrix::from_columns(table.field_ptr(), table.k(), cols);
  if (cols.empty() || rank(m) != table.k())
    throw std::domain_error("support of the characteristic vector does not span the space");
  return GeneratorMatrix(std::move(m));
}

SystematicForm systematic_form(const GeneratorMatrix& g) {
  const Field& f = g.field();
  const std::size_t k = g.k();
  const std::size_t n = g.n();
  Matrix m = g.matrix();
  Matrix t = Matrix::identity(g.field_ptr(), k);
  std::vector<std::size_t> pivot(k);
  std::vector<bool> is_pivot(n, false);

  for (std::size_t i = 0; i < k; ++i) {
    std::size_t col = 0;
    while (col < n && m(i, col) == 0) ++col;
    if (col == n) throw std::logic_error("systematic_form: rank-deficient input");
    pivot[i] = col;
    is_pivot[col] = true;
    const Elem s = f.inv(m(i, col));
    for (std::size_t c = 0; c < n; ++c) m(i, c) = f.mul(m(i, c), s);
    for (std::size_t c = 0; c < k; ++c) t(i, c) = f.mul(t(i, c), s);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == i || m(r, col) == 0) continue;
      const Elem factor = f.neg(m(r, col));
      for (std::size_t c = 0; c < n; ++c) m(r, c) = f.add(m(r, c), f.mul(factor, m(i, c)));
      for (std::size_t c = 0; c < k; ++c) t(r, c) = f.add(t(r, c), f.mul(factor, t(i, c)));
    }
  }

  std::vector<std::uint32_t> image(n);
  std::vector<Elem> scales(n, 1);
  for (std::size_t i = 0; i < k; ++i) image[pivot[i]] = static_cast<std::uint32_t>(i);
  std::uint32_t next = static_cast<std::uint32_t>(k);
  Matrix out(g.field_ptr(), k, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector col = m.column(j);
    if (!is_pivot[j]) {
      image[j] = next++;
      scales[j] = f.inv(normalize_in_place(f, col));
    }
    out.set_column(image[j], col);
  }
  return {GeneratorMatrix(std::move(out)), Permutation(std::move(image)), std::move(t), std::move(scales)};
}

std::size_t min_distance_hyperplane(const CharacteristicVector& chi, const IncidenceMatrix& inc) {
  if (chi.chi.size() != inc.bits.cols()) throw std::invalid_argument("characteristic vector length mismatch");
  const std::size_t n = chi.length();
  std::size_t best = 0;
  for (std::size_t i = 0; i < inc.bits.rows(); ++i) {
    std::size_t on = 0;
    for (std::size_t j = 0; j < chi.chi.size(); ++j)
      if (chi.chi[j] && !inc.bits.get(i, j)) on += chi.chi[j];
    best = std::max(best, on);
  }
  return n - best;
}

GeneratorMatrix random_code(std::size_t n, unsigned k, const FieldPtr& field, Rng& rng, bool projective) {
  if (k < 1) throw std::invalid_argument("dimension must be at least 1");
  if (n < k) throw std::invalid_argument("length " + std::to_string(n) + " is too small for rank " + std::to_string(k));
  const PointTable table(field, k);
  if (projective && n > table.size())
    throw std::invalid_argument("a projective code of length " + std::to_string(n) + " does not fit in PG(" +
                                std::to_string(k - 1) + "," + std::to_string(field->q()) + ")");
  constexpr int kAttempts = 100'000;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<std::size_t> picks;
    picks.reserve(n);
    std::unordered_set<std::size_t> used;
    while (picks.size() < n) {
      const auto u = static_cast<std::size_t>(rng.below(table.size()));
      if (projective && !used.insert(u).second) continue;
      picks.push_back(u);
    }
    Matrix m(field, k, n);
    for (std::size_t j = 0; j < n; ++j) m.set_column(j, table.point(picks[j]));
    if (rank(m) == k) return GeneratorMatrix(std::move(m));
  }
  throw std::runtime_error("random_code: could not draw a full-rank code");
}

GeneratorMatrix random_code(std::size_t n, unsigned k, const FieldPtr& field, std::uint64_t seed, bool projective) {
  Rng rng(seed);
  return random_code(n, k, field, rng, projective);
}

}  // namespace pgequiv
