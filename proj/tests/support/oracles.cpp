#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pgequiv::oracle {

std::vector<Matrix> general_linear_group(const FieldPtr& field, unsigned k) {
  const unsigned q = field->q();
  const std::size_t cells = std::size_t{k} * k;
  std::vector<Elem> digits(cells, 0);
  std::vector<Matrix> out;
  while (true) {
    Matrix m(field, k, k);
    for (std::size_t i = 0; i < cells; ++i) m(i / k, i % k) = digits[i];
    if (rank(m) == k) out.push_back(std::move(m));
    std::size_t i = 0;
    while (i < cells && ++digits[i] == q) digits[i++] = 0;
    if (i == cells) break;
  }
  return out;
}

namespace {

std::vector<Vector> normalized_columns(const Matrix& m) {
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(normalize_vector(m.field(), m.column(j)).first);
  std::sort(cols.begin(), cols.end());
  return cols;
}

}  // namespace

bool gl_equivalent(const GeneratorMatrix& g1, const GeneratorMatrix& g2, const std::vector<Matrix>& gl) {
  if (g1.k() != g2.k() || g1.n() != g2.n() || !(g1.field() == g2.field())) return false;
  const auto target = normalized_columns(g2.matrix());
  const Field& f = g1.field();
  for (unsigned rho = 0; rho < f.m(); ++rho) {
    const Matrix src = g1.matrix().map([&](Elem x) { return f.frobenius(x, rho); });
    for (const auto& q : gl)
      if (normalized_columns(q * src) == target) return true;
  }
  return false;
}

bool gl_equivalent(const GeneratorMatrix& g1, const GeneratorMatrix& g2) {
  return gl_equivalent(g1, g2, general_linear_group(g1.field_ptr(), g1.k()));
}

std::uint64_t pgammal_order(unsigned k, unsigned p, unsigned m) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m; ++i) q *= p;
  std::uint64_t qk = 1;
  for (unsigned i = 0; i < k; ++i) qk *= q;
  std::uint64_t order = m;
  std::uint64_t qi = 1;
  for (unsigned i = 0; i < k; ++i, qi *= q) order *= qk - qi;
  return order / (q - 1);
}

namespace {

using RowKey = std::pair<std::int64_t, std::vector<bool>>;

std::vector<RowKey> row_multiset(const ColoredBinaryMatrix& m, const std::vector<std::size_t>& image) {
  std::vector<RowKey> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<bool> bits(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) bits[image[c]] = m.bits.get(r, c);
    rows.emplace_back(m.row_colors[r], std::move(bits));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

template <typename Visit>
void for_each_color_preserving(const ColoredBinaryMatrix& a, const ColoredBinaryMatrix& b, Visit&& visit) {
  std::vector<std::size_t> image(a.cols());
  std::iota(image.begin(), image.end(), 0);
  do {
    bool colors = true;
    for (std::size_t c = 0; c < a.cols() && colors; ++c) colors = a.col_colors[c] == b.col_colors[image[c]];
    if (colors && !visit(image)) return;
  } while (std::next_permutation(image.begin(), image.end()));
}

}  // namespace

std::uint64_t automorphism_count(const ColoredBinaryMatrix& m) {
  std::vector<std::size_t> id(m.cols());
  std::iota(id.begin(), id.end(), 0);
  const auto reference = row_multiset(m, id);
  std::uint64_t count = 0;
  for_each_color_preserving(m, m, [&](const std::vector<std::size_t>& image) {
    count += row_multiset(m, image) == reference;
    return true;
  });
  return count;
}

std::optional<Permutation> find_isomorphism(const ColoredBinaryMatrix& a, const ColoredBinaryMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::nullopt;
  std::vector<std::size_t> id(b.cols());
  std::iota(id.begin(), id.end(), 0);
  const auto reference = row_multiset(b, id);
  std::optional<Permutation> found;
  for_each_color_preserving(a, b, [&](const std::vector<std::size_t>& image) {
    if (row_multiset(a, image) != reference) return true;
    found = Permutation(std::vector<std::uint32_t>(image.begin(), image.end()));
    return false;
  });
  return found;
}

std::vector<Vector> codewords(const GeneratorMatrix& g) {
  const Field& f = g.field();
  const std::size_t k = g.k();
  const std::size_t n = g.n();
  std::vector<Elem> coef(k, 0);
  std::vector<Vector> out;
  while (true) {
    Vector c(n, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) c[j] = f.add(c[j], f.mul(coef[i], g.matrix()(i, j)));
    out.push_back(std::move(c));
    std::size_t i = 0;
    while (i < k && ++coef[i] == f.q()) coef[i++] = 0;
    if (i == k) break;
  }
  return out;
}

std::size_t min_weight(const GeneratorMatrix& g) {
  std::size_t best = g.n() + 1;
  for (const auto& c : codewords(g)) {
    const auto w = static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [](Elem x) { return x != 0; }));
    if (w > 0) best = std::min(best, w);
  }
  return best;
}

std::uint64_t permutation_automorphisms(const GeneratorMatrix& g) {
  const auto words = codewords(g);
  const std::set<Vector> code(words.begin(), words.end());
  std::vector<std::size_t> image(g.n());
  std::iota(image.begin(), image.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < g.k() && ok; ++i) {
      Vector c(g.n());
      for (std::size_t j = 0; j < g.n(); ++j) c[image[j]] = g.matrix()(i, j);
      ok = code.count(c) > 0;
    }
    count += ok;
  } while (std::next_permutation(image.begin(), image.end()));
  return count;
}

std::uint64_t monomial_automorphisms(const GeneratorMatrix& g) {
  const Field& f = g.field();
  const auto words = codewords(g);
  const std::set<Vector> code(words.begin(), words.end());
  const std::size_t n = g.n();
  std::vector<std::size_t> image(n);
  std::iota(image.begin(), image.end(), 0);
  std::uint64_t count = 0;
  do {
    std::vector<Elem> scale(n, 1);
    while (true) {
      bool ok = true;
      for (std::size_t i = 0; i < g.k() && ok; ++i) {
        Vector c(n);
        for (std::size_t j = 0; j < n; ++j) c[image[j]] = f.mul(scale[image[j]], g.matrix()(i, j));
        ok = code.count(c) > 0;
      }
      count += ok;
      std::size_t i = 0;
      while (i < n && ++scale[i] == f.q()) scale[i++] = 1;
      if (i == n) break;
    }
  } while (std::next_permutation(image.begin(), image.end()));
  return count;
}

Matrix random_matrix(const FieldPtr& field, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<Elem>(rng.below(field->q()));
  return m;
}

Matrix random_invertible(const FieldPtr& field, unsigned k, Rng& rng) {
  while (true) {
    Matrix m = random_matrix(field, k, k, rng);
    if (rank(m) == k) return m;
  }
}

Permutation random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::uint32_t> image(n);
  std::iota(image.begin(), image.end(), 0u);
  rng.shuffle(image);
  return Permutation(std::move(image));
}

GeneratorMatrix random_equivalent(const GeneratorMatrix& g, Rng& rng, bool field_automorphism) {
  const Field& f = g.field();
  const std::size_t n = g.n();
  const Permutation sigma = random_permutation(n, rng);
  const unsigned rho = field_automorphism ? static_cast<unsigned>(rng.below(f.m())) : 0;
  Matrix moved(g.field_ptr(), g.k(), n);
  for (std::size_t j = 0; j < n; ++j) {
    const Elem lambda = static_cast<Elem>(1 + rng.below(f.q() - 1));
    for (std::size_t t = 0; t < g.k(); ++t)
      moved(t, sigma(j)) = f.frobenius(f.mul(lambda, g.matrix()(t, j)), rho);
  }
  return GeneratorMatrix(random_invertible(g.field_ptr(), g.k(), rng) * moved);
}

GeneratorMatrix random_full_rank(std::size_t n, unsigned k, const FieldPtr& field, Rng& rng) {
  while (true) {
    Matrix m = random_matrix(field, k, n, rng);
    bool zero_column = false;
    for (std::size_t j = 0; j < n && !zero_column; ++j) {
      bool nonzero = false;
      for (std::size_t t = 0; t < k; ++t) nonzero = nonzero || m(t, j) != 0;
      zero_column = !nonzero;
    }
    if (!zero_column && rank(m) == k) return GeneratorMatrix(std::move(m));
  }
}

ColoredBinaryMatrix random_binary(std::size_t rows, std::size_t cols, Rng& rng, unsigned row_colors,
                                  unsigned col_colors, unsigned density_percent) {
  ColoredBinaryMatrix m;
  m.bits = BitMatrix(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (rng.below(100) < density_percent) m.bits.set(r, c);
  m.row_colors.resize(rows);
  for (auto& x : m.row_colors) x = static_cast<std::int64_t>(rng.below(row_colors));
  m.col_colors.resize(cols);
  for (auto& x : m.col_colors) x = static_cast<std::int64_t>(rng.below(col_colors));
  return m;
}

ColoredBinaryMatrix shuffle_rows(const ColoredBinaryMatrix& m, Rng& rng) {
  std::vector<std::size_t> order(m.rows());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  ColoredBinaryMatrix out;
  out.bits = BitMatrix(m.rows(), m.cols());
  out.row_colors.resize(m.rows());
  out.col_colors = m.col_colors;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto src = m.bits.row(order[i]);
    std::copy(src.begin(), src.end(), out.bits.row(i).begin());
    out.row_colors[i] = m.row_colors[order[i]];
  }
  return out;
}

}  // namespace pgequiv::oracle
