#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pgequiv/gfmatrix.hpp"
#include "pgequiv/projgeom.hpp"

using namespace pgequiv;

namespace {

bool all_nonzero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](Elem x) { return x != 0; });
}

// Some all-nonzero vector in the span, by trying every coefficient tuple.
bool brute_force_nonzero_in_span(const Field& f, const std::vector<Vector>& basis) {
  const std::size_t d = basis.size();
  const std::size_t n = basis.front().size();
  std::vector<Elem> coef(d, 0);
  while (true) {
    Vector v(n, 0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < n; ++j) v[j] = f.add(v[j], f.mul(coef[i], basis[i][j]));
    if (all_nonzero(v)) return true;
    std::size_t i = 0;
    while (i < d && ++coef[i] == f.q()) coef[i++] = 0;
    if (i == d) return false;
  }
}

}  // namespace

TEST(Matrix, ProductExamples) {
  const auto f3 = Field::make(3);
  const auto g = Matrix::from_rows(f3, {{1, 0, 0, 1, 2, 0}, {0, 1, 0, 1, 1, 1}, {0, 0, 1, 1, 1, 0}});
  EXPECT_EQ(Matrix::identity(f3, 3) * g, g);
  const auto a = Matrix::from_rows(f3, {{1, 2}, {0, 1}});
  const auto b = Matrix::from_rows(f3, {{1}, {1}});
  EXPECT_EQ(a * b, Matrix::from_rows(f3, {{0}, {1}}));
  EXPECT_THROW(a * g, std::invalid_argument);
}

TEST(Matrix, FanoGramMatrixMatchesIncidence) {
  const PointTable t(Field::make(2), 3);
  const Matrix g = simplex_generator(t);
  const Matrix gram = g.transpose() * g;
  const auto inc = incidence(t);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j) EXPECT_EQ(gram(i, j) != 0, inc.bits.get(i, j));
}

TEST(Rref, Examples) {
  const auto f3 = Field::make(3);
  const auto id = Matrix::identity(f3, 4);
  const auto r = rref(id);
  EXPECT_EQ(r.reduced, id);
  EXPECT_EQ(r.rank, 4u);
  EXPECT_EQ(r.transform, id);
  EXPECT_EQ(rank(Matrix::from_rows(f3, {{1, 2}, {2, 1}})), 1u);
  EXPECT_EQ(rank(Matrix::from_rows(f3, {{1, 0, 0, 1, 2, 0}, {0, 1, 0, 1, 1, 1}, {0, 0, 1, 1, 1, 0}})), 3u);
}

TEST(Rref, TransformReproducesReducedForm) {
  Rng rng(11);
  for (unsigned q : {2u, 3u, 4u, 5u, 8u, 9u}) {
    const auto f = Field::make(q);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + rng.below(6);
      const std::size_t cols = 1 + rng.below(8);
      const Matrix a = oracle::random_matrix(f, rows, cols, rng);
      const auto r = rref(a);
      EXPECT_EQ(r.transform * a, r.reduced);
      EXPECT_EQ(rank(r.transform), rows);
      EXPECT_EQ(r.pivots.size(), r.rank);
      for (std::size_t i = 0; i < r.rank; ++i) {
        EXPECT_EQ(r.reduced(i, r.pivots[i]), 1u);
        for (std::size_t t = 0; t < rows; ++t)
          if (t != i) EXPECT_EQ(r.reduced(t, r.pivots[i]), 0u);
        if (i) EXPECT_LT(r.pivots[i - 1], r.pivots[i]);
      }
      for (std::size_t i = r.rank; i < rows; ++i)
        for (std::size_t c = 0; c < cols; ++c) EXPECT_EQ(r.reduced(i, c), 0u);
    }
  }
}

TEST(Inverse, RoundTrip) {
  Rng rng(5);
  for (unsigned q : {2u, 3u, 7u, 16u}) {
    const auto f = Field::make(q);
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix a = oracle::random_invertible(f, 1 + static_cast<unsigned>(rng.below(5)), rng);
      auto inv = inverse(a);
      ASSERT_TRUE(inv);
      EXPECT_EQ(*inv * a, Matrix::identity(f, a.rows()));
    }
  }
  EXPECT_FALSE(inverse(Matrix::from_rows(Field::make(3), {{1, 2}, {2, 1}})));
}

TEST(Nullspace, Examples) {
  const auto f3 = Field::make(3);
  EXPECT_TRUE(nullspace_basis(Matrix::identity(f3, 3)).empty());
  const auto basis = nullspace_basis(Matrix(f3, 2, 3));
  ASSERT_EQ(basis.size(), 3u);
  EXPECT_EQ(basis[0], (Vector{1, 0, 0}));
  EXPECT_EQ(basis[2], (Vector{0, 0, 1}));
}

TEST(Nullspace, VectorsSolveSystem) {
  Rng rng(3);
  for (unsigned q : {2u, 3u, 5u, 9u}) {
    const auto f = Field::make(q);
    for (int trial = 0; trial < 40; ++trial) {
      const Matrix a = oracle::random_matrix(f, 1 + rng.below(5), 1 + rng.below(7), rng);
      const auto basis = nullspace_basis(a);
      EXPECT_EQ(basis.size(), a.cols() - rank(a));
      for (const auto& v : basis)
        for (auto x : mat_vec(a, v)) EXPECT_EQ(x, 0u);
      if (!basis.empty()) EXPECT_EQ(rank(Matrix::from_rows(f, basis)), basis.size());
    }
  }
}

// The homogeneous system for the ternary example: G2 = (I | E) and the
// permutation (2 3 4); unknowns are the six scalars.
TEST(Nullspace, TernaryExampleSystem) {
  const auto f = Field::make(3);
  const auto g1 = Matrix::from_rows(f, {{1, 0, 0, 1, 2, 0}, {0, 1, 0, 1, 1, 1}, {0, 0, 1, 1, 1, 0}});
  const auto g2 = Matrix::from_rows(f, {{1, 0, 0, 1, 1, 0}, {0, 1, 0, 1, 2, 0}, {0, 0, 1, 1, 0, 2}});
  // i_s = sigma^-1(s) for sigma = (2 3 4), 1-based: i = (1, 4, 2, 3, 5, 6).
  const std::size_t src[6] = {0, 3, 1, 2, 4, 5};
  // Q = (l1 g_{i1}, l2 g_{i2}, l3 g_{i3}); Q E_c = l_c g_{i_c} for c = 4..6.
  Matrix sys(f, 9, 6);
  for (std::size_t c = 3; c < 6; ++c)
    for (std::size_t t = 0; t < 3; ++t) {
      const std::size_t row = (c - 3) * 3 + t;
      for (std::size_t r = 0; r < 3; ++r) sys(row, r) = f->mul(g2(r, c), g1(t, src[r]));
      sys(row, c) = f->neg(g1(t, src[c]));
    }
  const auto basis = nullspace_basis(sys);
  ASSERT_EQ(basis.size(), 1u);
  const auto [norm, scalar] = normalize_vector(*f, basis[0]);
  EXPECT_EQ(norm, (Vector{1, 2, 1, 2, 1, 2}));
  (void)scalar;
  const auto found = all_nonzero_in_span(*f, basis);
  ASSERT_EQ(found.status, SpanSearch::kFound);
  EXPECT_EQ(found.vector, (Vector{1, 2, 1, 2, 1, 2}));
}

TEST(SpanSearch, Examples) {
  const auto f3 = Field::make(3);
  const std::vector<Vector> one{{1, 2, 1, 2, 1, 2}};
  const auto a = all_nonzero_in_span(*f3, one);
  EXPECT_EQ(a.status, SpanSearch::kFound);
  EXPECT_EQ(a.vector, one[0]);
  EXPECT_EQ(all_nonzero_in_span(*f3, std::vector<Vector>{{1, 0}}).status, SpanSearch::kNone);
  const auto f2 = Field::make(2);
  const auto b = all_nonzero_in_span(*f2, std::vector<Vector>{{1, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(b.status, SpanSearch::kFound);
  EXPECT_EQ(b.vector, (Vector{1, 1, 1}));
  EXPECT_EQ(all_nonzero_in_span(*f2, std::vector<Vector>{}).status, SpanSearch::kNone);
}

TEST(SpanSearch, BudgetIsReportedDistinctly) {
  // The first combination tried, (1, 1, 0), has a zero coordinate.
  const auto f = Field::make(5);
  const std::vector<Vector> basis{{1, 0, 1}, {0, 1, 4}};
  EXPECT_EQ(all_nonzero_in_span(*f, basis, 1).status, SpanSearch::kBudgetExceeded);
  EXPECT_EQ(all_nonzero_in_span(*f, basis).status, SpanSearch::kFound);
}

TEST(SpanSearch, AgreesWithBruteForce) {
  Rng rng(17);
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    const auto f = Field::make(q);
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t d = 1 + rng.below(3);
      const std::size_t n = 1 + rng.below(6);
      std::vector<Vector> basis;
      for (std::size_t i = 0; i < d; ++i) {
        Vector v(n);
        for (auto& x : v) x = rng.below(3) ? 0 : static_cast<Elem>(rng.below(q));
        basis.push_back(v);
      }
      const bool expected = brute_force_nonzero_in_span(*f, basis);
      const auto got = all_nonzero_in_span(*f, basis);
      ASSERT_NE(got.status, SpanSearch::kBudgetExceeded);
      EXPECT_EQ(got.status == SpanSearch::kFound, expected);
      if (got.status == SpanSearch::kFound) {
        EXPECT_TRUE(all_nonzero(got.vector));
        // Member of the span: appending it does not raise the rank.
        auto extended = basis;
        extended.push_back(got.vector);
        EXPECT_EQ(rank(Matrix::from_rows(f, extended)), rank(Matrix::from_rows(f, basis)));
      }
    }
  }
}
