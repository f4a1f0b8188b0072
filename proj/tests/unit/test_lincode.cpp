#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pgequiv/lincode.hpp"

using namespace pgequiv;

namespace {

GeneratorMatrix ternary_g1() {
  return GeneratorMatrix(
      Matrix::from_rows(Field::make(3), {{1, 0, 0, 1, 2, 0}, {0, 1, 0, 1, 1, 1}, {0, 0, 1, 1, 1, 0}}));
}

GeneratorMatrix ternary_g2() {
  return GeneratorMatrix(
      Matrix::from_rows(Field::make(3), {{1, 0, 0, 1, 1, 0}, {0, 1, 0, 1, 2, 0}, {0, 0, 1, 1, 0, 2}}));
}

}  // namespace

TEST(GeneratorMatrix, Validation) {
  const auto f = Field::make(3);
  EXPECT_THROW(GeneratorMatrix(Matrix::from_rows(f, {{1, 0, 1}, {0, 0, 1}, {1, 0, 0}})), std::domain_error);
  EXPECT_THROW(GeneratorMatrix(Matrix::from_rows(f, {{1, 1, 2}, {2, 2, 1}})), std::domain_error);
  EXPECT_THROW(GeneratorMatrix(Matrix(f, 0, 3)), std::domain_error);
  EXPECT_NO_THROW(ternary_g1());
}

TEST(CharacteristicVector, TernaryExamples) {
  const PointTable t(Field::make(3), 3);
  const auto c1 = characteristic_vector(ternary_g1(), t);
  EXPECT_EQ(c1.chi, (std::vector<std::uint32_t>{1, 2, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1}));
  EXPECT_EQ(c1.length(), 6u);
  EXPECT_FALSE(c1.is_projective());
  const auto c2 = characteristic_vector(ternary_g2(), t);
  EXPECT_EQ(c2.chi, (std::vector<std::uint32_t>{2, 1, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0}));
}

TEST(CharacteristicVector, SimplexIsAllOnes) {
  for (auto [q, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {3, 3}, {4, 2}, {2, 4}, {5, 3}}) {
    const PointTable t(Field::make(q), k);
    const auto chi = characteristic_vector(GeneratorMatrix(simplex_generator(t)), t);
    EXPECT_EQ(chi.chi, std::vector<std::uint32_t>(t.size(), 1));
    EXPECT_TRUE(chi.is_projective());
  }
}

TEST(CharacteristicVector, MonomialInvariance) {
  Rng rng(21);
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    const auto f = Field::make(q);
    const PointTable t(f, 3);
    for (int trial = 0; trial < 20; ++trial) {
      const auto g = oracle::random_full_rank(8, 3, f, rng);
      const auto chi = characteristic_vector(g, t);
      // Column scaling and permutation (no row operations) keep chi.
      Matrix moved(f, 3, g.n());
      const auto sigma = oracle::random_permutation(g.n(), rng);
      for (std::size_t j = 0; j < g.n(); ++j) {
        const Elem s = static_cast<Elem>(1 + rng.below(q - 1));
        for (std::size_t r = 0; r < 3; ++r) moved(r, sigma(j)) = f->mul(s, g.matrix()(r, j));
      }
      EXPECT_EQ(characteristic_vector(GeneratorMatrix(moved), t), chi);
    }
  }
}

TEST(CodeFromChi, RoundTrip) {
  Rng rng(4);
  for (unsigned q : {2u, 3u, 4u, 7u}) {
    const auto f = Field::make(q);
    const PointTable t(f, 3);
    for (int trial = 0; trial < 30; ++trial) {
      CharacteristicVector chi{3, q, std::vector<std::uint32_t>(t.size(), 0)};
      for (auto& x : chi.chi) x = static_cast<std::uint32_t>(rng.below(4) == 0 ? rng.below(3) : 0);
      bool spans = false;
      try {
        const auto g = code_from_chi(chi, t);
        spans = true;
        EXPECT_EQ(characteristic_vector(g, t), chi);
        EXPECT_EQ(g.n(), chi.length());
      } catch (const std::domain_error&) {
      }
      // Independent check of the spanning condition.
      std::vector<Vector> cols;
      for (std::size_t u = 0; u < t.size(); ++u)
        if (chi.chi[u]) cols.emplace_back(t.point(u).begin(), t.point(u).end());
      const bool expected = !cols.empty() && rank(Matrix::from_rows(f, cols)) == 3;
      EXPECT_EQ(spans, expected);
    }
  }
}

TEST(SystematicForm, Contract) {
  Rng rng(8);
  for (unsigned q : {2u, 3u, 4u, 5u, 9u}) {
    const auto f = Field::make(q);
    for (int trial = 0; trial < 30; ++trial) {
      const unsigned k = 1 + static_cast<unsigned>(rng.below(4));
      const auto g = oracle::random_full_rank(k + rng.below(5), k, f, rng);
      const auto s = systematic_form(g);
      const Matrix& m = s.matrix.matrix();
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = 0; c < k; ++c) EXPECT_EQ(m(i, c), i == c ? 1u : 0u);
      for (std::size_t j = k; j < g.n(); ++j) {
        const Vector col = m.column(j);
        EXPECT_EQ(normalize_vector(*f, col).first, col);
      }
      for (std::size_t j = 0; j < g.n(); ++j) {
        Vector expected = mat_vec(s.row_transform, g.matrix().column(j));
        for (auto& x : expected) x = f->mul(s.column_scales[j], x);
        EXPECT_EQ(m.column(s.column_map(j)), expected);
      }
    }
  }
}

TEST(SystematicForm, KeepsIdentityInPlace) {
  const auto s = systematic_form(ternary_g2());
  EXPECT_TRUE(s.column_map.is_identity());
  EXPECT_EQ(s.row_transform, Matrix::identity(Field::make(3), 3));
  // Only the last column needs normalizing: (0, 0, 2) -> (0, 0, 1).
  EXPECT_EQ(s.matrix.matrix(),
            Matrix::from_rows(Field::make(3), {{1, 0, 0, 1, 1, 0}, {0, 1, 0, 1, 2, 0}, {0, 0, 1, 1, 0, 1}}));
  EXPECT_EQ(s.column_scales[5], 2u);
}

TEST(MinDistance, SimplexValues) {
  {
    const PointTable t(Field::make(3), 3);
    const GeneratorMatrix g(simplex_generator(t));
    EXPECT_EQ(min_distance_hyperplane(characteristic_vector(g, t), incidence(t)), 9u);
    EXPECT_EQ(oracle::min_weight(g), 9u);
  }
  {
    const PointTable t(Field::make(2), 3);
    const GeneratorMatrix g(simplex_generator(t));
    EXPECT_EQ(min_distance_hyperplane(characteristic_vector(g, t), incidence(t)), 4u);
    EXPECT_EQ(oracle::min_weight(g), 4u);
  }
}

TEST(MinDistance, AgreesWithCodewordSearch) {
  Rng rng(12);
  for (auto [q, k] : std::vector<std::pair<unsigned, unsigned>>{{2, 3}, {3, 3}, {4, 2}, {5, 3}, {2, 4}}) {
    const auto f = Field::make(q);
    const PointTable t(f, k);
    const auto inc = incidence(t);
    for (int trial = 0; trial < 15; ++trial) {
      const auto g = oracle::random_full_rank(k + rng.below(7), k, f, rng);
      EXPECT_EQ(min_distance_hyperplane(characteristic_vector(g, t), inc), oracle::min_weight(g));
    }
  }
  EXPECT_EQ(oracle::min_weight(ternary_g1()), 3u);
}

TEST(RandomCode, DeterministicAndValid) {
  const auto f = Field::make(3);
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const auto a = random_code(10, 3, f, seed, false);
    const auto b = random_code(10, 3, f, seed, false);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.n(), 10u);
    EXPECT_EQ(a.k(), 3u);
    const PointTable t(f, 3);
    for (std::size_t j = 0; j < a.n(); ++j) {
      const Vector col = a.matrix().column(j);
      EXPECT_TRUE(t.index_of(col));
    }
  }
  EXPECT_NE(random_code(10, 3, f, 1, false), random_code(10, 3, f, 2, false));
}

TEST(RandomCode, ProjectiveHasDistinctPoints) {
  for (unsigned q : {2u, 3u, 4u}) {
    const auto f = Field::make(q);
    const PointTable t(f, 3);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto g = random_code(t.size() - 1, 3, f, seed, true);
      EXPECT_TRUE(characteristic_vector(g, t).is_projective());
    }
  }
  EXPECT_THROW(random_code(8, 3, Field::make(2), 1, true), std::invalid_argument);
  EXPECT_THROW(random_code(2, 3, Field::make(2), 1, false), std::invalid_argument);
}
