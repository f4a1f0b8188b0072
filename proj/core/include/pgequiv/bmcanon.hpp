#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgequiv/bitmatrix.hpp"
#include "pgequiv/perm_group.hpp"
#include "pgequiv/permutation.hpp"

namespace pgequiv {

/// Binary matrix with row and column colors. Rows form a multiset: two
/// matrices are isomorphic when a color-preserving column permutation maps
/// the colored rows of one onto the colored rows of the other.
struct ColoredBinaryMatrix {
  BitMatrix bits;
  std::vector<std::int64_t> row_colors;
  std::vector<std::int64_t> col_colors;

  static ColoredBinaryMatrix uncolored(BitMatrix bits);

  std::size_t rows() const { return bits.rows(); }
  std::size_t cols() const { return bits.cols(); }

  /// Column j of *this becomes column p(j) of the result; rows keep their order.
  ColoredBinaryMatrix permute_columns(const Permutation& p) const;

  friend bool operator==(const ColoredBinaryMatrix&, const ColoredBinaryMatrix&) = default;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 20'000'000;

struct SearchOptions {
  std::uint64_t node_budget = kDefaultNodeBudget;
};

struct CanonResult {
  /// Rows sorted by (color, bits) with column 0 most significant.
  ColoredBinaryMatrix canonical;
  /// Original column j sits at canonical position labeling(j).
  Permutation labeling;
  /// Generators of the automorphism group (column permutations).
  std::vector<Permutation> generators;
  GroupOrder group_order = 1;
  /// Columns individualized along the first search path; a base for the
  /// generators, which form a strong generating set relative to it.
  std::vector<std::uint32_t> base;
  std::uint64_t nodes = 0;
};

/**
 * Canonical form, automorphism generators and exact group order.
 *
 * The search alternates equitable refinement of the row and column
 * partitions with individualization of one column from the first largest
 * non-singleton column cell. Leaves are ordered by the sequence of
 * refinement invariants along their path, then by the leaf matrix; the
 * least leaf is the canonical one. Automorphisms found at equal leaves
 * prune equivalent subtrees.
 *
 * Throws ResourceError once more than options.node_budget nodes are visited.
 */
CanonResult canonical_form(const ColoredBinaryMatrix& m, const SearchOptions& options = {});

/// Column permutation mapping a onto b, read off two canonical results.
std::optional<Permutation> isomorphism_from(const CanonResult& a, const CanonResult& b);

/// Column permutation sigma with a.permute_columns(sigma) ~ b, if any.
std::optional<Permutation> is_isomorphic(const ColoredBinaryMatrix& a, const ColoredBinaryMatrix& b,
                                         const SearchOptions& options = {});

/// True iff a.permute_columns(p) and b have equal column colors and equal
/// colored row multisets.
bool maps_onto(const ColoredBinaryMatrix& a, const ColoredBinaryMatrix& b, const Permutation& p);

/// Text form of a canonical matrix, used as a deduplication key: a header
/// "R C", a line "cols" followed by the column colors, then one
/// "<color> <bits>" line per row in canonical (sorted) order.
std::string serialize(const ColoredBinaryMatrix& canonical);

}  // namespace pgequiv
