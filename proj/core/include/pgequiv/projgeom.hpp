#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pgequiv/bitmatrix.hpp"
#include "pgequiv/gfield.hpp"
#include "pgequiv/gfmatrix.hpp"

namespace pgequiv {

/// Number of points of PG(r, q): (q^(r+1) - 1) / (q - 1).
std::uint64_t theta(unsigned r, unsigned q);

/**
 * The points of PG(k-1, q), each as its normalized coordinate vector
 * (first nonzero coordinate 1), sorted lexicographically with the leftmost
 * coordinate most significant and coordinates compared by their integer
 * encoding.
 *
 * Indices are 0-based; user-facing listings add one.
 */
class PointTable {
 public:
  static constexpr std::uint64_t kMaxPoints = std::uint64_t{1} << 22;

  /// Throws ResourceError when theta(k-1, q) exceeds kMaxPoints.
  PointTable(FieldPtr field, unsigned k);

  const FieldPtr& field_ptr() const { return field_; }
  const Field& field() const { return *field_; }
  unsigned k() const { return k_; }
  std::size_t size() const { return size_; }

  std::span<const Elem> point(std::size_t i) const { return {coords_.data() + i * k_, k_}; }

  /// Index of a normalized vector; nullopt if v is zero or not normalized.
  std::optional<std::size_t> index_of(std::span<const Elem> v) const;

  /// Index of the point represented by any nonzero vector.
  /// Throws std::domain_error for the zero vector.
  std::size_t index_of_point(std::span<const Elem> v) const;

 private:
  FieldPtr field_;
  unsigned k_;
  std::size_t size_;
  std::vector<std::uint64_t> block_start_;  // block_start_[l]: first index with leading position l
  std::vector<Elem> coords_;
};

inline PointTable point_table(FieldPtr field, unsigned k) { return PointTable(std::move(field), k); }

/// k x theta matrix whose columns are the points in table order.
Matrix simplex_generator(const PointTable& table);

/// Entry (i, j) is 1 iff u_i . u_j != 0, i.e. point j lies off the
/// hyperplane with coordinate vector u_i. Rows and columns share the
/// point order of the table.
struct IncidenceMatrix {
  unsigned k = 0;
  unsigned q = 0;
  BitMatrix bits;
};

inline constexpr std::size_t kMaxIncidencePoints = 20'000;

/// Throws ResourceError above kMaxIncidencePoints points.
IncidenceMatrix incidence(const PointTable& table);

}  // namespace pgequiv
