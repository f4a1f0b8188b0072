#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pgequiv/gfmatrix.hpp"
#include "pgequiv/permutation.hpp"
#include "pgequiv/projgeom.hpp"

namespace pgequiv {

/// Generator matrix of a full-length [n, k]_q code: rank k, no zero column.
/// Entries are kept as given; algorithms normalize columns where needed.
class GeneratorMatrix {
 public:
  /// Throws std::domain_error if the rank is below the row count or a
  /// column is zero.
  explicit GeneratorMatrix(Matrix m);

  const Matrix& matrix() const { return m_; }
  const FieldPtr& field_ptr() const { return m_.field_ptr(); }
  const Field& field() const { return m_.field(); }
  unsigned k() const { return static_cast<unsigned>(m_.rows()); }
  std::size_t n() const { return m_.cols(); }

  friend bool operator==(const GeneratorMatrix&, const GeneratorMatrix&) = default;

 private:
  Matrix m_;
};

/// chi[u] = number of columns representing point u of PG(k-1, q).
struct CharacteristicVector {
  unsigned k = 0;
  unsigned q = 0;
  std::vector<std::uint32_t> chi;

  std::size_t length() const;  // sum of entries, the code length n
  bool is_projective() const;
  friend bool operator==(const CharacteristicVector&, const CharacteristicVector&) = default;
};

/// Point index (into `table`) of every column of g.
std::vector<std::size_t> column_points(const GeneratorMatrix& g, const PointTable& table);

CharacteristicVector characteristic_vector(const GeneratorMatrix& g, const PointTable& table);

/// Columns are the table points repeated chi[u] times, in index order.
/// Throws std::domain_error when the support does not span GF(q)^k.
GeneratorMatrix code_from_chi(const CharacteristicVector& chi, const PointTable& table);

/**
 * Systematic form (I_k | E) with normalized E columns.
 *
 * Rows are processed top to bottom; row i pivots on its first nonzero
 * column after eliminating earlier pivots, so columns that already form an
 * identity are kept in place and no rows are swapped. With P the column
 * map (original column j goes to position column_map(j)):
 *
 *   matrix column column_map(j) == column_scales[j] * (row_transform * g_j)
 */
struct SystematicForm {
  GeneratorMatrix matrix;
  Permutation column_map;
  Matrix row_transform;
  std::vector<Elem> column_scales;
};

SystematicForm systematic_form(const GeneratorMatrix& g);

/// d = n - max over hyperplanes of the number of columns (with
/// multiplicity) on that hyperplane. A result of 0 means the points lie in
/// a hyperplane, i.e. chi does not describe a dimension-k code.
std::size_t min_distance_hyperplane(const CharacteristicVector& chi, const IncidenceMatrix& inc);

/// Random full-length code with normalized columns drawn uniformly from
/// PG(k-1, q) (distinct points when `projective`). Rank-deficient draws are
/// rejected. Deterministic in `seed`.
GeneratorMatrix random_code(std::size_t n, unsigned k, const FieldPtr& field, std::uint64_t seed, bool projective);

class Rng;
GeneratorMatrix random_code(std::size_t n, unsigned k, const FieldPtr& field, Rng& rng, bool projective);

}  // namespace pgequiv
