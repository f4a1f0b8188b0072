#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "pgequiv/bmcanon.hpp"
#include "pgequiv/gfmatrix.hpp"
#include "pgequiv/lincode.hpp"
#include "pgequiv/perm_group.hpp"
#include "pgequiv/projgeom.hpp"

namespace pgequiv {

/// Point table and (lazily built) incidence matrix for one (field, k),
/// shared between threads.
class Geometry {
 public:
  Geometry(FieldPtr field, unsigned k);

  const PointTable& points() const { return table_; }
  /// Built on first use; throws ResourceError above kMaxIncidencePoints.
  const IncidenceMatrix& incidence() const;

 private:
  PointTable table_;
  mutable std::once_flag once_;
  mutable IncidenceMatrix incidence_;
};

/// Process-wide cache keyed by field and dimension.
std::shared_ptr<const Geometry> geometry(const FieldPtr& field, unsigned k);

/**
 * Certificate that two codes are equivalent:
 *
 *   Q * G2 == rho(G1 * P_sigma * diag(lambdas))
 *
 * where rho applies the field automorphism x -> x^(p^rho) entrywise.
 * sigma(j) is the position in G2 of column j of G1, so column s of
 * G1 * P_sigma is column sigma^-1(s) of G1; lambdas are indexed by the
 * position s.
 */
struct EquivalenceWitness {
  Permutation sigma;
  std::vector<Elem> lambdas;
  unsigned rho = 0;
  Matrix q;
};

bool verify_witness(const GeneratorMatrix& g1, const GeneratorMatrix& g2, const EquivalenceWitness& w);

/// Inverse witness: certifies g2 ~ g1 given a witness for g1 ~ g2.
EquivalenceWitness invert_witness(const GeneratorMatrix& g1, const GeneratorMatrix& g2, const EquivalenceWitness& w);

enum class VerdictKind { kEquivalent, kInequivalent, kEquivalentByCeimpg };

struct Verdict {
  VerdictKind kind = VerdictKind::kInequivalent;
  /// Present iff kind == kEquivalent.
  std::optional<EquivalenceWitness> witness;
  /// CEIMPG verdicts on unlifted geometries: point index map (table order)
  /// taking the points of the first code onto those of the second.
  std::optional<Permutation> point_map;
  bool used_ceimpg_fallback = false;

  bool equivalent() const { return kind != VerdictKind::kInequivalent; }
};

const char* to_string(VerdictKind kind);

struct EquivOptions {
  SearchOptions search;
  /// Largest automorphism group whose coset is enumerated element by element.
  std::uint64_t coset_cap = 1'000'000;
  std::uint64_t span_cap = kDefaultSpanCap;
  /// Drop all-ones rows from the shortened matrix.
  bool strip_full_rows = true;
  /// Let cesimpg_equiv delegate to CEIMPG when the coset is too large.
  bool allow_ceimpg_fallback = true;
};

// ---------------------------------------------------------------------------
// CEIMPG: full point/hyperplane incidence with the characteristic vector.

/// theta x theta incidence rows (color 0) plus the support of chi as an
/// extra row (color 1); column u is colored chi[u].
ColoredBinaryMatrix build_ceimpg_matrix(const CharacteristicVector& chi, const IncidenceMatrix& inc);

/**
 * For k = 2 and q >= 5 the incidence matrix of PG(1, q) has the full
 * symmetric group as automorphisms, far more than the collineations.
 * Such codes are compared after appending a direct summand [1]: the
 * generator matrix [[G, 0], [0, 1]] has k = 3, and direct-sum
 * decompositions are unique up to equivalence.
 */
bool ceimpg_needs_lift(unsigned k, unsigned q);
GeneratorMatrix ceimpg_lift(const GeneratorMatrix& g);

/// Canonical CEIMPG serialization; equal keys <=> equivalent codes.
std::string ceimpg_key(const GeneratorMatrix& g, const EquivOptions& options = {});

Verdict ceimpg_equiv(const GeneratorMatrix& g1, const GeneratorMatrix& g2, const EquivOptions& options = {});

// ---------------------------------------------------------------------------
// CESIMPG: shortened matrix N(G_{q,k}^T G) and monomial recovery.

/// Row i, column j is 1 iff u_i . g_j != 0. Columns carry the multiplicity
/// of their point when the code is not projective (else all 0).
ColoredBinaryMatrix build_shortened(const GeneratorMatrix& g, const PointTable& table, bool strip_full_rows = false);

enum class LiftStatus { kLifted, kNoLift, kBudgetExceeded };

struct LiftResult {
  LiftStatus status = LiftStatus::kNoLift;
  Matrix q;
  std::vector<Elem> lambdas;
};

/**
 * Finds Q and nonzero lambdas with Q * G2 == rho(G1 * P_sigma * D), i.e. a
 * witness with the given sigma and rho, or reports that none exists.
 *
 * G2 need not be systematic: with T * rho^-1(G2) == R in reduced echelon
 * form (pivot columns J), the pivot columns fix the columns of Q * T^-1 in
 * terms of the lambdas, and every other column of R yields k homogeneous
 * equations. An all-nonzero vector of the solution space is then searched
 * for.
 */
LiftResult monomial_from_sigma(const GeneratorMatrix& g1, const GeneratorMatrix& g2, const Permutation& sigma,
                               unsigned rho, std::uint64_t span_cap = kDefaultSpanCap);

Verdict cesimpg_equiv(const GeneratorMatrix& g1, const GeneratorMatrix& g2, const EquivOptions& options = {});

/**
 * Precomputed CESIMPG data of one code. Columns showing the same point are
 * merged into one column colored by the multiplicity; permuting such
 * columns among themselves always lifts to a code automorphism, so only
 * the merged matrix is canonicalized.
 */
struct ShortenedCode {
  GeneratorMatrix code;
  std::shared_ptr<const Geometry> geometry;
  std::vector<std::uint32_t> column_class;              // column -> merged column
  std::vector<std::vector<std::uint32_t>> class_columns;  // merged column -> columns, ascending
  std::vector<std::size_t> class_points;                  // merged column -> point index
  ColoredBinaryMatrix merged;
  CanonResult canon;

  /// Serialized canonical merged matrix with (q, k, n) prefix.
  std::string key() const;
};

ShortenedCode prepare_shortened(const GeneratorMatrix& g, const EquivOptions& options = {});

Verdict cesimpg_equiv(const ShortenedCode& a, const ShortenedCode& b, const EquivOptions& options = {});

/// Expands a permutation of merged columns into a column permutation,
/// pairing the columns of each class in ascending order.
Permutation expand_merged(const ShortenedCode& a, const ShortenedCode& b, const Permutation& merged_sigma);

// ---------------------------------------------------------------------------
// Code automorphisms.

struct CodeAutomorphism {
  Matrix q;
  Permutation tau;
  std::vector<Elem> lambdas;  // Q * G == G * P_tau * diag(lambdas)
};

struct AutomorphismReport {
  std::vector<CodeAutomorphism> generators;
  /// Order of Aut(N(A_G)) acting on the n columns.
  GroupOrder h1_order = 1;
  /// Order of its subgroup of column permutations that lift.
  std::optional<GroupOrder> liftable_order;
  /// Number of indecomposable direct summands of the code.
  std::size_t components = 1;
  /// Monomial automorphism group order (q-1)^components * liftable_order;
  /// absent for composite fields and for incomplete reports.
  std::optional<GroupOrder> code_order;
  /// Some generator of H1 failed to lift and H1 was too large to enumerate.
  bool partial = false;
  bool composite_field = false;
};

AutomorphismReport code_aut_group(const GeneratorMatrix& g, const EquivOptions& options = {});

/// Dimension of { (Q, d) : Q g_j = d_j g_j for all j }, which equals the
/// number of indecomposable direct summands.
std::size_t count_components(const GeneratorMatrix& g);

/// Applies the field automorphism x -> x^(p^i) entrywise.
Matrix apply_frobenius(const Matrix& m, unsigned i);

}  // namespace pgequiv
