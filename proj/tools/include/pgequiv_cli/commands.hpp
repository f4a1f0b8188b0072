#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgequiv/classify.hpp"
#include "pgequiv/equiv.hpp"

namespace pgequiv::cli {

inline constexpr int kExitEquivalent = 0;
inline constexpr int kExitInequivalent = 1;
inline constexpr int kExitError = 2;

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// Options with overrides from PGEQUIV_BUDGET (canonical search node budget)
/// and PGEQUIV_COSET_CAP (coset enumeration cap).
EquivOptions options_from_env();

FieldPtr make_field(unsigned q, std::optional<unsigned> modulus);

void cmd_points(unsigned k, const FieldPtr& field, std::ostream& out);
void cmd_chi(const std::vector<GeneratorMatrix>& codes, std::ostream& out);

/// Returns the process exit code (0 equivalent, 1 inequivalent).
int cmd_equiv(const GeneratorMatrix& g1, const GeneratorMatrix& g2, Algorithm algo, const EquivOptions& options,
              std::ostream& out);

struct ClassReport {
  Classification result;
  std::size_t total = 0;
  double seconds = 0;
  std::string digest;  // SHA-256 over the class lines
};

ClassReport run_classify(const std::vector<GeneratorMatrix>& codes, const ClassifyOptions& options);
void print_report(const ClassReport& report, Algorithm algo, std::ostream& out);

/// Deterministic batch: codes drawn one after another from one seeded stream.
std::vector<GeneratorMatrix> random_batch(std::size_t n, unsigned k, const FieldPtr& field, std::size_t count,
                                          std::uint64_t seed, bool projective);

void cmd_gen(std::size_t n, unsigned k, const FieldPtr& field, std::size_t count, std::uint64_t seed,
             bool projective, std::ostream& out);

void cmd_autgroup(const std::vector<GeneratorMatrix>& codes, const EquivOptions& options, std::ostream& out);

struct BenchRow {
  unsigned q = 3;
  unsigned k = 3;
  std::size_t n = 10;
  std::size_t count = 1000;
};

/// Parses "q:k:n:count".
BenchRow parse_bench_row(const std::string& text);

struct BenchResult {
  BenchRow row;
  std::size_t ceimpg_classes = 0;
  double ceimpg_seconds = 0;
  std::size_t cesimpg_classes = 0;
  double cesimpg_seconds = 0;
  std::size_t failures = 0;
};

BenchResult run_bench(const BenchRow& row, std::uint64_t seed, unsigned jobs, const EquivOptions& options);
void print_bench(const std::vector<BenchResult>& results, std::ostream& out);

/// Full command line entry point; returns the exit code.
int run(int argc, char** argv);

}  // namespace pgequiv::cli
