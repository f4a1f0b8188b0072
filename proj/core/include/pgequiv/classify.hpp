#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pgequiv/equiv.hpp"

namespace pgequiv {

enum class Algorithm { kCeimpg, kCesimpg, kAuto };

/// Parses "ceimpg", "cesimpg" or "auto"; throws std::invalid_argument.
Algorithm parse_algorithm(const std::string& name);
const char* to_string(Algorithm algo);

struct ClassifyOptions {
  Algorithm algorithm = Algorithm::kCeimpg;
  /// Worker threads; 0 means one per hardware thread.
  unsigned jobs = 1;
  EquivOptions equiv;
};

struct CodeClass {
  std::size_t representative = 0;     // first member in input order
  std::vector<std::size_t> members;   // ascending, 0-based
  std::string key;                    // canonical key shared by the class
};

struct ItemFailure {
  std::size_t index = 0;
  std::string message;
};

struct Classification {
  std::vector<CodeClass> classes;  // ordered by representative
  std::vector<ItemFailure> failures;
};

/**
 * Partitions codes into equivalence classes.
 *
 * With CEIMPG the class key is the canonical CEIMPG serialization. With
 * CESIMPG (and auto) codes are first bucketed by their canonical shortened
 * matrix, which equivalent codes share; within a bucket each code is
 * compared against the class representatives found so far, and the class
 * key is the bucket key followed by the class ordinal within the bucket.
 *
 * Items whose computation fails (budget exceeded, parameter mismatch) are
 * reported in `failures` and left out of every class. The result does not
 * depend on `jobs`.
 */
Classification classify(const std::vector<GeneratorMatrix>& codes, const ClassifyOptions& options = {});

}  // namespace pgequiv
