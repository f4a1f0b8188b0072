#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgequiv/lincode.hpp"

namespace pgequiv {

/// Malformed or invalid code file. what() reads "<source>:<line>: <message>".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/**
 * Reads generator matrices in the text code format:
 *
 *   # comment
 *   q k n [modulus]
 *   k lines of n integers in [0, q)
 *
 * Codes are separated by one or more blank lines. The modulus is required
 * only when it differs from the default for q (composite q); it is written
 * as a base-p digit integer including the leading term. Each matrix is
 * validated (rank k, no zero column).
 */
std::vector<GeneratorMatrix> read_codes(std::istream& in, const std::string& source = "<input>");
std::vector<GeneratorMatrix> read_codes_file(const std::string& path);

/// Writes one code; the modulus is emitted for every composite field.
void write_code(std::ostream& out, const GeneratorMatrix& g);

/// Writes codes separated by blank lines; read_codes parses the result back
/// to equal matrices.
void write_codes(std::ostream& out, const std::vector<GeneratorMatrix>& codes);

}  // namespace pgequiv
