#pragma once

#include <stdexcept>

namespace pgequiv {

/// A computation stopped because it would exceed a size or search budget.
/// Never means "no": callers either fall back to another method or report it.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pgequiv
