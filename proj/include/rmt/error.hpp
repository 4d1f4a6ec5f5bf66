#pragma once

#include <stdexcept>
#include <string>

namespace rmt {

// Raised when a computed quantity fails an internal consistency check
// (imaginary residue, degenerate variance, cancellation refusal).
class ConsistencyError : public std::runtime_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rmt
