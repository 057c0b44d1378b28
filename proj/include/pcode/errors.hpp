#pragma once

#include <stdexcept>
#include <string>

namespace pcode {

/// Always-on validation; violations indicate bad inputs or broken invariants.
inline void require(bool condition, const std::string& message) {
  if (!condition) throw std::runtime_error(message);
}

}  // namespace pcode
