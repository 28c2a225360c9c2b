#pragma once

#include <stdexcept>
#include <string>

namespace parthom {

/// A computation exceeded its configured memory or size budget. Distinct from
/// a mathematical failure so callers can report it separately.
class ResourceAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace parthom
