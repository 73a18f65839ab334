#pragma once

#include <stdexcept>
#include <string>

namespace wristleak {

// Input data or an argument violates a documented precondition or invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// The pipeline reached an internally contradictory state, e.g. tracing
// eliminated every candidate pair at some position.
class InconsistencyError : public std::runtime_error {
 public:
  explicit InconsistencyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wristleak
