#pragma once

#include <stdexcept>
#include <string>

namespace fairclust {

// Malformed or inconsistent input (bad JSON, invalid instance, bad argument).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured enumeration or iteration cap would be exceeded.
class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure inside a solver; indicates a bug on valid models.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fairclust
