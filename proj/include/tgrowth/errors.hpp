#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tgrowth {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands belong to different fields.
class SpecMismatch : public Error {
 public:
  using Error::Error;
};

/// Operands belong to different groups, or a subgroup tag does not fit the group.
class GroupMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Invalid field spec, generator descriptor, or element.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A configured cap was exceeded. `partial_size` is the size reached before
/// the computation stopped.
class ResourceLimit : public Error {
 public:
  ResourceLimit(const std::string& what, std::size_t partial_size)
      : Error(what + " (partial size " + std::to_string(partial_size) + ")"),
        partial_size_(partial_size) {}

  std::size_t partial_size() const noexcept { return partial_size_; }

 private:
  std::size_t partial_size_;
};

}  // namespace tgrowth
