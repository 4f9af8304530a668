#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hadwiger {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid graph construction (bad endpoint, self-loop, n = 0).
class GraphError : public Error {
 public:
  using Error::Error;
};

/// A configured size or enumeration cap would be exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Vertex or blow-up coordinate out of range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Certificate rejected by a validator.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// No candidate satisfies the requested constraints.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace hadwiger
