#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace netfar {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr std::uint32_t kInvalidId = std::numeric_limits<std::uint32_t>::max();

// Absolute tolerance for every tie decision on distances (dominance,
// farthest-set membership, center-set membership).
inline constexpr double kTieTolerance = 1e-9;

// A lambda this close to 0 or 1 is snapped onto the endpoint.
inline constexpr double kSnapTolerance = 1e-12;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text; carries the 1-based line number (0 when not tied to a line).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Structurally invalid network (weights, duplicates, connectivity).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotCactusError : public Error {
 public:
  using Error::Error;
};

// The structure does not support this network class.
class ClassError : public Error {
 public:
  using Error::Error;
};

class InvalidPointError : public Error {
 public:
  using Error::Error;
};

}  // namespace netfar
