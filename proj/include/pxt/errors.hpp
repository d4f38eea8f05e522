#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pxt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph, plan or traffic text. `line()` is 1-based; 0 when the
/// problem is not tied to a single line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// No route could be found for a demand (disconnected graph, exhausted
/// capacity, or no admissible protection path).
class RoutingError : public Error {
 public:
  RoutingError(std::uint32_t demand, const std::string& what)
      : Error("demand " + std::to_string(demand) + ": " + what), demand_(demand) {}
  std::uint32_t demand() const { return demand_; }

 private:
  std::uint32_t demand_;
};

/// The constrained search ran out of its partial-path or work budget.
class ResourceLimitError : public Error {
 public:
  ResourceLimitError(std::uint32_t demand, const std::string& what)
      : Error("demand " + std::to_string(demand) + ": " + what), demand_(demand) {}
  std::uint32_t demand() const { return demand_; }

 private:
  std::uint32_t demand_;
};

}  // namespace pxt
