#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace labelrank {

/// Dense internal node identifier in [0, n).
using node_id = std::uint32_t;

/// Base class for all errors raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input. `line()` is 1-based, or 0 when the problem is not tied
/// to a particular line (e.g. empty input).
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t line)
      : error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace labelrank
