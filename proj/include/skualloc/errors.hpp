#pragma once

#include <stdexcept>
#include <string>

namespace skualloc {

// CSV header does not match the documented schema.
struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

// A data row could not be parsed; message carries the 1-based line number.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
        line_number(line) {}
  int line_number;
};

struct ArgumentError : std::invalid_argument {
  explicit ArgumentError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Instance dimensions are inconsistent (e.g. similarity matrix vs SKU count).
struct BuildError : std::runtime_error {
  explicit BuildError(const std::string& msg) : std::runtime_error(msg) {}
};

// Capacity cannot be satisfied even after removing every removable SKU.
struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace skualloc
