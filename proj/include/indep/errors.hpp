#pragma once

#include <stdexcept>
#include <string>

namespace indep {

/// Malformed DIMACS or library text.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A size guard refused the request (brute force too large, struct too wide, ...).
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace indep
