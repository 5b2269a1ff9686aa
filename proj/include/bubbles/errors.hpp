#pragma once

#include <stdexcept>
#include <string>

namespace bubbles {

/// Thrown when a request would exceed a configured resource guard
/// (e.g. exhaustive enumeration beyond the allowed chord count).
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain where a formula is meaningful.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A coefficient was requested beyond the computed truncation orders.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Malformed textual input (CSV, b-file, diagram text form).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exactness or consistency assertion failed. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bubbles
