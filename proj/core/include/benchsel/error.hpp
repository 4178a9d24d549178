#pragma once

#include <stdexcept>
#include <string>

namespace benchsel {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid arguments or out-of-domain inputs (k > n, non-finite bounds, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Structurally malformed input file (missing header, wrong columns, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A cell or token that cannot be parsed; names row and column.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Consistency violation inside otherwise well-formed data
/// (duplicate keys, ragged run counts, missing coverage).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// Tables that should line up (keys / columns) do not.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

/// A landscape feature could not be computed on this design.
class FeatureError : public Error {
 public:
  using Error::Error;
};

/// Degenerate data made a feature mathematically undefined
/// (zero variance, constant column, all-equal fitness).
class DegenerateError : public FeatureError {
 public:
  using FeatureError::FeatureError;
};

/// No feasible choice under the stated constraints (e.g. empty k range).
class ConstraintError : public Error {
 public:
  using Error::Error;
};

}  // namespace benchsel
