#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvlab {

/// Precondition violated by an argument (bad index, mismatched dimensions, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// u and v span no plane.
class DegeneratePlaneError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Denominator of the conformal coupling vanishes.
class SingularCouplingError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Input exceeds the sizes the brute-force contractions are meant for.
class SizeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Error raised while reading a construction expression. Carries the byte
/// offset into the source text and, for syntax errors, the tokens that would
/// have been accepted there.
class DslError : public std::runtime_error {
 public:
  enum class Kind { Syntax, InvalidDimension, DimensionMismatch, CodimRange, UnknownFlag };

  DslError(Kind kind, std::size_t offset, std::string message,
           std::vector<std::string> expected = {})
      : std::runtime_error("at byte " + std::to_string(offset) + ": " + message),
        kind_(kind),
        offset_(offset),
        expected_(std::move(expected)) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  Kind kind_;
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// Asserted topology facts disagree with derived ones (or with each other).
class FactConflictError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace curvlab
