#pragma once

#include <stdexcept>
#include <string>

namespace posys {

struct EmptyInterior : std::runtime_error {
  explicit EmptyInterior(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionTooLarge : std::runtime_error {
  explicit DimensionTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct Decomposable : std::runtime_error {
  explicit Decomposable(const std::string& what) : std::runtime_error(what) {}
};

struct NotDecomposable : std::runtime_error {
  explicit NotDecomposable(const std::string& what) : std::runtime_error(what) {}
};

struct NotDependencyZero : std::runtime_error {
  explicit NotDependencyZero(const std::string& what) : std::runtime_error(what) {}
};

struct ConditionViolated : std::runtime_error {
  explicit ConditionViolated(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateExponents : std::runtime_error {
  explicit DegenerateExponents(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfRange : std::runtime_error {
  explicit OutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct Unsupported : std::runtime_error {
  explicit Unsupported(const std::string& what) : std::runtime_error(what) {}
};

struct InfiniteSolutions : std::runtime_error {
  explicit InfiniteSolutions(const std::string& what) : std::runtime_error(what) {}
};

struct NoSolutions : std::runtime_error {
  explicit NoSolutions(const std::string& what) : std::runtime_error(what) {}
};

struct NonSquare : std::runtime_error {
  explicit NonSquare(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace posys
