#pragma once

#include <stdexcept>
#include <string>

namespace singmat {

// Error taxonomy shared across the library. The CLI maps these onto its
// exit-code contract (input errors -> 2, cap/budget -> 3).

struct ZeroInverseError : std::domain_error {
  ZeroInverseError() : std::domain_error("zero has no multiplicative inverse") {}
};

struct ZeroVectorError : std::invalid_argument {
  explicit ZeroVectorError(const std::string& what) : std::invalid_argument(what) {}
};

struct ShapeError : std::invalid_argument {
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

struct SingularTransformError : std::invalid_argument {
  explicit SingularTransformError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when a border cannot be completed to a full-rank matrix; callers
// that need the decidable predicate use try_complete_to_full_rank instead.
struct NoCompletionError : std::runtime_error {
  explicit NoCompletionError(const std::string& what) : std::runtime_error(what) {}
};

struct CapExceededError : std::runtime_error {
  explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetExceededError : std::runtime_error {
  explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace singmat
