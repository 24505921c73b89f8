#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace selfdual {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  OriginIncluded,
  OutsideAmbient,
  ZeroNormal,
  DimensionTooLarge,
  EmptyInterior,
  OutsideDomain,
  RidgeMismatch,
  RidgeNotAutopolar,
  DominationViolated,
  NotUnit,
  AngleViolation,
  NotConvexChain,
  NoSphereIntersection,
  NegativeCoordinate,
  LengthConditionViolated,
  ZeroWeightPair,
  ZeroCoordinate,
  NotAutopolar,
  BudgetExhausted,
  UnsupportedDimension,
};

std::string_view toString(ErrorCode code);

// Library error with a machine-readable code and an optional numeric witness.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<double> witness = {},
        std::optional<double> value = std::nullopt)
      : std::runtime_error(message),
        code_(code),
        witness_(std::move(witness)),
        value_(value) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<double>& witness() const noexcept { return witness_; }
  const std::optional<double>& value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  std::vector<double> witness_;
  std::optional<double> value_;
};

// Thrown by budgeted numeric duals; best() is still an upper bound on f*.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(double best, std::size_t evaluations)
      : Error(ErrorCode::BudgetExhausted,
              "evaluation budget exhausted before convergence", {}, best),
        best_(best),
        evaluations_(evaluations) {}

  double best() const noexcept { return best_; }
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  double best_;
  std::size_t evaluations_;
};

}  // namespace selfdual
