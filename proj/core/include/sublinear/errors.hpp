#pragma once

#include <stdexcept>
#include <string>

namespace sublinear {

/// A declared system violates one of the structural hypotheses (growth,
/// lower envelope, positivity ball, ...). The message names the hypothesis.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A linear or nonlinear solve could not deliver its contract.
class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The nonlinear iteration stopped at max_iters before both tolerances held.
class NotConverged : public SolveError {
 public:
  using SolveError::SolveError;
};

/// A runtime-checked mathematical invariant failed (maximum principle,
/// monotone trace, sup-norm bound). These indicate bugs or inconsistent
/// input, never tolerance noise.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(std::string invariant, const std::string& detail)
      : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

}  // namespace sublinear
