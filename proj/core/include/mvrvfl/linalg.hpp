#pragma once

#include "mvrvfl/types.hpp"

#include <stdexcept>
#include <string>

namespace mvrvfl::linalg {

// Thrown when a factorization meets a singular or numerically hopeless
// matrix; carries the 1/rcond estimate from the factorization.
class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate(condition_estimate) {}
  double condition_estimate;
};

// Solutions are polished by iterative refinement whose residuals are
// evaluated in twofold working precision (compensated dot products), so the
// returned x is essentially the correctly rounded solution even for badly
// conditioned systems. `condition` (optional) receives the 1/rcond estimate
// of the equilibrated matrix; callers treat estimates above 1e12 as a
// warning. Estimates above 1e15 (or non-finite solves) throw SolveError.
inline constexpr double kConditionWarnThreshold = 1e12;

// Symmetric positive definite systems, LDLT route.
Matrix solve_spd(const Matrix& a, const Matrix& b,
                 double* condition = nullptr);

// General square systems: symmetric Jacobi equilibration + partially
// pivoted LU.
Matrix solve_square(const Matrix& a, const Matrix& b,
                    double* condition = nullptr);

// r = b - a * x with error-free product/sum transformations.
void compensated_residual(const Matrix& a, const Matrix& x, const Matrix& b,
                          Matrix& r);

}  // namespace mvrvfl::linalg
