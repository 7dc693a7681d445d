#include "mvrvfl/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <cmath>

namespace mvrvfl::linalg {

namespace {

constexpr int kMaxRefineSteps = 4;

// Polishes x against the factorization until the compensated residual stops
// improving. Keeps the best iterate seen.
template <typename SolveFn>
Matrix refine(const Matrix& a, const Matrix& b, Matrix x, SolveFn solve) {
  Matrix r;
  compensated_residual(a, x, b, r);
  double best = r.norm();
  Matrix best_x = x;
  const double target = 1e-16 * (1.0 + b.norm());
  for (int it = 0; it < kMaxRefineSteps && best > target; ++it) {
    x += solve(r);
    compensated_residual(a, x, b, r);
    const double now = r.norm();
    if (!(now < best)) break;
    best = now;
    best_x = x;
  }
  return best_x;
}

void check_shapes(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows() || a.rows() == 0) {
    throw std::invalid_argument("solver: shape mismatch");
  }
}

}  // namespace

void compensated_residual(const Matrix& a, const Matrix& x, const Matrix& b,
                          Matrix& r) {
  r.resize(b.rows(), b.cols());
  for (Eigen::Index c = 0; c < b.cols(); ++c) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      double sum = 0.0;
      double comp = 0.0;
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        const double p = a(i, j) * x(j, c);
        const double p_err = std::fma(a(i, j), x(j, c), -p);
        const double t = sum + p;
        const double z = t - sum;
        const double s_err = (sum - (t - z)) + (p - z);
        sum = t;
        comp += p_err + s_err;
      }
      const double t = b(i, c) - sum;
      const double z = t - b(i, c);
      const double s_err = (b(i, c) - (t - z)) + (-sum - z);
      r(i, c) = t + (s_err - comp);
    }
  }
}

Matrix solve_spd(const Matrix& a, const Matrix& b, double* condition) {
  check_shapes(a, b);
  Eigen::LDLT<Matrix> ldlt(a);
  const double rcond = ldlt.rcond();
  if (condition) *condition = rcond > 0.0 ? 1.0 / rcond : HUGE_VAL;
  // rcond alone misses exact rank deficiency: LDLT zeroes tiny pivots and
  // returns a consistent pseudo-solution, so also require the pivot spread to
  // stay within working precision.
  const auto& d = ldlt.vectorD();
  const double dmax = d.cwiseAbs().maxCoeff();
  const double dmin = d.cwiseAbs().minCoeff();
  if (ldlt.info() != Eigen::Success || !(rcond > 1e-15) || !(dmax > 0.0) ||
      !(dmin > 1e-15 * dmax)) {
    throw SolveError("symmetric solve failed: matrix is singular or "
                     "numerically indefinite",
                     rcond > 0.0 ? 1.0 / rcond : HUGE_VAL);
  }
  Matrix x = refine(a, b, ldlt.solve(b),
                    [&](const Matrix& r) { return Matrix(ldlt.solve(r)); });
  if (!x.allFinite()) {
    throw SolveError("symmetric solve produced non-finite values",
                     1.0 / rcond);
  }
  return x;
}

Matrix solve_square(const Matrix& a, const Matrix& b, double* condition) {
  check_shapes(a, b);
  // Symmetric Jacobi equilibration; unit scale where the diagonal vanishes.
  const Eigen::Index n = a.rows();
  Vector s(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = std::abs(a(i, i));
    s(i) = d > 0.0 ? 1.0 / std::sqrt(d) : 1.0;
  }
  const Matrix scaled = s.asDiagonal() * a * s.asDiagonal();
  Eigen::PartialPivLU<Matrix> lu(scaled);
  const double rcond = lu.rcond();
  if (condition) *condition = rcond > 0.0 ? 1.0 / rcond : HUGE_VAL;
  if (!std::isfinite(rcond) || !(rcond > 1e-15)) {
    throw SolveError(
        "block solve failed: matrix is singular or near-singular "
        "(condition estimate " +
            std::to_string(rcond > 0.0 ? 1.0 / rcond : HUGE_VAL) + ")",
        rcond > 0.0 ? 1.0 / rcond : HUGE_VAL);
  }
  // Solve in original coordinates; the factorization acts on the scaled
  // matrix, so each refinement pass maps residuals through the scaling.
  auto scaled_solve = [&](const Matrix& rhs) {
    return Matrix(s.asDiagonal() *
                  lu.solve(Matrix(s.asDiagonal() * rhs)));
  };
  Matrix x = refine(a, b, scaled_solve(b), scaled_solve);
  if (!x.allFinite()) {
    throw SolveError("block solve produced non-finite values", 1.0 / rcond);
  }
  return x;
}

}  // namespace mvrvfl::linalg
