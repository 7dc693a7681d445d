#pragma once

// Reference implementations used by the tests. Everything here is written
// with plain loops, textbook algorithms and locally duplicated constants so
// that agreement with the library is evidence, not tautology. Shared library
// types (Matrix, PssmProfile, enum tags) are used only as data carriers.

#include "mvrvfl/features.hpp"
#include "mvrvfl/model.hpp"
#include "mvrvfl/sequence.hpp"
#include "mvrvfl/types.hpp"

#include <string>
#include <vector>

namespace oracle {

using mvrvfl::Matrix;
using mvrvfl::Vector;

// Dense solve via quad-precision Gaussian elimination with partial pivoting,
// plus two quad-precision refinement passes against the original matrix.
Matrix solve_gepp(const Matrix& a, const Matrix& b);

// Symmetric eigendecomposition by the cyclic Jacobi rotation method.
// Returns eigenvalues in descending order with matching eigenvector columns.
void jacobi_symmetric(const Matrix& a, Vector& values, Matrix& vectors);

// Sequence descriptors recomputed from scratch (own group table, own
// standardization, own index bookkeeping).
Vector mcd(const std::string& residues);
Vector nmbac(const std::string& residues);

// Profile descriptors recomputed with explicit row-index lists and loops.
Vector pssm_ab(const mvrvfl::PssmProfile& profile);
Vector psepssm(const mvrvfl::PssmProfile& profile);
Vector pssm_dwt(const mvrvfl::PssmProfile& profile, mvrvfl::Wavelet wavelet);

// One analysis step on an explicitly materialized reflected extension.
void dwt_step(const std::vector<double>& signal, mvrvfl::Wavelet wavelet,
              std::vector<double>& approx, std::vector<double>& detail);

// Binned mutual information using map-style counting over observed pairs.
double mi_binned(const std::vector<double>& a, const std::vector<double>& b,
                 int bins);
double mi_label(const std::vector<double>& a, const std::vector<int>& y,
                int bins);

// Greedy difference-criterion ranking, recomputing every redundancy term
// from scratch at every step. Objectives within a relative 1e-12 of the step
// minimum count as tied and the lowest index wins, matching the documented
// selection semantics.
std::vector<int> mrmr_order(const Matrix& x, const std::vector<int>& y,
                            int bins);

// AUC as the explicit count over positive/negative pairs, ties worth 1/2.
double auc_pairs(const std::vector<int>& truth,
                 const std::vector<double>& scores);

// Mid-ranks of one row, rank 1 for the largest value.
std::vector<double> ranks_descending(const std::vector<double>& row);

// Hidden layer recomputed elementwise: act(x W + bias) with scalar loops.
Matrix enhance_naive(const Matrix& x, const Matrix& weights,
                     const Eigen::RowVectorXd& bias, mvrvfl::Activation act);

// Both coupled-system diagnostics recomputed with per-sample loops.
struct BoundTerms {
  double epsilon_term = 0.0;
  double k_m = 0.0;
  double n_norm_col[2] = {0.0, 0.0};
  double empirical_col[2] = {0.0, 0.0};
  double consistency_col[2] = {0.0, 0.0};
  double mean_slack_a = 0.0;
  double mean_slack_b = 0.0;
  double generalization = 0.0;
};
BoundTerms bound_terms(const Matrix& z1, const Matrix& z2, const Matrix& beta1,
                       const Matrix& beta2, const std::vector<int>& y,
                       double confidence_theta, double delta);

}  // namespace oracle
