#pragma once

#include "mvrvfl/types.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace mvrvfl {

enum class Activation { sigmoid, relu, tanh };

Activation parse_activation(const std::string& name);
std::string activation_name(Activation a);
double apply_activation(Activation a, double v);

// Frozen random projection: weights and bias drawn uniformly from [-1, 1),
// weights in row-major order first, then the bias row. The single bias row
// broadcasts to every sample.
struct RandomFeatureMap {
  Matrix weights;           // m x h
  Eigen::RowVectorXd bias;  // 1 x h
  Activation activation = Activation::sigmoid;
  std::uint64_t seed = 0;
};

RandomFeatureMap init_feature_map(int m, int h, Activation activation,
                                  std::uint64_t seed);

// H = activation(X W + 1 b); n x h.
Matrix enhance(const RandomFeatureMap& map, const Matrix& x);

// [X H]; the direct-link design matrix.
Matrix with_direct_links(const Matrix& x, const Matrix& h);

// Ties between the two one-hot score columns break toward +1.
int label_from_scores(double score_neg, double score_pos);
std::vector<int> labels_from_scores(const Matrix& scores);

// Ridge-regularized random functional link network. With direct_link the
// design matrix is [X H] (m+h columns), otherwise H alone (the extreme
// learning machine baseline). The normal equations are solved on the primal
// side (D^T D + I/c) when the design width fits within n_train, and on the
// dual side D^T (D D^T + I/c)^{-1} Y otherwise; both give the same beta.
struct RvflModel {
  RandomFeatureMap map;
  Matrix beta;  // (m+h) x 2, or h x 2 without direct links
  bool direct_link = true;
  double c = 1.0;
};

// Which side of the ridge normal equations to factor. automatic picks the
// smaller system; the explicit values force a side (both yield the same beta,
// which equivalence checks and benchmarks rely on).
enum class RidgeSide { automatic, primal, dual };

RvflModel train_rvfl(const Matrix& x, const Matrix& y_one_hot, int h, double c,
                     Activation activation, std::uint64_t seed,
                     bool direct_link = true,
                     RidgeSide side = RidgeSide::automatic);
Matrix rvfl_scores(const RvflModel& model, const Matrix& x);
std::vector<int> rvfl_predict(const RvflModel& model, const Matrix& x);

// Coupling weights for the two-view objective. c1, c2 and theta must be
// strictly positive; rho may take any sign (0 decouples the views); h >= 1.
struct MvHyper {
  double c1 = 1.0;
  double c2 = 1.0;
  double theta = 1.0;
  double rho = 1.0;
  int h = 23;
};

// Two coupled views trained jointly: stacking the per-view optimality
// conditions
//   (I + c1 Z1^T Z1) b1 + rho Z1^T Z2 b2      = (c1 + rho) Z1^T Y
//   rho Z2^T Z1 b1 + (theta I + c2 Z2^T Z2) b2 = (c2 + rho) Z2^T Y
// gives one symmetric block system over (b1; b2), solved with a pivoted
// factorization. Z_v = [X_v H_v] with independent feature maps seeded
// (seed, seed + 1). condition_estimate is 1/rcond of the equilibrated block
// matrix; values above 1e12 deserve a warning.
struct MvRvflModel {
  RandomFeatureMap map_a;
  RandomFeatureMap map_b;
  Matrix beta1;  // (m1+h) x 2
  Matrix beta2;  // (m2+h) x 2
  MvHyper hyper;
  Activation activation = Activation::sigmoid;
  std::uint64_t seed = 0;
  double condition_estimate = 0.0;
};

MvRvflModel train_mvrvfl(const Matrix& xa, const Matrix& xb,
                         const Matrix& y_one_hot, const MvHyper& hyper,
                         Activation activation, std::uint64_t seed);

// Same solve with caller-supplied maps (seeds and all); the basis for the
// seed-derived overload and for symmetry checks.
MvRvflModel train_mvrvfl_with_maps(const RandomFeatureMap& map_a,
                                   const RandomFeatureMap& map_b,
                                   const Matrix& xa, const Matrix& xb,
                                   const Matrix& y_one_hot,
                                   const MvHyper& hyper);

enum class DecisionRule { view_a, view_b, combined, vote };

DecisionRule parse_decision_rule(const std::string& name);
std::string decision_rule_name(DecisionRule r);

// Per-view scores Z_v beta_v; combined averages the two views.
Matrix view_scores(const MvRvflModel& model, int view, const Matrix& x);
Matrix combined_scores(const MvRvflModel& model, const Matrix& xa,
                       const Matrix& xb);

std::vector<int> predict_view(const MvRvflModel& model, int view,
                              const Matrix& x);
std::vector<int> predict_combined(const MvRvflModel& model, const Matrix& xa,
                                  const Matrix& xb);
// Majority vote of view A, view B and the combined rule (3 voters, no ties).
std::vector<int> predict_vote(const MvRvflModel& model, const Matrix& xa,
                              const Matrix& xb);
std::vector<int> predict(const MvRvflModel& model, DecisionRule rule,
                         const Matrix& xa, const Matrix& xb);

// Norms of the residuals of the two stacked optimality-condition rows,
// evaluated directly on the training data, plus the right-hand-side norms
// for relative scaling.
struct KktResidual {
  double residual_a = 0.0;
  double residual_b = 0.0;
  double rhs_a_norm = 0.0;
  double rhs_b_norm = 0.0;
};
KktResidual kkt_residual(const MvRvflModel& model, const Matrix& xa,
                         const Matrix& xb, const Matrix& y_one_hot);

// Agreement and generalization diagnostics on a trained model.
//
// Per one-hot column c, with N_c = ||(beta1_c; beta2_c)||, row norms
// r_i^2 = ||Z1_i||^2 + ||Z2_i||^2, K_m = max_i r_i and E = sqrt(ln(2 /
// confidence_theta) / (2n)):
//   consistency_bound_c = 2 N_c + 3 N_c K_m E + (4 N_c / n) sqrt(sum_i r_i^2)
//   empirical_consistency_c = mean_i |Z1_i beta1_c - Z2_i beta2_c|
// Headline numbers take the maximum over the two columns.
//
// The generalization bound uses the +-1-label recast: b_v = beta_v(:,+1) -
// beta_v(:,-1) solves the same system against y in {-1,+1} exactly, and the
// slacks are the hinge terms xi_vi = max(0, 1 - y_i Z_vi b_v). With
// N = ||(b1; b2)|| and S = sqrt(sum_i(||Z1_i||^2 + delta^2 ||Z2_i||^2)):
//   generalization_bound = sum_i(xi_1i + delta xi_2i) / (n (1 + delta))
//                          + 3 E + 4 N S / (n (1 + delta))
struct BoundReport {
  int n_samples = 0;
  double confidence_theta = 0.0;
  double delta = 0.0;
  double epsilon_term = 0.0;  // sqrt(ln(2 / confidence_theta) / (2n))
  double k_m = 0.0;
  std::array<double, 2> n_norm_col{};
  std::array<double, 2> empirical_consistency_col{};
  std::array<double, 2> consistency_bound_col{};
  double n_norm = 0.0;                  // max over columns
  double empirical_consistency = 0.0;   // max over columns
  double consistency_bound = 0.0;       // max over columns
  double mean_slack_a = 0.0;
  double mean_slack_b = 0.0;
  double generalization_bound = 0.0;
};

BoundReport bound_report(const MvRvflModel& model, const Matrix& xa,
                         const Matrix& xb, const std::vector<int>& y,
                         double confidence_theta = 0.05, double delta = 1.0);

// Self-describing line-oriented text format, version 1. Doubles are written
// with 17 significant digits, so a reloaded model reproduces predictions
// bit-exactly.
std::string save_model(const MvRvflModel& model);
MvRvflModel load_model(const std::string& text);
void save_model_file(const MvRvflModel& model, const std::string& path);
MvRvflModel load_model_file(const std::string& path);

}  // namespace mvrvfl
