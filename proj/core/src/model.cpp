#include "mvrvfl/model.hpp"

#include "mvrvfl/csv.hpp"
#include "mvrvfl/linalg.hpp"
#include "mvrvfl/rng.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mvrvfl {

namespace {

void check_one_hot(const Matrix& y) {
  if (y.cols() != 2 || y.rows() == 0) {
    throw std::invalid_argument("targets must be n x 2 one-hot");
  }
  double col0 = 0.0;
  double col1 = 0.0;
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    const double a = y(i, 0);
    const double b = y(i, 1);
    if ((a != 0.0 && a != 1.0) || (b != 0.0 && b != 1.0) || a + b != 1.0) {
      throw std::invalid_argument("row " + std::to_string(i) +
                                  " of the targets is not one-hot");
    }
    col0 += a;
    col1 += b;
  }
  if (col0 == 0.0 || col1 == 0.0) {
    throw std::invalid_argument(
        "degenerate targets: both classes must be present in training data");
  }
}

void check_hyper(const MvHyper& h) {
  if (!(h.c1 > 0.0) || !(h.c2 > 0.0) || !(h.theta > 0.0)) {
    throw std::invalid_argument("c1, c2 and theta must be > 0");
  }
  if (!std::isfinite(h.rho)) {
    throw std::invalid_argument("rho must be finite");
  }
  if (h.h < 1) throw std::invalid_argument("hidden width must be >= 1");
}

}  // namespace

Activation parse_activation(const std::string& name) {
  if (name == "sigmoid") return Activation::sigmoid;
  if (name == "relu") return Activation::relu;
  if (name == "tanh") return Activation::tanh;
  throw std::invalid_argument("unknown activation '" + name +
                              "' (expected sigmoid, relu or tanh)");
}

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::sigmoid: return "sigmoid";
    case Activation::relu: return "relu";
    case Activation::tanh: return "tanh";
  }
  throw std::logic_error("bad activation enum");
}

double apply_activation(Activation a, double v) {
  switch (a) {
    case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-v));
    case Activation::relu: return v > 0.0 ? v : 0.0;
    case Activation::tanh: return std::tanh(v);
  }
  throw std::logic_error("bad activation enum");
}

RandomFeatureMap init_feature_map(int m, int h, Activation activation,
                                  std::uint64_t seed) {
  if (m < 1 || h < 1) {
    throw std::invalid_argument("feature map needs m >= 1 and h >= 1");
  }
  RandomFeatureMap map;
  map.activation = activation;
  map.seed = seed;
  map.weights.resize(m, h);
  map.bias.resize(h);
  Rng rng(seed);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < h; ++j) {
      map.weights(i, j) = rng.symmetric_unit();
    }
  }
  for (int j = 0; j < h; ++j) map.bias(j) = rng.symmetric_unit();
  return map;
}

Matrix enhance(const RandomFeatureMap& map, const Matrix& x) {
  if (x.cols() != map.weights.rows()) {
    throw std::invalid_argument(
        "enhance: input width " + std::to_string(x.cols()) +
        " does not match the map (" + std::to_string(map.weights.rows()) +
        ")");
  }
  Matrix h = (x * map.weights).rowwise() + map.bias;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      h(i, j) = apply_activation(map.activation, h(i, j));
    }
  }
  return h;
}

Matrix with_direct_links(const Matrix& x, const Matrix& h) {
  Matrix z(x.rows(), x.cols() + h.cols());
  z << x, h;
  return z;
}

int label_from_scores(double score_neg, double score_pos) {
  return score_pos >= score_neg ? 1 : -1;
}

std::vector<int> labels_from_scores(const Matrix& scores) {
  std::vector<int> out(static_cast<std::size_t>(scores.rows()));
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    out[static_cast<std::size_t>(i)] =
        label_from_scores(scores(i, 0), scores(i, 1));
  }
  return out;
}

RvflModel train_rvfl(const Matrix& x, const Matrix& y_one_hot, int h, double c,
                     Activation activation, std::uint64_t seed,
                     bool direct_link, RidgeSide side) {
  if (x.rows() != y_one_hot.rows()) {
    throw std::invalid_argument("rvfl: row count mismatch");
  }
  check_one_hot(y_one_hot);
  if (!(c > 0.0)) throw std::invalid_argument("ridge parameter must be > 0");
  RvflModel model;
  model.map = init_feature_map(static_cast<int>(x.cols()), h, activation, seed);
  model.direct_link = direct_link;
  model.c = c;
  const Matrix hidden = enhance(model.map, x);
  const Matrix design = direct_link ? with_direct_links(x, hidden) : hidden;
  const Eigen::Index n = design.rows();
  const Eigen::Index d = design.cols();
  const bool primal =
      side == RidgeSide::automatic ? d <= n : side == RidgeSide::primal;
  if (primal) {
    Matrix a = design.transpose() * design;
    a.diagonal().array() += 1.0 / c;
    model.beta = linalg::solve_spd(a, design.transpose() * y_one_hot);
  } else {
    Matrix g = design * design.transpose();
    g.diagonal().array() += 1.0 / c;
    model.beta = design.transpose() * linalg::solve_spd(g, y_one_hot);
  }
  return model;
}

Matrix rvfl_scores(const RvflModel& model, const Matrix& x) {
  const Matrix hidden = enhance(model.map, x);
  const Matrix design =
      model.direct_link ? with_direct_links(x, hidden) : hidden;
  return design * model.beta;
}

std::vector<int> rvfl_predict(const RvflModel& model, const Matrix& x) {
  return labels_from_scores(rvfl_scores(model, x));
}

MvRvflModel train_mvrvfl_with_maps(const RandomFeatureMap& map_a,
                                   const RandomFeatureMap& map_b,
                                   const Matrix& xa, const Matrix& xb,
                                   const Matrix& y_one_hot,
                                   const MvHyper& hyper) {
  if (xa.rows() != xb.rows() || xa.rows() != y_one_hot.rows()) {
    throw std::invalid_argument("views and targets must be row-aligned");
  }
  check_one_hot(y_one_hot);
  check_hyper(hyper);
  if (map_a.weights.cols() != hyper.h || map_b.weights.cols() != hyper.h) {
    throw std::invalid_argument("map width does not match hyper.h");
  }
  const Matrix z1 = with_direct_links(xa, enhance(map_a, xa));
  const Matrix z2 = with_direct_links(xb, enhance(map_b, xb));
  const Eigen::Index d1 = z1.cols();
  const Eigen::Index d2 = z2.cols();

  Matrix block(d1 + d2, d1 + d2);
  block.topLeftCorner(d1, d1) = hyper.c1 * (z1.transpose() * z1);
  block.topLeftCorner(d1, d1).diagonal().array() += 1.0;
  block.topRightCorner(d1, d2) = hyper.rho * (z1.transpose() * z2);
  block.bottomLeftCorner(d2, d1) = block.topRightCorner(d1, d2).transpose();
  block.bottomRightCorner(d2, d2) = hyper.c2 * (z2.transpose() * z2);
  block.bottomRightCorner(d2, d2).diagonal().array() += hyper.theta;

  Matrix rhs(d1 + d2, 2);
  rhs.topRows(d1) = (hyper.c1 + hyper.rho) * (z1.transpose() * y_one_hot);
  rhs.bottomRows(d2) = (hyper.c2 + hyper.rho) * (z2.transpose() * y_one_hot);

  MvRvflModel model;
  model.map_a = map_a;
  model.map_b = map_b;
  model.hyper = hyper;
  model.activation = map_a.activation;
  model.seed = map_a.seed;
  const Matrix stacked = linalg::solve_square(block, rhs,
                                              &model.condition_estimate);
  model.beta1 = stacked.topRows(d1);
  model.beta2 = stacked.bottomRows(d2);
  return model;
}

MvRvflModel train_mvrvfl(const Matrix& xa, const Matrix& xb,
                         const Matrix& y_one_hot, const MvHyper& hyper,
                         Activation activation, std::uint64_t seed) {
  check_hyper(hyper);
  const RandomFeatureMap map_a = init_feature_map(
      static_cast<int>(xa.cols()), hyper.h, activation, seed);
  const RandomFeatureMap map_b = init_feature_map(
      static_cast<int>(xb.cols()), hyper.h, activation, seed + 1);
  MvRvflModel model =
      train_mvrvfl_with_maps(map_a, map_b, xa, xb, y_one_hot, hyper);
  model.seed = seed;
  return model;
}

DecisionRule parse_decision_rule(const std::string& name) {
  if (name == "view-a") return DecisionRule::view_a;
  if (name == "view-b") return DecisionRule::view_b;
  if (name == "combined") return DecisionRule::combined;
  if (name == "vote") return DecisionRule::vote;
  throw std::invalid_argument(
      "unknown decision rule '" + name +
      "' (expected view-a, view-b, combined or vote)");
}

std::string decision_rule_name(DecisionRule r) {
  switch (r) {
    case DecisionRule::view_a: return "view-a";
    case DecisionRule::view_b: return "view-b";
    case DecisionRule::combined: return "combined";
    case DecisionRule::vote: return "vote";
  }
  throw std::logic_error("bad decision rule enum");
}

Matrix view_scores(const MvRvflModel& model, int view, const Matrix& x) {
  if (view != 0 && view != 1) {
    throw std::invalid_argument("view must be 0 (A) or 1 (B)");
  }
  const RandomFeatureMap& map = view == 0 ? model.map_a : model.map_b;
  const Matrix& beta = view == 0 ? model.beta1 : model.beta2;
  if (beta.size() == 0) throw std::logic_error("model is not trained");
  return with_direct_links(x, enhance(map, x)) * beta;
}

Matrix combined_scores(const MvRvflModel& model, const Matrix& xa,
                       const Matrix& xb) {
  return 0.5 * (view_scores(model, 0, xa) + view_scores(model, 1, xb));
}

std::vector<int> predict_view(const MvRvflModel& model, int view,
                              const Matrix& x) {
  return labels_from_scores(view_scores(model, view, x));
}

std::vector<int> predict_combined(const MvRvflModel& model, const Matrix& xa,
                                  const Matrix& xb) {
  return labels_from_scores(combined_scores(model, xa, xb));
}

std::vector<int> predict_vote(const MvRvflModel& model, const Matrix& xa,
                              const Matrix& xb) {
  const std::vector<int> a = predict_view(model, 0, xa);
  const std::vector<int> b = predict_view(model, 1, xb);
  const std::vector<int> c = predict_combined(model, xa, xb);
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] + b[i] + c[i] > 0 ? 1 : -1;
  }
  return out;
}

std::vector<int> predict(const MvRvflModel& model, DecisionRule rule,
                         const Matrix& xa, const Matrix& xb) {
  switch (rule) {
    case DecisionRule::view_a: return predict_view(model, 0, xa);
    case DecisionRule::view_b: return predict_view(model, 1, xb);
    case DecisionRule::combined: return predict_combined(model, xa, xb);
    case DecisionRule::vote: return predict_vote(model, xa, xb);
  }
  throw std::logic_error("bad decision rule enum");
}

KktResidual kkt_residual(const MvRvflModel& model, const Matrix& xa,
                         const Matrix& xb, const Matrix& y_one_hot) {
  const Matrix z1 = with_direct_links(xa, enhance(model.map_a, xa));
  const Matrix z2 = with_direct_links(xb, enhance(model.map_b, xb));
  const MvHyper& h = model.hyper;
  const Matrix rhs_a = (h.c1 + h.rho) * (z1.transpose() * y_one_hot);
  const Matrix rhs_b = (h.c2 + h.rho) * (z2.transpose() * y_one_hot);
  const Matrix lhs_a = model.beta1 +
                       h.c1 * (z1.transpose() * (z1 * model.beta1)) +
                       h.rho * (z1.transpose() * (z2 * model.beta2));
  const Matrix lhs_b = h.rho * (z2.transpose() * (z1 * model.beta1)) +
                       h.theta * model.beta2 +
                       h.c2 * (z2.transpose() * (z2 * model.beta2));
  KktResidual r;
  r.residual_a = (lhs_a - rhs_a).norm();
  r.residual_b = (lhs_b - rhs_b).norm();
  r.rhs_a_norm = rhs_a.norm();
  r.rhs_b_norm = rhs_b.norm();
  return r;
}

BoundReport bound_report(const MvRvflModel& model, const Matrix& xa,
                         const Matrix& xb, const std::vector<int>& y,
                         double confidence_theta, double delta) {
  if (model.beta1.size() == 0 || model.beta2.size() == 0) {
    throw std::invalid_argument("bound report needs a trained model");
  }
  if (!(confidence_theta > 0.0 && confidence_theta < 1.0)) {
    throw std::invalid_argument("confidence level must be in (0, 1)");
  }
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
  if (xa.rows() != xb.rows() ||
      static_cast<std::size_t>(xa.rows()) != y.size() || y.empty()) {
    throw std::invalid_argument("bound report: row mismatch");
  }
  const Matrix z1 = with_direct_links(xa, enhance(model.map_a, xa));
  const Matrix z2 = with_direct_links(xb, enhance(model.map_b, xb));
  const int n = static_cast<int>(z1.rows());

  BoundReport rep;
  rep.n_samples = n;
  rep.confidence_theta = confidence_theta;
  rep.delta = delta;
  const double eps_term =
      std::sqrt(std::log(2.0 / confidence_theta) / (2.0 * n));
  rep.epsilon_term = eps_term;

  double sum_row_sq = 0.0;
  double max_row_sq = 0.0;
  double sum_row_sq_delta = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r1 = z1.row(i).squaredNorm();
    const double r2 = z2.row(i).squaredNorm();
    sum_row_sq += r1 + r2;
    max_row_sq = std::max(max_row_sq, r1 + r2);
    sum_row_sq_delta += r1 + delta * delta * r2;
  }
  rep.k_m = std::sqrt(max_row_sq);

  const Matrix s1 = z1 * model.beta1;
  const Matrix s2 = z2 * model.beta2;
  for (int c = 0; c < 2; ++c) {
    const double n_norm = std::sqrt(model.beta1.col(c).squaredNorm() +
                                    model.beta2.col(c).squaredNorm());
    rep.n_norm_col[c] = n_norm;
    rep.empirical_consistency_col[c] =
        (s1.col(c) - s2.col(c)).cwiseAbs().sum() / n;
    rep.consistency_bound_col[c] =
        2.0 * n_norm + 3.0 * n_norm * rep.k_m * eps_term +
        4.0 * n_norm / n * std::sqrt(sum_row_sq);
  }
  rep.n_norm = std::max(rep.n_norm_col[0], rep.n_norm_col[1]);
  rep.empirical_consistency = std::max(rep.empirical_consistency_col[0],
                                       rep.empirical_consistency_col[1]);
  rep.consistency_bound =
      std::max(rep.consistency_bound_col[0], rep.consistency_bound_col[1]);

  // +-1 recast: the column difference of beta solves the same system against
  // y in {-1,+1}, so the hinge slacks of the recast model are exact.
  const Vector f1 = s1.col(1) - s1.col(0);
  const Vector f2 = s2.col(1) - s2.col(0);
  double slack_sum_a = 0.0;
  double slack_sum_b = 0.0;
  for (int i = 0; i < n; ++i) {
    if (y[i] != -1 && y[i] != 1) {
      throw std::invalid_argument("labels must be -1 or +1");
    }
    slack_sum_a += std::max(0.0, 1.0 - y[i] * f1(i));
    slack_sum_b += std::max(0.0, 1.0 - y[i] * f2(i));
  }
  rep.mean_slack_a = slack_sum_a / n;
  rep.mean_slack_b = slack_sum_b / n;
  const double n_recast =
      std::sqrt((model.beta1.col(1) - model.beta1.col(0)).squaredNorm() +
                (model.beta2.col(1) - model.beta2.col(0)).squaredNorm());
  rep.generalization_bound =
      (slack_sum_a + delta * slack_sum_b) / (n * (1.0 + delta)) +
      3.0 * eps_term +
      4.0 * n_recast / (n * (1.0 + delta)) * std::sqrt(sum_row_sq_delta);
  return rep;
}

namespace {

void write_matrix(std::ostringstream& out, const std::string& name,
                  const Matrix& m) {
  out << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_g17(m(i, j));
    }
    out << '\n';
  }
}

class ModelReader {
 public:
  explicit ModelReader(const std::string& text) : in_(text) {}

  std::vector<std::string> next_line() {
    std::string line;
    while (std::getline(in_, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::vector<std::string> tokens;
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      return tokens;
    }
    throw std::runtime_error("model file ended unexpectedly");
  }

  std::string expect_field(const std::string& key) {
    const auto tokens = next_line();
    if (tokens.size() != 2 || tokens[0] != key) {
      throw std::runtime_error("model file: expected '" + key + " <value>'");
    }
    return tokens[1];
  }

  Eigen::RowVectorXd expect_row(const std::string& name) {
    const Matrix m = expect_matrix(name);
    if (m.rows() != 1) {
      throw std::runtime_error("model file: matrix '" + name +
                               "' must have a single row");
    }
    return m.row(0);
  }

  Matrix expect_matrix(const std::string& name) {
    const auto head = next_line();
    if (head.size() != 4 || head[0] != "matrix" || head[1] != name) {
      throw std::runtime_error("model file: expected matrix '" + name + "'");
    }
    const long rows = std::stol(head[2]);
    const long cols = std::stol(head[3]);
    if (rows < 1 || cols < 1) {
      throw std::runtime_error("model file: bad shape for matrix '" + name +
                               "'");
    }
    Matrix m(rows, cols);
    for (long i = 0; i < rows; ++i) {
      const auto row = next_line();
      if (static_cast<long>(row.size()) != cols) {
        throw std::runtime_error("model file: matrix '" + name + "' row " +
                                 std::to_string(i) + " has " +
                                 std::to_string(row.size()) + " of " +
                                 std::to_string(cols) + " values");
      }
      for (long j = 0; j < cols; ++j) {
        m(i, j) = parse_number(row[static_cast<std::size_t>(j)],
                               "model matrix " + name);
      }
    }
    return m;
  }

 private:
  std::istringstream in_;
};

std::uint64_t parse_u64(const std::string& s) {
  return std::stoull(s);
}

}  // namespace

std::string save_model(const MvRvflModel& model) {
  std::ostringstream out;
  out << "mvrvfl-model 1\n";
  out << "activation " << activation_name(model.activation) << '\n';
  out << "seed " << model.seed << '\n';
  out << "c1 " << format_g17(model.hyper.c1) << '\n';
  out << "c2 " << format_g17(model.hyper.c2) << '\n';
  out << "theta " << format_g17(model.hyper.theta) << '\n';
  out << "rho " << format_g17(model.hyper.rho) << '\n';
  out << "hidden " << model.hyper.h << '\n';
  out << "condition " << format_g17(model.condition_estimate) << '\n';
  out << "seed_a " << model.map_a.seed << '\n';
  out << "seed_b " << model.map_b.seed << '\n';
  write_matrix(out, "weights_a", model.map_a.weights);
  write_matrix(out, "bias_a", model.map_a.bias);
  write_matrix(out, "weights_b", model.map_b.weights);
  write_matrix(out, "bias_b", model.map_b.bias);
  write_matrix(out, "beta_a", model.beta1);
  write_matrix(out, "beta_b", model.beta2);
  out << "end\n";
  return out.str();
}

MvRvflModel load_model(const std::string& text) {
  ModelReader reader(text);
  const auto magic = reader.next_line();
  if (magic.size() != 2 || magic[0] != "mvrvfl-model") {
    throw std::runtime_error(
        "not a model file (expected header 'mvrvfl-model <version>')");
  }
  if (magic[1] != "1") {
    throw std::runtime_error("unsupported model format version " + magic[1] +
                             " (this build reads version 1)");
  }
  MvRvflModel model;
  model.activation = parse_activation(reader.expect_field("activation"));
  model.seed = parse_u64(reader.expect_field("seed"));
  model.hyper.c1 = parse_number(reader.expect_field("c1"), "model field c1");
  model.hyper.c2 = parse_number(reader.expect_field("c2"), "model field c2");
  model.hyper.theta =
      parse_number(reader.expect_field("theta"), "model field theta");
  model.hyper.rho =
      parse_number(reader.expect_field("rho"), "model field rho");
  model.hyper.h = static_cast<int>(std::stol(reader.expect_field("hidden")));
  model.condition_estimate =
      parse_number(reader.expect_field("condition"), "model field condition");
  model.map_a.seed = parse_u64(reader.expect_field("seed_a"));
  model.map_b.seed = parse_u64(reader.expect_field("seed_b"));
  model.map_a.activation = model.activation;
  model.map_b.activation = model.activation;
  model.map_a.weights = reader.expect_matrix("weights_a");
  model.map_a.bias = reader.expect_row("bias_a");
  model.map_b.weights = reader.expect_matrix("weights_b");
  model.map_b.bias = reader.expect_row("bias_b");
  model.beta1 = reader.expect_matrix("beta_a");
  model.beta2 = reader.expect_matrix("beta_b");
  const auto tail = reader.next_line();
  if (tail.size() != 1 || tail[0] != "end") {
    throw std::runtime_error("model file: missing 'end' marker");
  }
  if (model.map_a.weights.cols() != model.hyper.h ||
      model.map_b.weights.cols() != model.hyper.h ||
      model.map_a.bias.cols() != model.hyper.h ||
      model.map_b.bias.cols() != model.hyper.h ||
      model.beta1.rows() !=
          model.map_a.weights.rows() + model.hyper.h ||
      model.beta2.rows() !=
          model.map_b.weights.rows() + model.hyper.h ||
      model.beta1.cols() != 2 || model.beta2.cols() != 2) {
    throw std::runtime_error("model file: inconsistent matrix shapes");
  }
  return model;
}

void save_model_file(const MvRvflModel& model, const std::string& path) {
  write_text_file(path, save_model(model));
}

MvRvflModel load_model_file(const std::string& path) {
  return load_model(read_text_file(path));
}

}  // namespace mvrvfl
