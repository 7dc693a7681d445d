// Command-line front end: extract protein features, rank them, train and
// apply two-view models, and compare classifiers statistically. Every command
// is deterministic given its inputs, flags and --seed, and all CSV output is
// written with 17 significant digits so downstream tools can round-trip the
// numbers exactly.

#include "mvrvfl/csv.hpp"
#include "mvrvfl/dataset.hpp"
#include "mvrvfl/eval.hpp"
#include "mvrvfl/features.hpp"
#include "mvrvfl/grid.hpp"
#include "mvrvfl/linalg.hpp"
#include "mvrvfl/model.hpp"
#include "mvrvfl/mrmr.hpp"
#include "mvrvfl/sequence.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace mvrvfl;

namespace {

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string activation = "sigmoid";
  std::string wavelet = "haar";
  int mi_bins = 10;
};

std::string zero_pad(int value, int width) {
  std::string s = std::to_string(value);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

std::string undefined_or(const std::optional<double>& v) {
  return v ? format_g17(*v) : "undefined";
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

// ---------------------------------------------------------------- extract

struct ExtractArgs {
  std::string fasta;
  std::string pssm_dir;
  std::vector<std::string> families;
  std::string out_dir;
};

int run_extract(const ExtractArgs& args, const GlobalOptions& global) {
  const Wavelet wavelet = parse_wavelet(global.wavelet);
  std::vector<const FeatureFamily*> requested;
  {
    std::set<std::string> seen;
    // Registry order keeps output deterministic regardless of flag order.
    std::set<std::string> wanted(args.families.begin(), args.families.end());
    for (const auto& name : args.families) {
      if (!find_family(name)) {
        throw std::runtime_error("unknown feature family '" + name + "'");
      }
    }
    for (const auto& fam : feature_families()) {
      if (wanted.count(fam.name) && seen.insert(fam.name).second) {
        requested.push_back(&fam);
      }
    }
  }
  bool any_pssm = false;
  for (const auto* fam : requested) any_pssm |= fam->needs_pssm;
  if (any_pssm && args.pssm_dir.empty()) {
    throw std::runtime_error(
        "--pssm-dir is required for profile-based families");
  }

  std::vector<std::string> warnings;
  const std::vector<ProteinSequence> proteins =
      parse_fasta(read_text_file(args.fasta), &warnings);
  print_warnings(warnings);

  // Profiles load once per protein and are shared across families.
  std::map<std::string, PssmProfile> profiles;
  std::map<std::string, std::string> profile_errors;
  if (any_pssm) {
    for (const auto& p : proteins) {
      const fs::path path = fs::path(args.pssm_dir) / (p.id + ".pssm");
      std::error_code ec;
      if (!fs::exists(path, ec)) {
        profile_errors[p.id] = "missing PSSM file " + path.string();
        continue;
      }
      try {
        std::vector<std::string> pssm_warnings;
        profiles[p.id] =
            parse_pssm(read_text_file(path.string()), p.id, &pssm_warnings);
        print_warnings(pssm_warnings);
      } catch (const std::exception& e) {
        profile_errors[p.id] = e.what();
      }
    }
  }

  fs::create_directories(args.out_dir);
  std::vector<std::vector<std::string>> skip_rows;
  long extracted = 0;
  for (const auto* fam : requested) {
    std::vector<std::string> header{"id"};
    for (int j = 0; j < fam->dim; ++j) {
      header.push_back(fam->name + "_" + zero_pad(j + 1, 4));
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& p : proteins) {
      try {
        Vector v;
        if (fam->name == "mcd") {
          v = mcd_features(p.residues);
        } else if (fam->name == "nmbac") {
          v = nmbac_features(p.residues);
        } else {
          auto it = profiles.find(p.id);
          if (it == profiles.end()) {
            throw std::runtime_error(profile_errors.count(p.id)
                                         ? profile_errors.at(p.id)
                                         : "no PSSM profile loaded");
          }
          if (fam->name == "psepssm") {
            v = psepssm_features(it->second);
          } else if (fam->name == "pssm_ab") {
            v = pssm_ab_features(it->second);
          } else {
            v = pssm_dwt_features(it->second, wavelet);
          }
        }
        std::vector<std::string> row{p.id};
        for (Eigen::Index j = 0; j < v.size(); ++j) {
          row.push_back(format_g17(v(j)));
        }
        rows.push_back(std::move(row));
        ++extracted;
      } catch (const std::exception& e) {
        std::cerr << "skip: " << p.id << " (" << fam->name
                  << "): " << e.what() << '\n';
        skip_rows.push_back({p.id, fam->name, e.what()});
      }
    }
    const fs::path out = fs::path(args.out_dir) / (fam->name + ".csv");
    write_csv_file(out.string(), header, rows);
  }
  const fs::path report = fs::path(args.out_dir) / "extract_report.csv";
  write_csv_file(report.string(), {"id", "family", "reason"}, skip_rows);
  if (extracted == 0) {
    std::cerr << "error: no feature vector could be extracted\n";
    return 1;
  }
  return 0;
}

// ----------------------------------------------------------------- select

struct SelectArgs {
  std::string data;
  std::string label_column = "label";
  std::string out;
  std::string selected_out;
  double fraction = 1.0;
};

int run_select(const SelectArgs& args, const GlobalOptions& global) {
  const LabeledDataset ds = load_csv_dataset(args.data, args.label_column);
  const MrmrRanking ranking = mrmr_rank(ds.x, ds.y, global.mi_bins);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < ranking.order.size(); ++i) {
    rows.push_back({std::to_string(i + 1), std::to_string(ranking.order[i]),
                    ds.feature_names[static_cast<std::size_t>(
                        ranking.order[i])],
                    format_g17(ranking.scores[i])});
  }
  write_csv_file(args.out, {"rank", "feature_index", "feature_name",
                            "objective"},
                 rows);
  if (!args.selected_out.empty()) {
    const Matrix kept = select_fraction(ds.x, ranking, args.fraction);
    std::vector<std::string> header;
    if (!ds.ids.empty()) header.push_back("id");
    for (Eigen::Index j = 0; j < kept.cols(); ++j) {
      header.push_back(ds.feature_names[static_cast<std::size_t>(
          ranking.order[static_cast<std::size_t>(j)])]);
    }
    header.push_back(args.label_column);
    std::vector<std::vector<std::string>> data_rows;
    for (int i = 0; i < ds.n(); ++i) {
      std::vector<std::string> row;
      if (!ds.ids.empty()) row.push_back(ds.ids[static_cast<std::size_t>(i)]);
      for (Eigen::Index j = 0; j < kept.cols(); ++j) {
        row.push_back(format_g17(kept(i, j)));
      }
      row.push_back(ds.label_names[ds.y[static_cast<std::size_t>(i)] == 1]);
      data_rows.push_back(std::move(row));
    }
    write_csv_file(args.selected_out, header, data_rows);
  }
  return 0;
}

// ------------------------------------------------------------------ train

struct TrainArgs {
  std::string view_a;
  std::string view_b;
  std::string labels;
  std::string two_view;
  std::string label_column = "label";
  std::string model_out;
  std::string report_out;
  std::string rule = "combined";
  double c1 = 1.0;
  double c2 = 1.0;
  double theta = 1.0;
  double rho = 1.0;
  int hidden = 23;
  bool grid = false;
  std::vector<double> grid_c1;
  std::vector<double> grid_c2;
  std::vector<double> grid_theta;
  std::vector<double> grid_rho;
  std::vector<int> grid_hidden;
  int folds = 5;
};

TwoViewDataset load_training_data(const TrainArgs& args) {
  if (!args.two_view.empty()) {
    return load_two_view_prefixed(args.two_view, args.label_column);
  }
  if (args.view_a.empty() || args.view_b.empty() || args.labels.empty()) {
    throw std::runtime_error(
        "supply either --two-view or all of --view-a, --view-b, --labels");
  }
  return load_two_view_csv(args.view_a, args.view_b, args.labels,
                           args.label_column);
}

int run_train(const TrainArgs& args, const GlobalOptions& global) {
  const Activation activation = parse_activation(global.activation);
  const DecisionRule rule = parse_decision_rule(args.rule);
  const TwoViewDataset ds = load_training_data(args);
  const Matrix targets = one_hot(ds.y);

  std::ostringstream report;
  report << "training report\n";
  report << "samples " << ds.n() << '\n';
  report << "view-a width " << ds.a.cols() << '\n';
  report << "view-b width " << ds.b.cols() << '\n';
  report << "label -1 " << ds.label_names[0] << '\n';
  report << "label +1 " << ds.label_names[1] << '\n';
  report << "activation " << activation_name(activation) << '\n';
  report << "seed " << global.seed << '\n';
  report << "rule " << decision_rule_name(rule) << '\n';

  MvHyper hyper{args.c1, args.c2, args.theta, args.rho, args.hidden};
  const bool use_grid = args.grid || !args.grid_c1.empty() ||
                        !args.grid_c2.empty() || !args.grid_theta.empty() ||
                        !args.grid_rho.empty() || !args.grid_hidden.empty();
  if (use_grid) {
    GridSpec spec = GridSpec::defaults();
    if (!args.grid_c1.empty()) spec.c1 = args.grid_c1;
    if (!args.grid_c2.empty()) spec.c2 = args.grid_c2;
    if (!args.grid_theta.empty()) spec.theta = args.grid_theta;
    if (!args.grid_rho.empty()) spec.rho = args.grid_rho;
    if (!args.grid_hidden.empty()) spec.h = args.grid_hidden;
    const GridResult result =
        grid_search(ds, spec, args.folds, global.seed, activation, rule);
    hyper = result.best;
    report << "grid cells " << result.table.size() << '\n';
    report << "grid folds " << args.folds << '\n';
    for (const auto& cell : result.table) {
      report << "cell " << cell.index << " c1 " << format_g17(cell.hyper.c1)
             << " c2 " << format_g17(cell.hyper.c2) << " theta "
             << format_g17(cell.hyper.theta) << " rho "
             << format_g17(cell.hyper.rho) << " hidden " << cell.hyper.h;
      if (cell.failed) {
        report << " failed\n";
        continue;
      }
      report << " folds";
      for (const auto& acc : cell.fold_accuracy) {
        report << ' ' << undefined_or(acc);
      }
      report << " mean " << undefined_or(cell.mean_accuracy) << '\n';
    }
    report << "grid best accuracy " << format_g17(result.best_accuracy)
           << '\n';
  }
  report << "c1 " << format_g17(hyper.c1) << '\n';
  report << "c2 " << format_g17(hyper.c2) << '\n';
  report << "theta " << format_g17(hyper.theta) << '\n';
  report << "rho " << format_g17(hyper.rho) << '\n';
  report << "hidden " << hyper.h << '\n';

  const MvRvflModel model =
      train_mvrvfl(ds.a, ds.b, targets, hyper, activation, global.seed);
  save_model_file(model, args.model_out);

  const KktResidual kkt = kkt_residual(model, ds.a, ds.b, targets);
  report << "kkt residual a " << format_g17(kkt.residual_a) << '\n';
  report << "kkt residual b " << format_g17(kkt.residual_b) << '\n';
  report << "kkt rhs norm a " << format_g17(kkt.rhs_a_norm) << '\n';
  report << "kkt rhs norm b " << format_g17(kkt.rhs_b_norm) << '\n';

  const BoundReport bounds = bound_report(model, ds.a, ds.b, ds.y);
  report << "bound confidence theta " << format_g17(bounds.confidence_theta)
         << '\n';
  report << "bound delta " << format_g17(bounds.delta) << '\n';
  report << "bound k_m " << format_g17(bounds.k_m) << '\n';
  report << "bound weight norm " << format_g17(bounds.n_norm) << '\n';
  report << "empirical consistency " << format_g17(bounds.empirical_consistency)
         << '\n';
  report << "consistency bound " << format_g17(bounds.consistency_bound)
         << '\n';
  report << "mean slack a " << format_g17(bounds.mean_slack_a) << '\n';
  report << "mean slack b " << format_g17(bounds.mean_slack_b) << '\n';
  report << "generalization bound " << format_g17(bounds.generalization_bound)
         << '\n';

  report << "condition estimate " << format_g17(model.condition_estimate)
         << '\n';
  if (model.condition_estimate > linalg::kConditionWarnThreshold) {
    report << "condition warning: solve is ill-conditioned; results may be "
              "sensitive to input perturbations\n";
    std::cerr << "warning: condition estimate "
              << format_g17(model.condition_estimate)
              << " exceeds " << format_g17(linalg::kConditionWarnThreshold)
              << '\n';
  }

  if (args.report_out.empty()) {
    std::cout << report.str();
  } else {
    write_text_file(args.report_out, report.str());
  }
  return 0;
}

// ---------------------------------------------------------------- predict

struct PredictArgs {
  std::string model;
  std::string view_a;
  std::string view_b;
  std::string rule = "combined";
  std::string out;
};

int run_predict(const PredictArgs& args, const GlobalOptions&) {
  const MvRvflModel model = load_model_file(args.model);
  const DecisionRule rule = parse_decision_rule(args.rule);
  const FeatureTable a = load_feature_csv(args.view_a);
  const FeatureTable b = load_feature_csv(args.view_b);
  if (a.x.cols() != model.map_a.weights.rows()) {
    throw std::runtime_error(
        "view A has width " + std::to_string(a.x.cols()) +
        " but the model expects " +
        std::to_string(model.map_a.weights.rows()));
  }
  if (b.x.cols() != model.map_b.weights.rows()) {
    throw std::runtime_error(
        "view B has width " + std::to_string(b.x.cols()) +
        " but the model expects " +
        std::to_string(model.map_b.weights.rows()));
  }
  if (a.x.rows() != b.x.rows()) {
    throw std::runtime_error("view A has " + std::to_string(a.x.rows()) +
                             " rows, view B has " +
                             std::to_string(b.x.rows()));
  }
  if (!a.ids.empty() && !b.ids.empty() && a.ids != b.ids) {
    throw std::runtime_error("view A and view B carry different ids");
  }

  const std::vector<int> labels = predict(model, rule, a.x, b.x);
  Matrix scores;
  const bool with_scores = rule != DecisionRule::vote;
  if (rule == DecisionRule::view_a) {
    scores = view_scores(model, 0, a.x);
  } else if (rule == DecisionRule::view_b) {
    scores = view_scores(model, 1, b.x);
  } else if (rule == DecisionRule::combined) {
    scores = combined_scores(model, a.x, b.x);
  }

  const std::vector<std::string>& ids = !a.ids.empty() ? a.ids : b.ids;
  std::vector<std::string> header{"id", "label"};
  if (with_scores) {
    header.push_back("score_neg");
    header.push_back("score_pos");
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::vector<std::string> row;
    row.push_back(ids.empty() ? std::to_string(i + 1) : ids[i]);
    row.push_back(std::to_string(labels[i]));
    if (with_scores) {
      row.push_back(format_g17(scores(static_cast<Eigen::Index>(i), 0)));
      row.push_back(format_g17(scores(static_cast<Eigen::Index>(i), 1)));
    }
    rows.push_back(std::move(row));
  }
  write_csv_file(args.out, header, rows);
  return 0;
}

// --------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string predictions;
  std::string truth;
  std::string label_column = "label";
  std::string out;
  std::string roc_out;
};

int run_evaluate(const EvaluateArgs& args, const GlobalOptions&) {
  const CsvTable pred = read_csv_file(args.predictions);
  const int pred_label = pred.column("label");
  if (pred_label < 0) {
    throw std::runtime_error(args.predictions + ": missing 'label' column");
  }
  const int pred_id = pred.column("id");
  const int score_neg = pred.column("score_neg");
  const int score_pos = pred.column("score_pos");
  const bool has_scores = score_neg >= 0 && score_pos >= 0;

  std::vector<int> predicted;
  std::vector<double> score;
  std::vector<std::string> pred_ids;
  for (std::size_t r = 0; r < pred.rows.size(); ++r) {
    const auto& row = pred.rows[r];
    const double v = parse_number(
        row[pred_label],
        args.predictions + " row " + std::to_string(r + 2) + " label");
    if (v != -1.0 && v != 1.0) {
      throw std::runtime_error(args.predictions + " row " +
                               std::to_string(r + 2) +
                               ": predicted label must be -1 or 1");
    }
    predicted.push_back(static_cast<int>(v));
    if (has_scores) {
      const std::string at =
          args.predictions + " row " + std::to_string(r + 2);
      score.push_back(parse_number(row[score_pos], at + " score_pos") -
                      parse_number(row[score_neg], at + " score_neg"));
    }
    if (pred_id >= 0) pred_ids.push_back(row[pred_id]);
  }

  const CsvTable truth_table = read_csv_file(args.truth);
  const int truth_label = truth_table.column(args.label_column);
  if (truth_label < 0) {
    throw std::runtime_error(args.truth + ": missing label column '" +
                             args.label_column + "'");
  }
  const int truth_id = truth_table.column("id");
  std::vector<std::string> raw;
  std::vector<std::string> truth_ids;
  for (const auto& row : truth_table.rows) {
    raw.push_back(row[truth_label]);
    if (truth_id >= 0) truth_ids.push_back(row[truth_id]);
  }
  const auto [truth, label_names] = map_binary_labels(raw, args.truth);
  if (truth.size() != predicted.size()) {
    throw std::runtime_error(args.truth + " has " +
                             std::to_string(truth.size()) + " rows, " +
                             args.predictions + " has " +
                             std::to_string(predicted.size()));
  }
  if (!pred_ids.empty() && !truth_ids.empty() && pred_ids != truth_ids) {
    throw std::runtime_error("id mismatch between " + args.predictions +
                             " and " + args.truth);
  }

  const MetricSet m = metrics(truth, predicted);
  std::optional<double> auc;
  if (has_scores) {
    bool both = false;
    for (std::size_t i = 1; i < truth.size(); ++i) {
      both |= truth[i] != truth[0];
    }
    if (both) auc = roc_auc(truth, score);
  }

  std::vector<std::vector<std::string>> rows;
  rows.push_back({"samples", std::to_string(m.counts.total())});
  rows.push_back({"tp", std::to_string(m.counts.tp)});
  rows.push_back({"fn", std::to_string(m.counts.fn)});
  rows.push_back({"fp", std::to_string(m.counts.fp)});
  rows.push_back({"tn", std::to_string(m.counts.tn)});
  rows.push_back({"accuracy", undefined_or(m.accuracy)});
  rows.push_back({"sensitivity", undefined_or(m.sensitivity)});
  rows.push_back({"specificity", undefined_or(m.specificity)});
  rows.push_back({"precision", undefined_or(m.precision)});
  rows.push_back({"auc", undefined_or(auc)});
  write_csv_file(args.out, {"metric", "value"}, rows);

  if (!args.roc_out.empty()) {
    if (!has_scores) {
      throw std::runtime_error(
          "--roc-out needs score_neg/score_pos columns in the predictions");
    }
    std::vector<std::vector<std::string>> points;
    for (const RocPoint& p : roc_points(truth, score)) {
      points.push_back(
          {format_g17(p.threshold), format_g17(p.fpr), format_g17(p.tpr)});
    }
    write_csv_file(args.roc_out, {"threshold", "fpr", "tpr"}, points);
  }
  return 0;
}

// ------------------------------------------------------------------ stats

struct StatsArgs {
  std::string table;
  std::string out;
  double q_alpha = 0.0;
  bool q_alpha_given = false;
};

int run_stats(const StatsArgs& args, const GlobalOptions&) {
  const CsvTable table = read_csv_file(args.table);
  if (table.header.size() < 3) {
    throw std::runtime_error(
        args.table +
        ": need a dataset-name column plus at least 2 model columns");
  }
  if (table.rows.empty()) {
    throw std::runtime_error(args.table + ": no data rows");
  }
  const int n = static_cast<int>(table.rows.size());
  const int q = static_cast<int>(table.header.size()) - 1;
  std::vector<std::string> models(table.header.begin() + 1,
                                  table.header.end());
  Matrix acc(n, q);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < q; ++j) {
      acc(i, j) = parse_number(table.rows[i][j + 1],
                               args.table + " row " + std::to_string(i + 2) +
                                   " column '" + models[j] + "'");
    }
  }

  std::ostringstream out;
  out << "statistical comparison report\n";
  out << "datasets " << n << '\n';
  out << "models " << q << '\n';
  const std::vector<double> ranks = average_ranks(acc);
  for (int j = 0; j < q; ++j) {
    out << "mean rank " << models[j] << ' ' << format_g17(ranks[j]) << '\n';
  }
  if (n >= 2) {
    const FriedmanResult fr = friedman(acc);
    out << "friedman chi2 " << format_g17(fr.chi2) << '\n';
    out << "friedman f " << undefined_or(fr.f_stat) << '\n';
    out << "friedman dof " << fr.dof_1 << ' ' << fr.dof_2 << '\n';
  } else {
    out << "friedman skipped: need at least 2 datasets\n";
  }
  if (args.q_alpha_given) {
    const double cd = nemenyi_cd(args.q_alpha, q, n);
    out << "nemenyi q-alpha " << format_g17(args.q_alpha) << '\n';
    out << "nemenyi critical difference " << format_g17(cd) << '\n';
    for (int i = 0; i < q; ++i) {
      for (int j = i + 1; j < q; ++j) {
        const double gap = std::abs(ranks[i] - ranks[j]);
        out << "rank gap " << models[i] << " vs " << models[j] << ' '
            << format_g17(gap) << (gap > cd ? " significant" : "") << '\n';
      }
    }
  }
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      std::vector<double> ai(n);
      std::vector<double> aj(n);
      for (int r = 0; r < n; ++r) {
        ai[r] = acc(r, i);
        aj[r] = acc(r, j);
      }
      const WinTieLoss w = win_tie_loss(ai, aj);
      const int adj = adjusted_wins(w);
      out << "win-tie-loss " << models[i] << " vs " << models[j] << ' '
          << w.wins << ' ' << w.ties << ' ' << w.losses << " adjusted " << adj
          << " threshold " << format_g17(w.significance_threshold)
          << (adj >= w.significance_threshold ? " significant" : "") << '\n';
    }
  }
  if (args.out.empty()) {
    std::cout << out.str();
  } else {
    write_text_file(args.out, out.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Two-view random functional link classifier toolkit: protein feature "
      "extraction, feature ranking, training, prediction and statistical "
      "comparison."};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Key=value config file; command-line flags take precedence");

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Base seed for all randomness")
      ->capture_default_str();
  app.add_option("--activation", global.activation,
                 "Activation: sigmoid, relu or tanh")
      ->capture_default_str();
  app.add_option("--wavelet", global.wavelet,
                 "Wavelet for the transform-based features: haar or db4")
      ->capture_default_str();
  app.add_option("--mi-bins", global.mi_bins,
                 "Equal-width bins for mutual information")
      ->capture_default_str();

  ExtractArgs extract_args;
  {
    CLI::App* cmd = app.add_subcommand(
        "extract", "Compute per-protein feature CSVs from FASTA + PSSM");
    cmd->add_option("--fasta", extract_args.fasta, "FASTA file")->required();
    cmd->add_option("--pssm-dir", extract_args.pssm_dir,
                    "Directory holding <id>.pssm profiles");
    cmd->add_option("--features", extract_args.families,
                    "Families: mcd, nmbac, psepssm, pssm_ab, pssm_dwt")
        ->delimiter(',')
        ->default_val(std::vector<std::string>{
            "mcd", "nmbac", "psepssm", "pssm_ab", "pssm_dwt"});
    cmd->add_option("--out", extract_args.out_dir,
                    "Output directory (one CSV per family plus "
                    "extract_report.csv listing skipped proteins)")
        ->required();
  }

  SelectArgs select_args;
  {
    CLI::App* cmd = app.add_subcommand(
        "select", "Rank features by max-relevance min-redundancy");
    cmd->add_option("--data", select_args.data,
                    "Feature CSV with a label column")
        ->required();
    cmd->add_option("--label-column", select_args.label_column,
                    "Label column name")
        ->capture_default_str();
    cmd->add_option("--out", select_args.out, "Ranking CSV")->required();
    cmd->add_option("--fraction", select_args.fraction,
                    "Fraction of features kept in --selected-out")
        ->capture_default_str();
    cmd->add_option("--selected-out", select_args.selected_out,
                    "Optional CSV carrying the kept columns plus the label");
  }

  TrainArgs train_args;
  {
    CLI::App* cmd =
        app.add_subcommand("train", "Train the coupled two-view model");
    cmd->add_option("--view-a", train_args.view_a, "View A feature CSV");
    cmd->add_option("--view-b", train_args.view_b, "View B feature CSV");
    cmd->add_option("--labels", train_args.labels, "Label CSV");
    cmd->add_option("--two-view", train_args.two_view,
                    "Single CSV with a_*/b_* prefixed feature columns "
                    "(alternative to --view-a/--view-b/--labels)");
    cmd->add_option("--label-column", train_args.label_column,
                    "Label column name")
        ->capture_default_str();
    cmd->add_option("--model-out", train_args.model_out, "Model file")
        ->required();
    cmd->add_option("--report-out", train_args.report_out,
                    "Training report path (default: stdout)");
    cmd->add_option("--rule", train_args.rule,
                    "Decision rule scored in grid search: view-a, view-b, "
                    "combined or vote")
        ->capture_default_str();
    cmd->add_option("--c1", train_args.c1, "View A fit weight")
        ->capture_default_str();
    cmd->add_option("--c2", train_args.c2, "View B fit weight")
        ->capture_default_str();
    cmd->add_option("--theta", train_args.theta,
                    "View B regularization weight")
        ->capture_default_str();
    cmd->add_option("--rho", train_args.rho, "Coupling weight")
        ->capture_default_str();
    cmd->add_option("--hidden", train_args.hidden, "Hidden width")
        ->capture_default_str();
    cmd->add_flag("--grid", train_args.grid,
                  "Cross-validated grid search over the default sweep");
    cmd->add_option("--grid-c1", train_args.grid_c1,
                    "Grid values for c1 (implies --grid)")
        ->delimiter(',');
    cmd->add_option("--grid-c2", train_args.grid_c2,
                    "Grid values for c2 (implies --grid)")
        ->delimiter(',');
    cmd->add_option("--grid-theta", train_args.grid_theta,
                    "Grid values for theta (implies --grid)")
        ->delimiter(',');
    cmd->add_option("--grid-rho", train_args.grid_rho,
                    "Grid values for rho (implies --grid)")
        ->delimiter(',');
    cmd->add_option("--grid-hidden", train_args.grid_hidden,
                    "Grid values for the hidden width (implies --grid)")
        ->delimiter(',');
    cmd->add_option("--folds", train_args.folds, "Cross-validation folds")
        ->capture_default_str();
  }

  PredictArgs predict_args;
  {
    CLI::App* cmd =
        app.add_subcommand("predict", "Apply a trained model to feature CSVs");
    cmd->add_option("--model", predict_args.model, "Model file")->required();
    cmd->add_option("--view-a", predict_args.view_a, "View A feature CSV")
        ->required();
    cmd->add_option("--view-b", predict_args.view_b, "View B feature CSV")
        ->required();
    cmd->add_option("--rule", predict_args.rule,
                    "Decision rule: view-a, view-b, combined or vote "
                    "(vote omits the score columns)")
        ->capture_default_str();
    cmd->add_option("--out", predict_args.out, "Prediction CSV")->required();
  }

  EvaluateArgs evaluate_args;
  {
    CLI::App* cmd = app.add_subcommand(
        "evaluate", "Score a prediction CSV against true labels");
    cmd->add_option("--predictions", evaluate_args.predictions,
                    "Prediction CSV from the predict command")
        ->required();
    cmd->add_option("--truth", evaluate_args.truth, "CSV with true labels")
        ->required();
    cmd->add_option("--label-column", evaluate_args.label_column,
                    "Label column in the truth file")
        ->capture_default_str();
    cmd->add_option("--out", evaluate_args.out, "Metrics CSV (metric,value)")
        ->required();
    cmd->add_option("--roc-out", evaluate_args.roc_out,
                    "Optional ROC points CSV (threshold,fpr,tpr)");
  }

  StatsArgs stats_args;
  {
    CLI::App* cmd = app.add_subcommand(
        "stats",
        "Rank-based comparison of models over datasets. Input: CSV whose "
        "first column names the dataset and whose remaining columns hold "
        "per-model accuracies");
    cmd->add_option("--table", stats_args.table, "Accuracy table CSV")
        ->required();
    cmd->add_option("--q-alpha", stats_args.q_alpha,
                    "Studentized range quantile for the critical difference");
    cmd->add_option("--out", stats_args.out, "Report path (default: stdout)");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("extract")) return run_extract(extract_args, global);
    if (app.got_subcommand("select")) return run_select(select_args, global);
    if (app.got_subcommand("train")) return run_train(train_args, global);
    if (app.got_subcommand("predict")) return run_predict(predict_args, global);
    if (app.got_subcommand("evaluate")) {
      return run_evaluate(evaluate_args, global);
    }
    if (app.got_subcommand("stats")) {
      stats_args.q_alpha_given =
          app.get_subcommand("stats")->count("--q-alpha") > 0;
      return run_stats(stats_args, global);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cerr << "error: no command\n";
  return 1;
}
