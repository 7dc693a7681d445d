#include "mvrvfl/sequence.hpp"

#include "mvrvfl/csv.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace mvrvfl {

namespace {

// Side-chain dipole / volume groups, 1..7, covering all 20 residues.
constexpr const char* kGroups[7] = {"AGV", "DE", "FPIL", "HQNW",
                                    "KR",  "TYMS", "C"};

// Ambiguity and non-standard codes folded into 'A'.
constexpr const char* kSanitizable = "BJOUXZ";

}  // namespace

int amino_index(char c) {
  for (std::size_t i = 0; i < kAminoOrder.size(); ++i) {
    if (kAminoOrder[i] == c) return static_cast<int>(i);
  }
  return -1;
}

int amino_group(char c) {
  for (int g = 0; g < 7; ++g) {
    for (const char* p = kGroups[g]; *p; ++p) {
      if (*p == c) return g + 1;
    }
  }
  throw std::invalid_argument(std::string("no residue group for '") + c +
                              "'");
}

const Eigen::Matrix<double, 20, 6>& phys_chem_table() {
  // Columns: Q1, Q2, SASA, H, NCISC, VSC. Rows follow kAminoOrder.
  static const Eigen::Matrix<double, 20, 6> table = [] {
    Eigen::Matrix<double, 20, 6> t;
    t << 0.046, 8.1, 1.181, 0.62, 0.007187, 27.5,    // A
        0.291, 10.5, 2.56, -2.53, 0.043587, 105,     // R
        0.134, 11.6, 1.655, -0.78, 0.005392, 58.7,   // N
        0.105, 13, 1.587, -0.9, -0.02382, 40,        // D
        0.128, 5.5, 1.461, 0.29, -0.03661, 44.6,     // C
        0.18, 10.5, 1.932, -0.85, 0.049211, 80.7,    // Q
        0.151, 12.3, 1.862, -0.74, 0.006802, 62,     // E
        0, 9, 0.881, 0.48, 0.179052, 0,              // G
        0.23, 10.4, 2.025, -0.4, -0.01069, 79,       // H
        0.186, 5.2, 1.81, 1.38, 0.021631, 93.5,      // I
        0.186, 4.9, 1.931, 1.06, 0.051672, 93.5,     // L
        0.219, 11.3, 2.258, -1.5, 0.017708, 100,     // K
        0.221, 5.7, 2.034, 0.64, 0.002683, 94.1,     // M
        0.29, 5.2, 2.228, 1.19, 0.037552, 115.5,     // F
        0.131, 8, 1.468, 0.12, 0.239531, 41.9,       // P
        0.062, 9.2, 1.298, -0.18, 0.004627, 29.3,    // S
        0.108, 8.6, 1.525, -0.05, 0.003352, 51.3,    // T
        0.409, 5.4, 2.663, 0.81, 0.037977, 145.5,    // W
        0.298, 6.2, 2.368, 0.26, 0.023599, 117.3,    // Y
        0.14, 5.9, 1.645, 1.08, 0.057004, 71.5;      // V
    return t;
  }();
  return table;
}

const Eigen::Matrix<double, 20, 6>& phys_chem_standardized() {
  static const Eigen::Matrix<double, 20, 6> table = [] {
    Eigen::Matrix<double, 20, 6> t = phys_chem_table();
    for (int j = 0; j < 6; ++j) {
      const double mean = t.col(j).mean();
      // Population standard deviation over the 20 residues.
      const double var = (t.col(j).array() - mean).square().sum() / 20.0;
      t.col(j) = (t.col(j).array() - mean) / std::sqrt(var);
    }
    return t;
  }();
  return table;
}

char sanitize_residue(char c, char* out) {
  const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (amino_index(up) >= 0) {
    *out = up;
    return -1;
  }
  for (const char* p = kSanitizable; *p; ++p) {
    if (*p == up) {
      *out = 'A';
      return up;
    }
  }
  throw std::invalid_argument(std::string("invalid residue '") + c + "'");
}

std::vector<ProteinSequence> parse_fasta(const std::string& text,
                                         std::vector<std::string>* warnings) {
  std::vector<ProteinSequence> out;
  std::istringstream in(text);
  std::string line;
  bool have_record = false;
  ProteinSequence cur;
  auto finish = [&] {
    if (!have_record) return;
    if (cur.residues.empty()) {
      throw std::runtime_error("fasta record '" + cur.id +
                               "' has an empty sequence");
    }
    out.push_back(std::move(cur));
    cur = {};
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '>') {
      finish();
      have_record = true;
      std::istringstream header(line.substr(1));
      header >> cur.id;
      if (cur.id.empty()) {
        throw std::runtime_error("fasta header with empty id");
      }
      continue;
    }
    if (!have_record) {
      throw std::runtime_error("fasta sequence data before any '>' header");
    }
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      char clean = 0;
      char replaced;
      try {
        replaced = sanitize_residue(c, &clean);
      } catch (const std::invalid_argument&) {
        throw std::runtime_error("fasta record '" + cur.id +
                                 "': invalid residue '" + c + "' at position " +
                                 std::to_string(cur.residues.size() + 1));
      }
      if (replaced != -1 && warnings) {
        warnings->push_back("protein " + cur.id + ": residue '" +
                            std::string(1, replaced) + "' at position " +
                            std::to_string(cur.residues.size() + 1) +
                            " replaced by 'A'");
      }
      cur.residues += clean;
    }
  }
  finish();
  return out;
}

PssmProfile parse_pssm(const std::string& text, const std::string& id,
                       std::vector<std::string>* warnings) {
  PssmProfile profile;
  profile.id = id;
  std::vector<std::array<double, 20>> rows;
  std::istringstream in(text);
  std::string line;
  bool in_block = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    const int expected = static_cast<int>(rows.size()) + 1;
    long pos = 0;
    const bool numbered =
        tokens.size() >= 2 && tokens[1].size() == 1 &&
        std::isalpha(static_cast<unsigned char>(tokens[1][0])) &&
        [&] {
          char* end = nullptr;
          pos = std::strtol(tokens[0].c_str(), &end, 10);
          return end == tokens[0].c_str() + tokens[0].size() && pos > 0;
        }();
    if (!numbered) {
      if (in_block) break;  // footer reached
      continue;             // header noise
    }
    if (pos != expected) {
      throw std::runtime_error("pssm " + id + ": row for position " +
                               std::to_string(pos) + " where position " +
                               std::to_string(expected) + " was expected");
    }
    in_block = true;
    if (tokens.size() < 22) {
      throw std::runtime_error("pssm " + id + ": row " + std::to_string(pos) +
                               " has fewer than 20 scores");
    }
    std::array<double, 20> scores;
    for (int j = 0; j < 20; ++j) {
      scores[j] = parse_number(tokens[2 + j], "pssm " + id + " row " +
                                                  std::to_string(pos) +
                                                  " score " +
                                                  std::to_string(j + 1));
    }
    char clean = 0;
    char replaced;
    try {
      replaced = sanitize_residue(tokens[1][0], &clean);
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("pssm " + id + ": unknown residue letter '" +
                               tokens[1] + "' at position " +
                               std::to_string(pos));
    }
    if (replaced != -1 && warnings) {
      warnings->push_back("pssm " + id + ": residue '" +
                          std::string(1, replaced) + "' at position " +
                          std::to_string(pos) + " replaced by 'A'");
    }
    profile.residues += clean;
    rows.push_back(scores);
  }
  if (rows.empty()) {
    throw std::runtime_error("pssm " + id + ": no score rows found");
  }
  profile.scores.resize(static_cast<int>(rows.size()), 20);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < 20; ++j) {
      profile.scores(static_cast<int>(i), j) = rows[i][j];
    }
  }
  return profile;
}

}  // namespace mvrvfl
