#include "mvrvfl/sequence.hpp"

#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

using namespace mvrvfl;

TEST_CASE("canonical residue order and indexes") {
  const std::string order = "ARNDCQEGHILKMFPSTWYV";
  for (int i = 0; i < 20; ++i) {
    CHECK(kAminoOrder[static_cast<std::size_t>(i)] == order[static_cast<std::size_t>(i)]);
    CHECK(amino_index(order[static_cast<std::size_t>(i)]) == i);
  }
  CHECK(amino_index('X') == -1);
  CHECK(amino_index('a') == -1);
}

TEST_CASE("every residue belongs to its fixed group") {
  const struct {
    const char* residues;
    int group;
  } expected[] = {{"AGV", 1}, {"DE", 2},   {"FPIL", 3}, {"HQNW", 4},
                  {"KR", 5},  {"TYMS", 6}, {"C", 7}};
  int covered = 0;
  for (const auto& e : expected) {
    for (const char* p = e.residues; *p; ++p) {
      CHECK(amino_group(*p) == e.group);
      ++covered;
    }
  }
  CHECK(covered == 20);
  CHECK_THROWS_AS(amino_group('X'), std::invalid_argument);
}

TEST_CASE("property table holds the fixed reference values") {
  const auto& t = phys_chem_table();
  // Row A: Q1, Q2, SASA, H, NCISC, VSC.
  CHECK(t(0, 0) == 0.046);
  CHECK(t(0, 1) == 8.1);
  CHECK(t(0, 2) == 1.181);
  CHECK(t(0, 3) == 0.62);
  CHECK(t(0, 4) == 0.007187);
  CHECK(t(0, 5) == 27.5);
  // Spot values across the table.
  CHECK(t(amino_index('D'), 3) == -0.9);
  CHECK(t(amino_index('W'), 5) == 145.5);
  CHECK(t(amino_index('G'), 0) == 0.0);
  CHECK(t(amino_index('G'), 5) == 0.0);
  CHECK(t(amino_index('R'), 4) == 0.043587);
  // Row V is the last row.
  CHECK(t(19, 0) == 0.14);
  CHECK(t(19, 1) == 5.9);
  CHECK(t(19, 2) == 1.645);
  CHECK(t(19, 3) == 1.08);
  CHECK(t(19, 4) == 0.057004);
  CHECK(t(19, 5) == 71.5);
}

TEST_CASE("standardized property columns have mean 0 and unit population std") {
  const auto& t = phys_chem_standardized();
  for (int j = 0; j < 6; ++j) {
    double mean = 0.0;
    for (int r = 0; r < 20; ++r) mean += t(r, j);
    mean /= 20.0;
    CHECK(std::abs(mean) <= 1e-12);
    double var = 0.0;
    for (int r = 0; r < 20; ++r) var += (t(r, j) - mean) * (t(r, j) - mean);
    CHECK(std::abs(std::sqrt(var / 20.0) - 1.0) <= 1e-12);
  }
  // Standardization preserves ordering within a column.
  CHECK(t(amino_index('W'), 5) > t(amino_index('G'), 5));
}

TEST_CASE("sanitize_residue uppercases and folds ambiguity codes to A") {
  char out = 0;
  CHECK(sanitize_residue('a', &out) == -1);
  CHECK(out == 'A');
  CHECK(sanitize_residue('w', &out) == -1);
  CHECK(out == 'W');
  for (char c : std::string("BJOUXZ")) {
    CHECK(sanitize_residue(c, &out) == c);
    CHECK(out == 'A');
  }
  CHECK(sanitize_residue('x', &out) == 'X');
  CHECK(out == 'A');
  CHECK_THROWS_AS(sanitize_residue('1', &out), std::invalid_argument);
  CHECK_THROWS_AS(sanitize_residue('*', &out), std::invalid_argument);
}

TEST_CASE("fasta parsing joins wrapped lines and takes the first header token") {
  const std::string text =
      ">sp|P1|NAME description words\nMKV\nLW\n\n>P2\nACDEF\n";
  const auto records = parse_fasta(text);
  REQUIRE(records.size() == 2);
  CHECK(records[0].id == "sp|P1|NAME");
  CHECK(records[0].residues == "MKVLW");
  CHECK(records[1].id == "P2");
  CHECK(records[1].residues == "ACDEF");
}

TEST_CASE("fasta sanitization warns about replaced residues") {
  std::vector<std::string> warnings;
  const auto records = parse_fasta(">P1\nMXKbV\n", &warnings);
  REQUIRE(records.size() == 1);
  CHECK(records[0].residues == "MAKAV");
  REQUIRE(warnings.size() == 2);
  CHECK(warnings[0].find("'X' at position 2") != std::string::npos);
  CHECK(warnings[1].find("'B' at position 4") != std::string::npos);
}

TEST_CASE("fasta errors: empty body, stray data, bad residue, empty id") {
  CHECK_THROWS_WITH_AS(parse_fasta(">P1\n>P2\nAC\n"),
                       doctest::Contains("empty sequence"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_fasta("ACDE\n"),
                       doctest::Contains("before any '>'"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_fasta(">P1\nAC1E\n"),
                       doctest::Contains("invalid residue '1'"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_fasta(">  \nACDE\n"),
                       doctest::Contains("empty id"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_fasta(">P1\nAC*D\n"),
                       doctest::Contains("position 3"), std::runtime_error);
}

namespace {

std::string pssm_row(int pos, char residue, const std::vector<int>& scores,
                     bool with_tail = true) {
  std::string line = "  " + std::to_string(pos) + " " + std::string(1, residue);
  for (int s : scores) line += "  " + std::to_string(s);
  if (with_tail) {
    // Percentage block and the two trailing info columns of the real format.
    for (int j = 0; j < 20; ++j) line += "  " + std::to_string((j * 5) % 100);
    line += "  0.36  0.08";
  }
  return line + "\n";
}

std::string pssm_header() {
  return "\nLast position-specific scoring matrix computed, weighted\n"
         "      A  R  N  D  C  Q  E  G  H  I  L  K  M  F  P  S  T  W  Y  V\n";
}

std::string pssm_footer() {
  return "\n                      K         Lambda\n"
         "Standard Ungapped    0.1397     0.3456\n";
}

}  // namespace

TEST_CASE("pssm parsing keeps the first 20 scores of each data row") {
  std::vector<int> s1(20);
  std::vector<int> s2(20);
  for (int j = 0; j < 20; ++j) {
    s1[static_cast<std::size_t>(j)] = j - 10;
    s2[static_cast<std::size_t>(j)] = 2 * j - 5;
  }
  const std::string text =
      pssm_header() + pssm_row(1, 'M', s1) + pssm_row(2, 'K', s2) +
      pssm_footer();
  const PssmProfile p = parse_pssm(text, "P1");
  CHECK(p.id == "P1");
  CHECK(p.length() == 2);
  CHECK(p.residues == "MK");
  for (int j = 0; j < 20; ++j) {
    CHECK(p.scores(0, j) == static_cast<double>(j - 10));
    CHECK(p.scores(1, j) == static_cast<double>(2 * j - 5));
  }
}

TEST_CASE("pssm parsing sanitizes residues with a warning") {
  std::vector<std::string> warnings;
  const std::vector<int> s(20, 1);
  const std::string text = pssm_header() + pssm_row(1, 'X', s) + pssm_footer();
  const PssmProfile p = parse_pssm(text, "P9", &warnings);
  CHECK(p.residues == "A");
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("'X' at position 1") != std::string::npos);
}

TEST_CASE("pssm errors: short row, position jump, no rows") {
  const std::vector<int> s(20, 1);
  const std::vector<int> short_s(19, 1);
  CHECK_THROWS_WITH_AS(
      parse_pssm(pssm_header() + pssm_row(1, 'M', short_s, false), "P1"),
      doctest::Contains("row 1 has fewer than 20 scores"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      parse_pssm(pssm_header() + pssm_row(1, 'M', s) + pssm_row(3, 'K', s),
                 "P1"),
      doctest::Contains("position 2 was expected"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_pssm(pssm_header() + pssm_footer(), "P1"),
                       doctest::Contains("no score rows"), std::runtime_error);
}

TEST_CASE("pssm footer lines after the block are ignored") {
  const std::vector<int> s(20, 2);
  const std::string text = pssm_header() + pssm_row(1, 'A', s) +
                           pssm_row(2, 'R', s) + pssm_footer() +
                           "  1 M garbage\n";
  const PssmProfile p = parse_pssm(text, "P1");
  CHECK(p.length() == 2);
}
