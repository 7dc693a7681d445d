#pragma once

#include "mvrvfl/types.hpp"

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace mvrvfl {

// Canonical residue order, also the column order of PSSM profiles.
inline constexpr std::array<char, 20> kAminoOrder = {
    'A', 'R', 'N', 'D', 'C', 'Q', 'E', 'G', 'H', 'I',
    'L', 'K', 'M', 'F', 'P', 'S', 'T', 'W', 'Y', 'V'};

// Index into kAminoOrder, or -1 for anything else.
int amino_index(char c);

// Seven physicochemical residue groups, 1-based ids, covering all 20 codes.
int amino_group(char c);

// 20 x 6 property table; rows follow kAminoOrder, columns are
// Q1, Q2, SASA, H, NCISC, VSC.
const Eigen::Matrix<double, 20, 6>& phys_chem_table();

// Same table standardized per column over the 20 rows: mean 0, population
// (1/20) standard deviation 1.
const Eigen::Matrix<double, 20, 6>& phys_chem_standardized();

// Uppercases and maps the ambiguity codes B, J, O, U, X, Z to 'A'.
// Returns -1 for a standard residue (after uppercasing), otherwise the
// original code that was replaced.
char sanitize_residue(char c, char* replaced);

struct ProteinSequence {
  std::string id;        // first whitespace-separated token of the header
  std::string residues;  // sanitized: every char is a standard residue
};

// Parses FASTA text. Residues are uppercased and sanitized; each replacement
// appends a note to `warnings` when given. Errors: sequence data before any
// header, a record with an empty body, or a residue outside the 20 standard
// codes plus the six sanitizable ones.
std::vector<ProteinSequence> parse_fasta(
    const std::string& text, std::vector<std::string>* warnings = nullptr);

// Position-specific scoring matrix: one row per residue, 20 columns in
// kAminoOrder holding the first score block of a PSI-BLAST ASCII profile.
struct PssmProfile {
  std::string id;
  std::string residues;  // sanitized, length == scores.rows()
  Matrix scores;         // L x 20

  int length() const { return static_cast<int>(scores.rows()); }
};

// Parses PSI-BLAST ASCII output. A data row is a line whose first token is
// the expected 1-based position and whose second token is a residue letter;
// the first 20 numeric tokens that follow are the score block. Header and
// footer lines are skipped; positions must be consecutive from 1. Errors:
// an attempted data row with fewer than 20 numeric scores (named by
// position), a position jump, an unknown residue letter, or no data rows.
PssmProfile parse_pssm(const std::string& text, const std::string& id,
                       std::vector<std::string>* warnings = nullptr);

}  // namespace mvrvfl
