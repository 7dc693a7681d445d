#pragma once

#include "mvrvfl/sequence.hpp"
#include "mvrvfl/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace mvrvfl {

// Multi-scale composition/transition/distribution descriptor, 14 x 63 = 882.
// The sequence is cut into 5 equal-width segments (segment s covers
// [floor((s-1)L/5), floor(sL/5))); the 14 regions are all contiguous segment
// spans [i..j] except the full span, ordered by (start, end). Per region:
// 7 group proportions, 21 adjacent-pair transition rates T{r,s} = pairs with
// groups {r,s} in either order / (region length - 1) (same-group adjacency
// not counted), and 35 distribution landmarks: per group the 1-based in-region
// positions of the 1st, ceil(25%), ceil(50%), ceil(75%) and last occurrence,
// each divided by the region length (absent group -> five zeros).
// Requires L >= 10 so every region holds at least 2 residues.
Vector mcd_features(const std::string& residues);

// Normalized Moreau-Broto autocovariance over the standardized property
// table, 6 properties x 30 lags ordered property-major, followed by the 20
// residue frequencies in canonical order. 200 values; requires L >= 31.
Vector nmbac_features(const std::string& residues);

// Column means of 20 equal-width row blocks of the profile (block j covers
// rows [floor((j-1)L/20), floor(jL/20))), block-major. 400 values; L >= 20.
Vector pssm_ab_features(const PssmProfile& profile);

// Column means Q_j (20) followed by lagged square differences
// J_j^zeta = 1/(L-zeta) * sum_i (s_ij - s_(i+zeta)j)^2 for zeta = 1..15,
// zeta-major. Raw scores, 320 values; requires L >= 16.
Vector psepssm_features(const PssmProfile& profile);

enum class Wavelet { haar, db4 };

Wavelet parse_wavelet(const std::string& name);
std::string wavelet_name(Wavelet w);

// Four-level decimated wavelet decomposition of every profile column, 13
// values per (column, level): mean/median/max/min of the approximation band,
// the same four for the detail band, then the first 5 orthonormal DCT-II
// coefficients of the approximation (zero-padded when the band is shorter
// than 5). Column-major, then level, then the 13-slot order above;
// 20 x 4 x 13 = 1040 values. Requires L >= 16.
Vector pssm_dwt_features(const PssmProfile& profile,
                         Wavelet wavelet = Wavelet::haar);

// One decimated analysis step. The input is extended half-sample
// symmetrically (index t reflects as -t-1 below 0 and 2n-1-t above n-1) and
// band[i] = sum_j filter[j] * ext(2i+1-j) for i < ceil(n/2), so both bands
// have ceil(n/2) entries. The approximation band cascades to the next level.
struct DwtBands {
  std::vector<double> approx;
  std::vector<double> detail;
};
DwtBands dwt_step(const std::vector<double>& signal, Wavelet wavelet);

// First n_coeffs orthonormal DCT-II coefficients, zero-padded past the
// signal length.
std::vector<double> dct2_orthonormal(const std::vector<double>& signal,
                                     int n_coeffs);

// Feature family registry: dimension and required input kind.
struct FeatureFamily {
  std::string name;
  int dim;
  bool needs_pssm;  // false: sequence only
};
const std::vector<FeatureFamily>& feature_families();
const FeatureFamily* find_family(const std::string& name);

// Row-aligned per-family feature matrices for a set of proteins.
struct FeatureBank {
  std::vector<std::string> ids;
  std::map<std::string, Matrix> family;  // name -> ids.size() x dim
};

}  // namespace mvrvfl
