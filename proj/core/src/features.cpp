#include "mvrvfl/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mvrvfl {

namespace {

void require_length(int have, int need, const char* family) {
  if (have < need) {
    throw std::invalid_argument(std::string(family) + " needs at least " +
                                std::to_string(need) + " residues, got " +
                                std::to_string(have));
  }
}

// Index of the unordered group pair {r, s}, r < s, in (1,2), (1,3), ...,
// (6,7) order.
int pair_index(int r, int s) {
  const int off = (r - 1) * (14 - r) / 2;
  return off + (s - r - 1);
}

// Region boundaries: 5 equal-width segments, every contiguous span except
// the full one, ordered by (start, end). Half-open residue ranges.
std::vector<std::pair<int, int>> mcd_regions(int length) {
  int cut[6];
  for (int s = 0; s <= 5; ++s) {
    cut[s] = static_cast<int>(static_cast<long>(s) * length / 5);
  }
  std::vector<std::pair<int, int>> regions;
  for (int i = 1; i <= 5; ++i) {
    for (int j = i; j <= 5; ++j) {
      if (i == 1 && j == 5) continue;
      regions.emplace_back(cut[i - 1], cut[j]);
    }
  }
  return regions;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Analysis filter pairs. The Daubechies-4 high-pass is the quadrature mirror
// g_k = (-1)^k h_{7-k} of the 8-tap scaling filter.
const std::vector<double>& low_filter(Wavelet w) {
  static const std::vector<double> haar = {0.70710678118654752,
                                           0.70710678118654752};
  static const std::vector<double> db4 = {
      0.23037781330885523,   0.71484657055254153,  0.63088076792959036,
      -0.027983769416983849, -0.18703481171888114, 0.030841381835986965,
      0.032883011666982945,  -0.010597401784997278};
  return w == Wavelet::haar ? haar : db4;
}

const std::vector<double>& high_filter(Wavelet w) {
  static const std::vector<double> haar = {0.70710678118654752,
                                           -0.70710678118654752};
  static const std::vector<double> db4 = [] {
    const auto& h = low_filter(Wavelet::db4);
    std::vector<double> g(h.size());
    for (std::size_t k = 0; k < h.size(); ++k) {
      g[k] = (k % 2 ? -1.0 : 1.0) * h[h.size() - 1 - k];
    }
    return g;
  }();
  return w == Wavelet::haar ? haar : db4;
}

// Half-sample symmetric extension: ... x1 x0 | x0 x1 ... xN-1 | xN-1 xN-2 ...
double extended_at(const std::vector<double>& x, long t) {
  const long n = static_cast<long>(x.size());
  while (t < 0 || t >= n) {
    if (t < 0) t = -t - 1;
    if (t >= n) t = 2 * n - 1 - t;
  }
  return x[static_cast<std::size_t>(t)];
}

std::vector<double> convolve_down(const std::vector<double>& x,
                                  const std::vector<double>& filt) {
  const std::size_t out_len = (x.size() + 1) / 2;
  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < filt.size(); ++j) {
      s += filt[j] * extended_at(x, 2 * static_cast<long>(i) + 1 -
                                        static_cast<long>(j));
    }
    out[i] = s;
  }
  return out;
}

}  // namespace

Vector mcd_features(const std::string& residues) {
  const int length = static_cast<int>(residues.size());
  require_length(length, 10, "mcd");
  std::vector<int> group(length);
  for (int i = 0; i < length; ++i) group[i] = amino_group(residues[i]);

  const auto regions = mcd_regions(length);
  Vector out(63 * static_cast<int>(regions.size()));
  int at = 0;
  for (const auto& [lo, hi] : regions) {
    const int len = hi - lo;
    // Composition: group proportions.
    double comp[7] = {};
    for (int i = lo; i < hi; ++i) comp[group[i] - 1] += 1.0;
    for (int g = 0; g < 7; ++g) out(at + g) = comp[g] / len;
    // Transition: cross-group adjacent pairs per adjacent slot.
    double trans[21] = {};
    for (int i = lo + 1; i < hi; ++i) {
      const int r = group[i - 1];
      const int s = group[i];
      if (r != s) trans[pair_index(std::min(r, s), std::max(r, s))] += 1.0;
    }
    for (int p = 0; p < 21; ++p) out(at + 7 + p) = trans[p] / (len - 1);
    // Distribution: five occurrence landmarks per group, scaled by the
    // region length; absent groups contribute zeros.
    for (int g = 1; g <= 7; ++g) {
      std::vector<int> pos;  // 1-based within the region
      for (int i = lo; i < hi; ++i) {
        if (group[i] == g) pos.push_back(i - lo + 1);
      }
      const int base = at + 28 + (g - 1) * 5;
      if (pos.empty()) {
        for (int q = 0; q < 5; ++q) out(base + q) = 0.0;
        continue;
      }
      const int count = static_cast<int>(pos.size());
      const int marks[5] = {1, (count + 3) / 4, (count + 1) / 2,
                            (3 * count + 3) / 4, count};
      for (int q = 0; q < 5; ++q) {
        out(base + q) = static_cast<double>(pos[marks[q] - 1]) / len;
      }
    }
    at += 63;
  }
  return out;
}

Vector nmbac_features(const std::string& residues) {
  const int length = static_cast<int>(residues.size());
  require_length(length, 31, "nmbac");
  const auto& table = phys_chem_standardized();
  std::vector<int> idx(length);
  for (int i = 0; i < length; ++i) idx[i] = amino_index(residues[i]);

  Vector out(200);
  int at = 0;
  for (int j = 0; j < 6; ++j) {
    for (int lag = 1; lag <= 30; ++lag) {
      double s = 0.0;
      for (int i = 0; i + lag < length; ++i) {
        s += table(idx[i], j) * table(idx[i + lag], j);
      }
      out(at++) = s / (length - lag);
    }
  }
  for (int a = 0; a < 20; ++a) {
    double count = 0.0;
    for (int i = 0; i < length; ++i) {
      if (idx[i] == a) count += 1.0;
    }
    out(at++) = count / length;
  }
  return out;
}

Vector pssm_ab_features(const PssmProfile& profile) {
  const int length = profile.length();
  require_length(length, 20, "pssm_ab");
  Vector out(400);
  for (int j = 1; j <= 20; ++j) {
    const int lo = static_cast<int>(static_cast<long>(j - 1) * length / 20);
    const int hi = static_cast<int>(static_cast<long>(j) * length / 20);
    for (int c = 0; c < 20; ++c) {
      double s = 0.0;
      for (int r = lo; r < hi; ++r) s += profile.scores(r, c);
      out((j - 1) * 20 + c) = s / (hi - lo);
    }
  }
  return out;
}

Vector psepssm_features(const PssmProfile& profile) {
  const int length = profile.length();
  require_length(length, 16, "psepssm");
  Vector out(320);
  for (int j = 0; j < 20; ++j) {
    out(j) = profile.scores.col(j).mean();
  }
  int at = 20;
  for (int zeta = 1; zeta <= 15; ++zeta) {
    for (int j = 0; j < 20; ++j) {
      double s = 0.0;
      for (int i = 0; i + zeta < length; ++i) {
        const double d = profile.scores(i, j) - profile.scores(i + zeta, j);
        s += d * d;
      }
      out(at++) = s / (length - zeta);
    }
  }
  return out;
}

Wavelet parse_wavelet(const std::string& name) {
  if (name == "haar") return Wavelet::haar;
  if (name == "db4") return Wavelet::db4;
  throw std::invalid_argument("unknown wavelet '" + name +
                              "' (expected haar or db4)");
}

std::string wavelet_name(Wavelet w) {
  return w == Wavelet::haar ? "haar" : "db4";
}

DwtBands dwt_step(const std::vector<double>& signal, Wavelet wavelet) {
  if (signal.empty()) throw std::invalid_argument("dwt of an empty signal");
  return DwtBands{convolve_down(signal, low_filter(wavelet)),
                  convolve_down(signal, high_filter(wavelet))};
}

std::vector<double> dct2_orthonormal(const std::vector<double>& signal,
                                     int n_coeffs) {
  const int m = static_cast<int>(signal.size());
  std::vector<double> out(static_cast<std::size_t>(n_coeffs), 0.0);
  for (int k = 0; k < n_coeffs && k < m; ++k) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) {
      s += signal[i] *
           std::cos(std::numbers::pi * (2.0 * i + 1.0) * k / (2.0 * m));
    }
    out[k] = s * std::sqrt((k == 0 ? 1.0 : 2.0) / m);
  }
  return out;
}

Vector pssm_dwt_features(const PssmProfile& profile, Wavelet wavelet) {
  const int length = profile.length();
  require_length(length, 16, "pssm_dwt");
  Vector out(1040);
  int at = 0;
  for (int c = 0; c < 20; ++c) {
    std::vector<double> signal(length);
    for (int i = 0; i < length; ++i) signal[i] = profile.scores(i, c);
    for (int level = 0; level < 4; ++level) {
      const DwtBands bands = dwt_step(signal, wavelet);
      out(at++) = mean_of(bands.approx);
      out(at++) = median_of(bands.approx);
      out(at++) = *std::max_element(bands.approx.begin(), bands.approx.end());
      out(at++) = *std::min_element(bands.approx.begin(), bands.approx.end());
      out(at++) = mean_of(bands.detail);
      out(at++) = median_of(bands.detail);
      out(at++) = *std::max_element(bands.detail.begin(), bands.detail.end());
      out(at++) = *std::min_element(bands.detail.begin(), bands.detail.end());
      const auto dct = dct2_orthonormal(bands.approx, 5);
      for (double v : dct) out(at++) = v;
      signal = bands.approx;
    }
  }
  return out;
}

const std::vector<FeatureFamily>& feature_families() {
  static const std::vector<FeatureFamily> families = {
      {"mcd", 882, false},     {"nmbac", 200, false},
      {"psepssm", 320, true},  {"pssm_ab", 400, true},
      {"pssm_dwt", 1040, true}};
  return families;
}

const FeatureFamily* find_family(const std::string& name) {
  for (const auto& f : feature_families()) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

}  // namespace mvrvfl
