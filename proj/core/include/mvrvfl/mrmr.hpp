#pragma once

#include "mvrvfl/types.hpp"

#include <vector>

namespace mvrvfl {

// Plug-in mutual information in nats between an equal-width-binned feature
// and the two-valued class label (the label is used as a discrete variable
// directly). Values are binned by floor((v - min) / width) over [min, max],
// clamped to the top bin; a constant feature occupies a single bin and yields
// exactly 0. Empty cells contribute 0. Requires bins >= 2.
double mutual_information(const Vector& x, const std::vector<int>& y,
                          int bins);

// Feature-feature variant; both arguments are binned the same way.
double mutual_information(const Vector& a, const Vector& b, int bins);

// Greedy max-relevance min-redundancy ranking. The first pick maximizes
// relevance (MI to the label); each later pick minimizes
// redundancy - relevance, where redundancy is the mean MI to the features
// already selected. scores[i] is that objective at the moment order[i] was
// chosen, so scores[0] = -relevance of the first pick. Candidates whose
// objectives sit within a relative 1e-12 of the step minimum count as tied,
// and ties resolve to the lower feature index; equal-information candidates
// (for example two features that both separate the classes perfectly) differ
// only by rounding, while genuinely distinct count tables differ by far more.
struct MrmrRanking {
  std::vector<int> order;      // permutation of 0..m-1
  std::vector<double> scores;  // objective value at selection time
};

MrmrRanking mrmr_rank(const Matrix& x, const std::vector<int>& y, int bins);

// Columns of x reordered to the first ceil(fraction * m) entries of the
// ranking. Requires fraction in (0, 1].
Matrix select_fraction(const Matrix& x, const MrmrRanking& ranking,
                       double fraction);

}  // namespace mvrvfl
