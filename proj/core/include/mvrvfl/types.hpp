#pragma once

#include <Eigen/Dense>

namespace mvrvfl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

}  // namespace mvrvfl
