#pragma once

#include <Eigen/Dense>

namespace physarum {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

}  // namespace physarum
