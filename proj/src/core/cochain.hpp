#pragma once

#include <Eigen/Dense>

namespace fdf {

/// Real coefficient vector over the basis p-cells of a complex.
struct Chain {
  int degree = 0;
  Eigen::VectorXd values;
};

struct Cochain {
  int degree = 0;
  Eigen::VectorXd values;
};

} // namespace fdf
