#pragma once

#include <Eigen/Core>

namespace zonemv {

/// exp(M) by scaling and squaring with a degree-13 Padé approximant.
/// Throws std::invalid_argument for non-square or non-finite input.
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m);

}  // namespace zonemv
