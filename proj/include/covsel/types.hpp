// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

#include <Eigen/Dense>

namespace covsel {

using Index = Eigen::Index;
using cplx = std::complex<double>;

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Which data enter the classification statistics: CUT plus secondary data
/// (A) or secondary data only (B).
enum class Approach { A, B };

inline const char* to_string(Approach a) { return a == Approach::A ? "A" : "B"; }

}  // namespace covsel
