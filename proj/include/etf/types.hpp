#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace etf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using IndexSet = std::vector<int>;

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace etf
