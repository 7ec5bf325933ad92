#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace qudit_phase {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;

enum class Basis { position, momentum };

} // namespace qudit_phase
