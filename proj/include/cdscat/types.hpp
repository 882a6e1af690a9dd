#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace cdscat {

using complex = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3d;
using CMat3 = Eigen::Matrix3cd;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

inline constexpr double pi = std::numbers::pi;
inline constexpr complex I{0.0, 1.0};

}  // namespace cdscat
