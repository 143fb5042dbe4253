#pragma once

#include <Eigen/Dense>

namespace lcmf {

template <typename Scalar> using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar> using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

using Mat3d = Mat3<double>;
using Vec3d = Vec3<double>;

} // namespace lcmf
