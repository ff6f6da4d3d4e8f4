#pragma once

#include <complex>

#include <Eigen/Dense>

namespace smsec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;

}  // namespace smsec
