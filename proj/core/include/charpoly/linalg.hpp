#pragma once

#include <complex>

#include <Eigen/Dense>

namespace charpoly {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct LogDet {
    double log_modulus;  // -inf for singular input
    double phase;        // in (-pi, pi]
};

// log|det A| and arg det A by LU with partial pivoting.
LogDet logdet(const ComplexMatrix& a);

struct SmallDet {
    Complex value;
    double rcond;  // reciprocal condition estimate in the 1-norm
};

// Determinant of an n x n matrix with n <= 8.
SmallDet det_small(const ComplexMatrix& a);

// Real-valued log-determinant with symmetric diagonal scaling: rows and
// columns are divided by sqrt|a_ii| before factorization. Returns
// (log|det|, sign).
std::pair<double, double> logdet_scaled(const Eigen::MatrixXd& log_abs, const Eigen::MatrixXd& sign);

}  // namespace charpoly
