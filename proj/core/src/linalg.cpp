#include "charpoly/linalg.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "charpoly/errors.hpp"

namespace charpoly {

LogDet logdet(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw SizeError("logdet requires a square matrix");
    if (a.rows() == 0) return {0.0, 0.0};
    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    const auto& f = lu.matrixLU();
    double logmod = 0.0;
    double phase = lu.permutationP().determinant() < 0 ? std::numbers::pi : 0.0;
    for (Eigen::Index k = 0; k < f.rows(); ++k) {
        const double m = std::abs(f(k, k));
        if (m == 0.0 || !std::isfinite(m)) return {-std::numeric_limits<double>::infinity(), 0.0};
        logmod += std::log(m);
        phase += std::arg(f(k, k));
    }
    phase = std::remainder(phase, 2.0 * std::numbers::pi);
    if (phase <= -std::numbers::pi) phase += 2.0 * std::numbers::pi;
    return {logmod, phase};
}

SmallDet det_small(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw SizeError("det_small requires a square matrix");
    if (a.rows() > 8) throw SizeError("det_small supports n <= 8");
    if (a.rows() == 0) return {Complex(1.0), 1.0};
    Eigen::PartialPivLU<ComplexMatrix> lu(a);
    const Complex d = lu.determinant();
    double rcond = 0.0;
    if (std::abs(d) > 0.0) rcond = lu.rcond();
    return {d, rcond};
}

std::pair<double, double> logdet_scaled(const Eigen::MatrixXd& log_abs, const Eigen::MatrixXd& sign) {
    const Eigen::Index n = log_abs.rows();
    if (n == 0) return {0.0, 1.0};
    Eigen::VectorXd s(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        // row/column scale from the diagonal, falling back to the row maximum
        double d = log_abs(i, i);
        if (!std::isfinite(d)) d = log_abs.row(i).maxCoeff();
        s(i) = 0.5 * d;
    }
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = sign(i, j) * std::exp(log_abs(i, j) - s(i) - s(j));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    const double det = lu.determinant();
    if (det == 0.0 || !std::isfinite(det)) return {-std::numeric_limits<double>::infinity(), 0.0};
    return {std::log(std::abs(det)) + 2.0 * s.sum(), det > 0 ? 1.0 : -1.0};
}

}  // namespace charpoly
