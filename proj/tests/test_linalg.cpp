#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "charpoly/linalg.hpp"

using namespace charpoly;

namespace {

Complex cofactor_det(const ComplexMatrix& a) {
    const auto n = a.rows();
    if (n == 1) return a(0, 0);
    Complex d = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        ComplexMatrix m(n - 1, n - 1);
        for (Eigen::Index r = 1; r < n; ++r)
            for (Eigen::Index c = 0, cc = 0; c < n; ++c)
                if (c != j) m(r - 1, cc++) = a(r, c);
        d += (j % 2 ? -1.0 : 1.0) * a(0, j) * cofactor_det(m);
    }
    return d;
}

ComplexMatrix random_matrix(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    ComplexMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
    return a;
}

}  // namespace

TEST_CASE("logdet of simple matrices") {
    const LogDet id = logdet(ComplexMatrix::Identity(5, 5));
    CHECK(id.log_modulus == doctest::Approx(0.0));
    CHECK(id.phase == doctest::Approx(0.0));
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = Complex(0.0, 2.0);
    d(1, 1) = 3.0;
    const LogDet ld = logdet(d);
    CHECK(ld.log_modulus == doctest::Approx(std::log(6.0)));
    CHECK(ld.phase == doctest::Approx(std::numbers::pi / 2));
    const LogDet s = logdet(ComplexMatrix::Zero(3, 3));
    CHECK(std::isinf(s.log_modulus));
    CHECK(s.log_modulus < 0.0);
}

TEST_CASE("logdet against cofactor expansion") {
    for (unsigned seed : {1u, 2u, 3u}) {
        for (int n : {3, 4, 6}) {
            const ComplexMatrix a = random_matrix(n, seed);
            const Complex ref = cofactor_det(a);
            const LogDet ld = logdet(a);
            CHECK(ld.log_modulus == doctest::Approx(std::log(std::abs(ref))).epsilon(1e-12));
            CHECK(std::abs(std::polar(1.0, ld.phase) - ref / std::abs(ref)) < 1e-12);
        }
    }
}

TEST_CASE("det_small") {
    ComplexMatrix one(1, 1);
    one(0, 0) = Complex(1.5, -2.0);
    CHECK(det_small(one).value == one(0, 0));
    ComplexMatrix p = ComplexMatrix::Zero(4, 4);
    p(0, 1) = p(1, 0) = p(2, 3) = p(3, 2) = 1.0;
    CHECK(std::abs(det_small(p).value - 1.0) < 1e-15);
    p(2, 3) = p(3, 2) = 0.0;
    p(2, 2) = p(3, 3) = 1.0;
    CHECK(std::abs(det_small(p).value + 1.0) < 1e-15);
    ComplexMatrix h(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) h(i, j) = Complex(1.0 / (i + j + 1), 0.1 * (i - j));
    const Complex ref = cofactor_det(h);
    CHECK(std::abs(det_small(h).value - ref) <= 1e-12 * std::abs(ref));
    CHECK(det_small(h).rcond > 0.0);
    CHECK(det_small(h).rcond < 1.0);
}

TEST_CASE("logdet_scaled matches the unscaled determinant") {
    Eigen::MatrixXd a(3, 3);
    a << 4.0, -1.0, 0.5, 2.0, 3.0, -1.0, 0.1, 0.2, 5.0;
    const Eigen::MatrixXd la = a.cwiseAbs().array().log().matrix();
    const Eigen::MatrixXd sg = a.unaryExpr([](double v) { return v < 0.0 ? -1.0 : 1.0; });
    const auto [l, s] = logdet_scaled(la, sg);
    CHECK(l == doctest::Approx(std::log(std::abs(a.determinant()))).epsilon(1e-13));
    CHECK(s == (a.determinant() < 0.0 ? -1.0 : 1.0));
}
