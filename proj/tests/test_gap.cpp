#include <doctest.h>

#include <cmath>
#include <numbers>

#include "charpoly/errors.hpp"
#include "charpoly/gap.hpp"

using namespace charpoly;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

// GUE{2} with weight exp(-x^2/2): by Andreief, P(max < x) = (A0 A2 - A1^2) / (full-line value),
// with A_j = int_{-inf}^x t^j e^{-t^2/2} dt in closed form.
double gue2_cdf(double x) {
    const double phi = std::sqrt(2.0 * pi) * 0.5 * std::erfc(-x / std::sqrt(2.0));
    const double e = std::exp(-0.5 * x * x);
    const double a0 = phi, a1 = -e, a2 = phi - x * e;
    const double full = 2.0 * pi;
    return (a0 * a2 - a1 * a1) / full;
}

// Gamma(n, x) for integer n
double upper_gamma_int(int n, double x) {
    double s = 0.0, term = 1.0;
    for (int m = 0; m < n; ++m) {
        s += term;
        term *= x / (m + 1);
    }
    return std::tgamma(n) * std::exp(-x) * s;
}

// LUE{2, 3} P(min > x) with B_j = Gamma(4 + j, x).
double lue23_tail(double x) {
    const double b0 = upper_gamma_int(4, x), b1 = upper_gamma_int(5, x), b2 = upper_gamma_int(6, x);
    return (b0 * b2 - b1 * b1) / (std::tgamma(4) * std::tgamma(6) - std::tgamma(5) * std::tgamma(5));
}

}  // namespace

TEST_CASE("normalisation constants") {
    CHECK(std::abs(log_norm_constant(LUE{1, 0.0})) < 1e-14);
    CHECK(log_norm_constant(GUE{1}) == Approx(0.5 * std::log(2.0 * pi)));
    CHECK(std::abs(log_norm_constant(JUE{1, 0.0, 0.0})) < 1e-14);
}

TEST_CASE("gap_cdf closed forms") {
    CHECK(gap_cdf(GUE{1}, 0.0) == Approx(0.5).epsilon(1e-15));
    for (double x : {0.1, 1.0, 5.0}) CHECK(gap_cdf(LUE{1, 0.0}, x) == Approx(-std::expm1(-x)).epsilon(1e-14));
    for (double x : {-2.0, 0.0, 0.7, 1.9}) CHECK(gap_cdf(GUE{2}, x) == Approx(gue2_cdf(x)).epsilon(1e-12));
    for (double x : {0.1, 0.5, 0.9}) CHECK(gap_cdf(JUE{1, 0.0, 0.0}, x) == Approx(x).epsilon(1e-14));
}

TEST_CASE("gap_cdf outside the support") {
    CHECK(gap_cdf(LUE{2, 1.0}, -1.0) == 0.0);
    CHECK(gap_cdf_flagged(LUE{2, 1.0}, -1.0).clamped);
    CHECK(gap_cdf(JUE{2, 1.0, 1.0}, 1.5) == 1.0);
    CHECK_THROWS_AS(gap_cdf(GUE{0}, 0.0), DomainError);
    CHECK_THROWS_AS(gap_cdf(LUE{1, -1.5}, 1.0), DomainError);
}

TEST_CASE("lue_tail") {
    for (double x : {0.3, 2.0, 9.0}) CHECK(lue_tail(1, 0.0, x) == Approx(std::exp(-x)).epsilon(1e-14));
    for (double x : {0.3, 2.0, 9.0}) CHECK(lue_tail(1, 1.0, x) == Approx((1.0 + x) * std::exp(-x)).epsilon(1e-13));
    CHECK(lue_tail(3, 2.0, 0.0) == 1.0);
    CHECK(lue_tail(2, 3.0, 1.2) == Approx(lue23_tail(1.2)).epsilon(1e-12));
    CHECK(log_lue_tail(2, 3.0, 60.0) == Approx(std::log(lue23_tail(60.0))).epsilon(1e-12));
}

TEST_CASE("gap_oracle agrees with gap_cdf") {
    for (int i = 0; i <= 8; ++i) {
        const double x = -2.0 + 0.5 * i;
        CHECK(std::abs(gap_oracle(GUE{2}, x) - gap_cdf(GUE{2}, x)) <= 1e-8);
    }
    CHECK(std::abs(gap_oracle(LUE{2, 3.0}, 4.0) - gap_cdf(LUE{2, 3.0}, 4.0)) <= 1e-8);
    CHECK(std::abs(gap_oracle(JUE{2, 1.0, 2.0}, 0.4) - gap_cdf(JUE{2, 1.0, 2.0}, 0.4)) <= 1e-8);
}

TEST_CASE("Laguerre scaling through the Jacobi route") {
    // lambda_max of LUE{k, a} over x equals the x -> inf limit of JUE{k, a, b} rescaled by b.
    const double x = 3.0, b = 4000.0;
    CHECK(gap_cdf(JUE{2, 1.0, b}, x / b) == Approx(gap_cdf(LUE{2, 1.0}, x)).epsilon(2e-3));
}
