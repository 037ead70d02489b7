#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "charpoly/errors.hpp"
#include "charpoly/specfun.hpp"

using namespace charpoly;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

// ln G(1+z) = z(1-z)/2 + (z/2) ln 2pi + z ln Gamma(z) - int_0^z ln Gamma(x) dx
double log_barnes_g_by_quadrature(double x) {
    const double z = x - 1.0;
    boost::math::quadrature::tanh_sinh<double> ts;
    const double I = ts.integrate([](double t) { return std::lgamma(t); }, 0.0, z);
    return z * (1.0 - z) / 2.0 + 0.5 * z * std::log(2.0 * pi) + z * std::lgamma(z) - I;
}

}  // namespace

TEST_CASE("log_gamma") {
    CHECK(log_gamma(1.0) == Approx(0.0));
    CHECK(log_gamma(5.0) == Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(log_gamma(0.5) == Approx(0.5 * std::log(pi)).epsilon(1e-14));
    for (double x : {0.1, 1.7, 12.3, 170.5})
        CHECK(log_gamma(x) == Approx(std::lgamma(x)).epsilon(1e-13));
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
}

TEST_CASE("log_barnes_g") {
    CHECK(std::abs(log_barnes_g(1.0)) < 1e-14);
    CHECK(std::abs(log_barnes_g(2.0)) < 1e-14);
    CHECK(std::abs(log_barnes_g(3.0)) < 1e-14);
    CHECK(log_barnes_g(4.0) == Approx(std::log(2.0)).epsilon(1e-13));
    CHECK(log_barnes_g(3.5) == Approx(log_barnes_g_by_quadrature(3.5)).epsilon(1e-11));
    CHECK(log_barnes_g(1.5) == Approx(log_barnes_g_by_quadrature(1.5)).epsilon(1e-11));
    // G(x+1) = Gamma(x) G(x)
    for (double x : {0.3, 2.2, 7.9})
        CHECK(log_barnes_g(x + 1.0) == Approx(std::lgamma(x) + log_barnes_g(x)).epsilon(1e-12));
}

TEST_CASE("regularized incomplete gamma") {
    for (double x : {0.0, 0.01, 1.0, 7.5, 40.0})
        CHECK(reg_lower_gamma(1.0, x) == Approx(-std::expm1(-x)).epsilon(1e-14));
    CHECK(reg_lower_gamma(3.2, 0.0) == 0.0);
    boost::math::quadrature::gauss_kronrod<double, 31> gk;
    const double a = 2.5, x = 1.3;
    const double q = gk.integrate([&](double t) { return std::pow(t, a - 1.0) * std::exp(-t); }, 0.0, x, 15, 1e-15) /
                     std::tgamma(a);
    CHECK(reg_lower_gamma(a, x) == Approx(q).epsilon(1e-12));
    CHECK(reg_lower_gamma(a, x) + reg_upper_gamma(a, x) == Approx(1.0).epsilon(1e-14));
    // Large-x expansion Gamma(a, x) ~ x^{a-1} e^{-x} sum_m (a-1)...(a-m)/x^m, finite for integer a.
    for (double x : {400.0, 1000.0}) {
        double s = 0.0, term = 1.0;
        for (int m = 0; m < 30; ++m) {
            s += term;
            term *= (29.0 - m) / x;
        }
        const double ref = 29.0 * std::log(x) - x - std::lgamma(30.0) + std::log(s);
        CHECK(log_reg_upper_gamma(30.0, x) == Approx(ref).epsilon(1e-13));
    }
    CHECK(reg_upper_gamma(30.0, 1000.0) == 0.0);
}

TEST_CASE("regularized incomplete beta") {
    for (double x : {0.0, 0.25, 0.9, 1.0}) CHECK(reg_inc_beta(1.0, 1.0, x) == Approx(x).epsilon(1e-14));
    CHECK(reg_inc_beta(2.7, 0.4, 1.0) == Approx(1.0));
    boost::math::quadrature::gauss_kronrod<double, 31> gk;
    const double q = gk.integrate([](double t) { return t * (1.0 - t) * (1.0 - t); }, 0.0, 0.4, 15, 1e-15) /
                     (std::tgamma(2.0) * std::tgamma(3.0) / std::tgamma(5.0));
    CHECK(reg_inc_beta(2.0, 3.0, 0.4) == Approx(q).epsilon(1e-13));
    CHECK_THROWS_AS(reg_inc_beta(1.0, 1.0, 1.5), DomainError);
}

TEST_CASE("real erfc") {
    CHECK(charpoly::erfc(0.0) == 1.0);
    for (double x : {0.1, 0.8, 2.5, 6.0}) CHECK(charpoly::erfc(x) == Approx(2.0 - charpoly::erfc(-x)).epsilon(1e-15));
    boost::math::quadrature::exp_sinh<double> es;
    const double q = 2.0 / std::sqrt(pi) * es.integrate([](double s) { return std::exp(-(1.0 + s) * (1.0 + s)); });
    CHECK(charpoly::erfc(1.0) == Approx(q).epsilon(1e-13));
}

TEST_CASE("complex erfc against the horizontal-ray integral") {
    // erfc(z) = (2/sqrt(pi)) int_0^inf exp(-(z+s)^2) ds for any z
    boost::math::quadrature::exp_sinh<double> es;
    for (std::complex<double> z : {std::complex<double>(0.3, 0.4), {1.2, -0.7}, {3.1, 2.0}, {-0.8, 1.5}, {4.0, 0.1}}) {
        auto part = [&](bool im) {
            return es.integrate([&](double s) {
                const auto v = std::exp(-(z + s) * (z + s));
                return im ? v.imag() : v.real();
            });
        };
        const std::complex<double> q = 2.0 / std::sqrt(pi) * std::complex<double>(part(false), part(true));
        CHECK(std::abs(charpoly::erfc(z) - q) <= 1e-12 * std::max(1.0, std::abs(q)));
    }
    for (double x : {-2.0, 0.0, 0.7, 3.3})
        CHECK(charpoly::erfc(std::complex<double>(x, 0.0)).real() == Approx(std::erfc(x)).epsilon(1e-14));
}
