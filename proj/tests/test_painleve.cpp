#include <doctest.h>

#include <cmath>

#include "charpoly/detail/fd.hpp"
#include "charpoly/errors.hpp"
#include "charpoly/gap.hpp"
#include "charpoly/painleve.hpp"

using namespace charpoly;
using doctest::Approx;

TEST_CASE("residual at the PIV boundary asymptote") {
    for (double k : {1.0, 2.0, 0.5}) {
        const double t = -1e6;
        const double s = -k * t - k * k / t, s1 = -k + k * k / (t * t), s2 = -2.0 * k * k / (t * t * t);
        CHECK(std::abs(residual(PIV{k}, t, s, s1, s2)) <= 1e-9);
    }
    CHECK(residual(PIV{0.0}, 1.3, 0.0, 0.0, 0.0) == 0.0);
}

TEST_CASE("PV residual from finite differences of lue_tail") {
    auto f = [](double x) { return log_lue_tail(1, 3.0, x); };
    for (double t : {0.5, 2.0, 6.0}) {
        const auto d = detail::central_derivatives(f, t, 0.05);
        const double r = residual(PV{1.0, 3.0, LaguerreGap::smallest}, t, t * d[1], d[1] + t * d[2], 2.0 * d[2] + t * d[3]);
        CHECK(std::abs(r) <= 1e-5);
    }
}

TEST_CASE("init_from_asymptote_p4") {
    const SigmaInit z = init_from_asymptote_p4(0.0, 1e3);
    CHECK(z.t0 == -1e3);
    CHECK(z.sigma == 0.0);
    CHECK(z.sigma_prime == 0.0);
    const SigmaInit i = init_from_asymptote_p4(1.0, 1e4);
    CHECK(i.t0 == -1e4);
    CHECK(i.sigma == Approx(1e4 + 1e-4).epsilon(1e-15));
    CHECK(i.sigma_prime == Approx(-1.0 + 1e-8).epsilon(1e-15));
}

TEST_CASE("init_from_gap") {
    const PV f{1.0, 2.0, LaguerreGap::smallest};
    const SigmaInit i = init_from_gap(f, 0.5);
    auto g = [](double x) { return log_lue_tail(1, 2.0, x); };
    const auto d = detail::central_derivatives(g, 0.5, 0.02);
    CHECK(i.sigma == Approx(0.5 * d[1]).epsilon(1e-8));
    CHECK(i.sigma_prime == Approx(d[1] + 0.5 * d[2]).epsilon(1e-7));
    CHECK_THROWS(init_from_gap(pvi_from_jue(1.0, 0.0, 0.0), 1.5));
}

TEST_CASE("PIV solution reproduces GUE gap probabilities") {
    const SigmaSolution sol = solve(PIV{1.0}, init_from_asymptote_p4(1.0, 1e4), -3.0);
    CHECK(F_from_sigma(sol, 0.0) == Approx(0.5).epsilon(1e-9));
    for (double x : {-3.0, -1.0, 0.5, 2.5}) CHECK(std::abs(F_from_sigma(sol, x) - 0.5 * std::erfc(-x / std::sqrt(2.0))) <= 1e-6);
    const SigmaSolution zero = solve(PIV{0.0}, init_from_asymptote_p4(0.0, 1e3), -1.0);
    for (double s : zero.sigma) CHECK(s == 0.0);
}

TEST_CASE("PV solution reproduces the k=1 Laguerre tail") {
    const PV f{1.0, 1.0, LaguerreGap::smallest};
    const SigmaSolution sol = solve(f, init_from_gap(f, 0.002), 8.0);
    for (double x : {0.3, 1.0, 4.0, 7.5}) CHECK(F_from_sigma(sol, x) == Approx((1.0 + x) * std::exp(-x)).epsilon(1e-6));
}

TEST_CASE("PVI solution for the uniform law") {
    const PVI f = pvi_from_jue(1.0, 0.0, 0.0);
    const SigmaSolution sol = solve_interval(f, init_from_gap(f, 0.5), 0.02, 0.9999);
    for (double x : {0.1, 0.4, 0.8}) CHECK(F_from_sigma(sol, x) == Approx(x).epsilon(1e-6));
    CHECK_THROWS_AS(F_from_sigma(sol, 0.001), ExtrapolationError);
}

TEST_CASE("scaling residuals degenerate cases") {
    CHECK(p5_to_p4_residual(0.0, 64, 1.0) == 0.0);
    CHECK(p6_to_p5_residual(0.0, 1.0, 64, 1.0) == 0.0);
    CHECK(p5_to_p4_residual(2.0, 256, 1.0) < p5_to_p4_residual(2.0, 64, 1.0));
}
