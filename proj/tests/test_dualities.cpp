#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>

#include "charpoly/dualities.hpp"
#include "charpoly/ensembles.hpp"
#include "charpoly/errors.hpp"
#include "charpoly/oracles.hpp"
#include "charpoly/specfun.hpp"

using namespace charpoly;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

// E|det(G - z)|^2 = N! N^{-N} sum_{j<=N} (N|z|^2)^j / j!
double ginibre_second_moment(int N, double z2) {
    double s = 0.0, term = 1.0;
    for (int j = 0; j <= N; ++j) {
        s += term;
        term *= N * z2 / (j + 1);
    }
    return std::lgamma(N + 1.0) - N * std::log(double(N)) + std::log(s);
}

// (1/2pi) int (1 + e^{-i th})^a exp(x e^{i th}) e^{-i m th} d th
double toeplitz_coefficient_by_quadrature(double a, double x, int m) {
    boost::math::quadrature::tanh_sinh<double> ts;
    auto f = [&](double th) {
        const Complex w = std::pow(Complex(1.0, 0.0) + std::polar(1.0, -th), a) * std::exp(x * std::polar(1.0, th)) *
                          std::polar(1.0, -m * th);
        return w.real();
    };
    return ts.integrate(f, -pi, pi) / (2.0 * pi);
}

// One eigenvalue of the M x M truncation, density (M-1)/pi (1-|l|^2)^{M-2}.
double tcue_n1_by_quadrature(int M, double gamma, Complex z) {
    boost::math::quadrature::gauss_kronrod<double, 31> gk;
    auto radial = [&](double r) {
        const int n = 512;
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::pow(std::abs(std::polar(r, 2.0 * pi * i / n) - z), gamma);
        return r * 2.0 * pi * s / n * (M - 1) / pi * std::pow(1.0 - r * r, M - 2);
    };
    const double rz = std::abs(z);
    return gk.integrate(radial, 0.0, rz, 15, 1e-13) + gk.integrate(radial, rz, 1.0, 15, 1e-13);
}

ComplexMatrix ginibre_shift(const ComplexMatrix& g, Complex z) { return g - z * ComplexMatrix::Identity(g.rows(), g.cols()); }

}  // namespace

TEST_CASE("ginibre_moment_exact") {
    CHECK(std::abs(ginibre_moment_exact(1, 1, 0.0)) < 1e-15);
    for (int N : {2, 5, 30}) {
        CHECK(ginibre_moment_exact(N, 1, 0.0) == Approx(std::lgamma(N + 1.0) - N * std::log(double(N))).epsilon(1e-13));
        for (double r : {0.3, 1.0, 1.7})
            CHECK(ginibre_moment_exact(N, 1, std::polar(r, 0.4)) == Approx(ginibre_second_moment(N, r * r)).epsilon(1e-12));
    }
    CHECK(std::exp(ginibre_moment_exact(2, 1, 0.5)) == Approx(0.8125).epsilon(1e-14));
}

TEST_CASE("Toeplitz route") {
    CHECK(ginibre_moment_toeplitz(5, 0.0, 0.4) == 0.0);
    for (auto [a, x, m] : {std::tuple{0.65, 0.72, 0}, {0.65, 0.72, 2}, {0.65, 0.72, -1}, {-0.4, 2.0, 1}, {2.0, 1.5, 3}})
        CHECK(ginibre_toeplitz_coefficient(a, x, m) == Approx(toeplitz_coefficient_by_quadrature(a, x, m)).epsilon(1e-9));
    for (int k : {1, 2})
        for (double z : {0.0, 0.4, 1.1})
            CHECK(ginibre_moment_toeplitz(6, 2.0 * k, z) == Approx(ginibre_moment_exact(6, k, z)).epsilon(1e-11));
    const double q = oracle::ginibre_n2_moment(1.3, 0.6);
    CHECK(std::exp(ginibre_moment_toeplitz(2, 1.3, 0.6)) == Approx(q).epsilon(1e-6));
    CHECK_THROWS_AS(ginibre_moment_toeplitz(4, -2.5, 0.3), DomainError);
}

TEST_CASE("Painleve route") {
    CHECK(ginibre_moment_pv(4, 1.3, 0.0) == Approx(ginibre_log_r0(4, 1.3)).epsilon(1e-14));
    CHECK(std::abs(ginibre_moment_pv(3, 1.3, 0.5) - ginibre_moment_toeplitz(3, 1.3, 0.5)) <= 1e-6);
    CHECK(std::abs(ginibre_moment_pv(4, 2.0, 0.7) - ginibre_moment_exact(4, 1, 0.7)) <= 1e-6);
}

TEST_CASE("truncated CUE moments") {
    CHECK(tcue_moment_exact(2, 1, 1, 0.0) == Approx(std::log(0.5)).epsilon(1e-15));
    CHECK(std::exp(tcue_moment_exact(3, 1, 1, 0.4)) == Approx(1.0 / 3.0 + 0.16).epsilon(1e-13));
    CHECK(std::exp(tcue_moment_exact(3, 1, 1, 0.4)) == Approx(tcue_n1_by_quadrature(3, 2.0, 0.4)).epsilon(1e-9));
    CHECK(std::exp(tcue_moment_toeplitz(3, 1, 1.3, 0.5)) == Approx(tcue_n1_by_quadrature(3, 1.3, 0.5)).epsilon(1e-6));
    CHECK(tcue_moment_toeplitz(5, 3, 0.0, 0.4) == 0.0);
    CHECK(tcue_moment_toeplitz(5, 3, 1.3, 1.0) == Approx(tcue_morris(5, 3, 1.3)).epsilon(1e-10));
    CHECK(tcue_moment_toeplitz(6, 4, 4.0, 0.6) == Approx(tcue_moment_exact(6, 4, 2, 0.6)).epsilon(1e-10));
    CHECK(tcue_moment_exact(6, 4, 2, 0.6) == Approx(tcue_moment_jue_factored(6, 4, 2, 0.6)).epsilon(1e-12));
    CHECK_THROWS(tcue_moment_exact(4, 4, 1, 0.2));
}

TEST_CASE("HCIZ") {
    const Complex a(0.4, 0.3), b(-0.2, 0.6), c(0.5, 0.1);
    CHECK(std::abs(hciz_ratio({a}, {b}) - std::exp(a * std::conj(b))) < 1e-15);
    CHECK(std::abs(hciz_ratio({a, a}, {b, b}) - std::exp(2.0 * a * std::conj(b))) < 1e-12);
    // Haar average over U(2) of exp Tr(U diag(a,a) U^dag conj diag(b,c)) with one double point
    Rng rng(21);
    const int n = 100000;
    Complex s = 0.0;
    double s2 = 0.0;
    const Complex u2 = Complex(-0.3, 0.1);
    for (int i = 0; i < n; ++i) {
        const ComplexMatrix U = sample_haar_unitary(2, rng);
        Eigen::Vector2cd du(a, u2);
        const ComplexMatrix A = U * du.asDiagonal() * U.adjoint();
        const Complex v = std::exp(A(0, 0) * std::conj(b) + A(1, 1) * std::conj(c));
        s += v;
        s2 += std::norm(v);
    }
    const Complex mean = s / double(n);
    const double se = std::sqrt((s2 / n - std::norm(mean)) / n);
    CHECK(std::abs(hciz_ratio({a, u2}, {b, c}) - mean) < 4.0 * se);
    const ComplexMatrix W = sample_haar_unitary(5, rng);
    const TraceIdentity t = hciz_trace_identity(W, a, u2, b, c, 2, 3);
    CHECK(std::abs(t.direct - t.explicit_) < 1e-12);
}

TEST_CASE("lemniscate partition function") {
    for (int N : {1, 3}) CHECK(lemniscate_partition(N, 1, 0.5) == Approx(N * N * 0.25 + log_ginibre_partition(N)).epsilon(1e-13));
    boost::math::quadrature::exp_sinh<double> es;
    for (auto [N, d] : {std::pair{1, 2}, {2, 3}, {3, 2}}) {
        const double nd = double(N) * d;
        double z0 = std::lgamma(nd + 1.0);
        for (int j = 0; j < N * d; ++j)
            z0 += std::log(2.0 * pi * es.integrate([&](double r) {
                return r > 0.0 ? std::exp((2 * j + 1) * std::log(r) - nd * std::pow(r, 2 * d)) : 0.0;
            }));
        CHECK(lemniscate_partition(N, d, 0.0) == Approx(z0).epsilon(1e-11));
    }
    CHECK(std::exp(lemniscate_partition(1, 2, 0.3)) == Approx(oracle::lemniscate_n1d2(0.3)).epsilon(1e-5));
}

TEST_CASE("finite-N correlators") {
    CHECK(correlator_finiteN(GinibreWeight{6}, {{Complex(0.2, 0.0), Complex(0.3, 0.0)}, {0.0, 0.0}}) == 0.0);
    CHECK(correlator_finiteN(GinibreWeight{6}, {{Complex(0.4, 0.1)}, {4.0}}) ==
          Approx(ginibre_moment_exact(6, 2, Complex(0.4, 0.1))).epsilon(1e-11));
    const double ex = correlator_finiteN(GinibreWeight{6}, {{Complex(0.2, 0.0), Complex(0.3, 0.0)}, {2.0, 2.0}});
    Rng rng(8);
    const int n = 100000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const ComplexMatrix g = sample_ginibre(6, rng);
        const double v = std::exp(2.0 * (logdet(ginibre_shift(g, 0.2)).log_modulus + logdet(ginibre_shift(g, 0.3)).log_modulus) - ex);
        s += v;
        s2 += v * v;
    }
    const double m = s / n, se = std::sqrt((s2 / n - m * m) / n);
    CHECK(std::abs(m - 1.0) < 3.0 * se);
    CHECK_THROWS(correlator_finiteN(GinibreWeight{6}, {{Complex(0.2, 0.0)}, {1.3}}));
}
