#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "charpoly/asymptotics.hpp"
#include "charpoly/dualities.hpp"
#include "charpoly/errors.hpp"
#include "charpoly/gap.hpp"

using namespace charpoly;
using doctest::Approx;

namespace {

double err(double a, double b) { return std::abs(std::expm1(a - b)); }

void check_trend(const std::vector<double>& e) {
    for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] < e[i - 1]);
    CHECK(e.back() < 0.1);
}

}  // namespace

TEST_CASE("bulk") {
    CHECK(ww_bulk(40, 0.0, 0.3) == 0.0);
    std::vector<double> e;
    for (int N : {50, 200, 800}) e.push_back(err(ginibre_moment_exact(N, 1, 0.5), ww_bulk(N, 2.0, 0.5)));
    check_trend(e);
}

TEST_CASE("edge") {
    CHECK(log_edge_F(1.0, 0.0) == Approx(std::log(0.5)).epsilon(1e-12));
    CHECK(ginibre_edge(100, 1.0, 1.0) - ww_bulk(100, 2.0, 1.0) == Approx(std::log(0.5)).epsilon(1e-12));
    CHECK(ginibre_edge(800, 1.0, 0.5) == Approx(ww_bulk(800, 2.0, 0.5)).epsilon(1e-12));
    std::vector<double> e;
    for (int N : {100, 400, 1600}) e.push_back(err(ginibre_moment_exact(N, 1, 1.0), ginibre_edge(N, 1.0, 1.0)));
    check_trend(e);
}

TEST_CASE("two charges in the bulk") {
    const Complex z = 0.1, u1 = 0.0;
    // Far apart the gap factor is 1 and only the log-covariance term remains.
    for (double s : {8.0, 15.0}) {
        const double b = bulk_two_charge(100, 1.0, 1.0, z, u1, s);
        const double w = ww_bulk(100, 2.0, z) + ww_bulk(100, 2.0, z + s / 10.0);
        CHECK(b - w == Approx(-2.0 * std::log(s / 10.0)).epsilon(1e-9));
    }
    CHECK(bulk_two_charge(60, 1.5, 0.0, 0.2, 0.3, 0.5) == Approx(ww_bulk(60, 3.0, 0.2 + 0.3 / std::sqrt(60.0))).epsilon(1e-13));
    CHECK_THROWS_AS(bulk_two_charge(60, 1.0, 1.0, 0.2, 0.3, 0.3), DomainError);
    std::vector<double> e;
    const Complex a(0.3, 0.1), b(-0.4, 0.5);
    for (int N : {8, 32, 128}) {
        const double sn = std::sqrt(double(N));
        e.push_back(err(correlator_finiteN(GinibreWeight{N}, {{a / sn, b / sn}, {2.0, 2.0}}), bulk_two_charge(N, 1.0, 1.0, 0.0, a, b)));
    }
    check_trend(e);
}

TEST_CASE("non-integer charge at the origin") {
    CHECK(noninteger_bulk(40, 2.0, 2.0, 0.7) == Approx(bulk_two_charge(40, 2.0, 2.0, 0.0, 0.0, 0.7)).epsilon(1e-12));
    std::vector<double> e;
    for (int N : {8, 32, 128})
        e.push_back(err(correlator_finiteN(InducedGinibre{N, 1.5}, {{Complex(0.7 / std::sqrt(N), 0.0)}, {2.0}}),
                        noninteger_bulk(N, 1.5, 1.0, 0.7)));
    check_trend(e);
}

TEST_CASE("multi-charge edge kernel") {
    for (double u : {-0.8, 0.0, 0.9}) {
        const double a = 2.0 * std::numbers::pi * edge_F_determinant({{u}, {u}}).real();
        CHECK(a == Approx(std::sqrt(2.0 * std::numbers::pi) * gap_cdf(GUE{1}, 2.0 * u)).epsilon(1e-10));
    }
    const EdgeVectors ev{{Complex(0.2, 0.1), Complex(-0.5, 0.3)}, {Complex(0.4, -0.2), Complex(0.1, 0.6)}};
    const Complex d = edge_F_determinant(ev), km = edge_F_karlin_mcgregor(ev);
    CHECK(std::abs(d - km) <= 1e-9 * std::abs(km));
    std::vector<double> e;
    for (int N : {50, 200, 800})
        e.push_back(err(ginibre_moment_exact(N, 1, 1.0 - 0.3 / std::sqrt(N)), edge_multi(N, 1.0, {{0.3}, {0.3}})));
    check_trend(e);
    CHECK_THROWS(edge_multi(200, 0.5, ev));
}

TEST_CASE("multi-charge bulk") {
    const Complex a(0.3, 0.1), b(-0.4, 0.5);
    CHECK(bulk_multi(200, 0.3, {{a}, {a}}) == Approx(ww_bulk(200, 2.0, 0.3 + a / std::sqrt(200.0))).epsilon(1e-13));
    CHECK(bulk_multi(50, 0.2, {{a, a, b}, {a, a, b}}) == Approx(bulk_two_charge(50, 2.0, 1.0, 0.2, a, b)).epsilon(1e-12));
    std::vector<double> e;
    for (int N : {8, 32, 128}) {
        const double sn = std::sqrt(double(N));
        e.push_back(err(correlator_finiteN(GinibreWeight{N}, {{0.2 + a / sn, 0.2 + b / sn}, {2.0, 2.0}}), bulk_multi(N, 0.2, {{a, b}, {a, b}})));
    }
    check_trend(e);
}

TEST_CASE("truncated CUE edge") {
    std::vector<double> e;
    for (int N : {40, 160, 640}) e.push_back(err(tcue_moment_exact(N + 2, N, 1, 1.0 - 1.0 / N), tcue_edge(N, 2.0, 1.0, 1.0)));
    check_trend(e);
    e.clear();
    for (int N : {50, 200, 800}) e.push_back(err(tcue_morris(N + 1, N, 2.0), tcue_edge(N, 1.0, 1.0, 1e-4)));
    check_trend(e);
}

TEST_CASE("exterior") {
    CHECK(ginibre_exterior(50, 0.0, 1.5) == 0.0);
    std::vector<double> e;
    for (int N : {50, 200, 800}) e.push_back(err(ginibre_moment_exact(N, 1, 1.5), ginibre_exterior(N, 1.0, 1.5)));
    check_trend(e);
    CHECK_THROWS_AS(ginibre_exterior(50, 1.0, 0.5), DomainError);
}

TEST_CASE("lemniscate asymptotics") {
    for (int d : {2, 3, 5}) {
        double s = 0.0;
        for (int l = 0; l < d; ++l) s += lemniscate_gamma(l, d) * lemniscate_gamma(l, d);
        CHECK(lemniscate_kappa(d) == Approx(0.25 * s).epsilon(1e-14));
    }
    CHECK(lemniscate_kappa(2) == 0.25);
    CHECK(lemniscate_asym(8, 2, 1.0, LemniscateRegime::super).kappa_d == 0.25);
    CHECK(lemniscate_asym(8, 2, 1.0, LemniscateRegime::super).conjectural);
    CHECK_FALSE(lemniscate_asym(8, 2, 0.3, LemniscateRegime::sub).conjectural);
    std::vector<double> e;
    for (int N : {1, 2, 4, 8}) e.push_back(err(lemniscate_partition(N, 2, 0.3), lemniscate_asym(N, 2, 0.3, LemniscateRegime::sub).log_value));
    check_trend(e);
    e.clear();
    for (int N : {4, 8, 16}) e.push_back(err(lemniscate_partition(N, 2, 1.0), lemniscate_asym(N, 2, 1.0, LemniscateRegime::super).log_value));
    check_trend(e);
}
