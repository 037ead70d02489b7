#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "charpoly/dualities.hpp"
#include "charpoly/ensembles.hpp"
#include "charpoly/errors.hpp"

using namespace charpoly;

TEST_CASE("Ginibre entries have variance 1/N") {
    Rng rng(42);
    const int N = 4, draws = 100000;
    double s2 = 0.0, s4 = 0.0;
    Complex s1 = 0.0;
    for (int i = 0; i < draws; ++i) {
        const Complex e = sample_ginibre(N, rng)(1, 2);
        s1 += e;
        s2 += std::norm(e);
        s4 += std::norm(e) * std::norm(e);
    }
    const double m2 = s2 / draws, se2 = std::sqrt((s4 / draws - m2 * m2) / draws);
    CHECK(std::abs(m2 - 0.25) < 3.0 * se2);
    const double se1 = std::sqrt(0.25 / 2.0 / draws);
    CHECK(std::abs(s1.real() / draws) < 3.0 * se1);
    CHECK(std::abs(s1.imag() / draws) < 3.0 * se1);
}

TEST_CASE("Ginibre spectral radius at N=200 is close to 1") {
    Rng rng(3);
    for (int rep = 0; rep < 3; ++rep) {
        Eigen::ComplexEigenSolver<ComplexMatrix> es(sample_ginibre(200, rng), false);
        const double r = es.eigenvalues().cwiseAbs().maxCoeff();
        CHECK(r > 0.9);
        CHECK(r < 1.25);
    }
}

TEST_CASE("Haar unitary is unitary") {
    Rng rng(5);
    const ComplexMatrix u = sample_haar_unitary(7, rng);
    CHECK((u.adjoint() * u - ComplexMatrix::Identity(7, 7)).norm() < 1e-13);
}

TEST_CASE("truncated CUE") {
    Rng rng(9);
    const int draws = 100000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double v = std::norm(sample_truncated_cue(2, 1, rng)(0, 0));
        s += v;
        s2 += v * v;
    }
    const double m = s / draws, se = std::sqrt((s2 / draws - m * m) / draws);
    CHECK(std::abs(m - 0.5) < 3.0 * se);
    CHECK_THROWS_AS(sample_truncated_cue(3, 3, rng), SizeError);
}

TEST_CASE("mc_moment") {
    SUBCASE("N=1 at the origin") {
        const MCEstimate e = mc_moment(Ginibre{1}, {{Complex(0.0, 0.0)}, {2.0}}, 50000, 1);
        CHECK(std::abs(e.value() - 1.0) < 3.0 * e.stderr_shifted);
    }
    SUBCASE("empty charge list") {
        const MCEstimate e = mc_moment(Ginibre{5}, {{}, {}}, 1000, 1);
        CHECK(e.value() == 1.0);
        CHECK(e.stderr_shifted == 0.0);
    }
    SUBCASE("N=8 against the exact duality") {
        const double ex = ginibre_moment_exact(8, 1, 0.5);
        const MCEstimate e = mc_moment(Ginibre{8}, {{Complex(0.5, 0.0)}, {2.0}}, 100000, 17, ex);
        CHECK(std::abs(e.mean_shifted - 1.0) < 3.0 * e.stderr_shifted);
    }
    SUBCASE("reproducible") {
        const ChargeConfiguration c{{Complex(0.2, 0.1)}, {1.3}};
        const MCEstimate a = mc_moment(TruncatedCUE{6, 3}, c, 3000, 99);
        const MCEstimate b = mc_moment(TruncatedCUE{6, 3}, c, 3000, 99);
        CHECK(a.mean_shifted == b.mean_shifted);
        CHECK(a.stderr_shifted == b.stderr_shifted);
        const MCEstimate d = mc_moment(TruncatedCUE{6, 3}, c, 3000, 100);
        CHECK(a.mean_shifted != d.mean_shifted);
    }
    SUBCASE("invalid charges") {
        CHECK_THROWS_AS(mc_moment(Ginibre{3}, {{Complex(0.0, 0.0)}, {-2.5}}, 10, 1), DomainError);
        CHECK_THROWS_AS(mc_moment(Ginibre{3}, {{Complex(0.0, 0.0)}, {}}, 10, 1), DomainError);
    }
}
