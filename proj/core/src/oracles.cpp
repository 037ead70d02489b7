#include "charpoly/oracles.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "charpoly/errors.hpp"

namespace charpoly::oracle {
namespace {

constexpr double kPi = std::numbers::pi;

// Trapezoid nodes in the angle; the integrands are smooth and periodic.
constexpr int kAngles = 64;

}  // namespace

double planar_pair_integral(const std::function<double(Complex)>& w, Complex center, double R, double tol) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    std::array<Complex, kAngles> dir;
    for (int l = 0; l < kAngles; ++l) dir[l] = std::polar(1.0, 2.0 * kPi * l / kAngles);
    const double dphi = 2.0 * kPi / kAngles;
    auto inner = [&](Complex l1) {
        auto radial = [&](double q) {
            const double r = q * q;
            if (r == 0.0) return 0.0;
            double s = 0.0;
            for (const Complex& d : dir) {
                const Complex l2 = center + r * d;
                s += w(l2) * std::norm(l1 - l2);
            }
            return 2.0 * q * r * s * dphi;
        };
        return GK::integrate(radial, 0.0, std::sqrt(R), 15, tol);
    };
    // r = q^2 smooths the algebraic behaviour of w at the center.
    auto outer = [&](double q) {
        const double r = q * q;
        if (r == 0.0) return 0.0;
        double s = 0.0;
        for (const Complex& d : dir) {
            const Complex l1 = center + r * d;
            const double wl = w(l1);
            if (wl != 0.0) s += wl * inner(l1);
        }
        return 2.0 * q * r * s * dphi;
    };
    return GK::integrate(outer, 0.0, std::sqrt(R), 15, tol);
}

double ginibre_n2_moment(double gamma, Complex z) {
    if (!(gamma > -2.0)) throw DomainError("gamma must exceed -2");
    const double R = std::abs(z) + 6.0;
    auto w = [&](Complex l) { return std::pow(std::abs(l - z), gamma) * std::exp(-2.0 * std::norm(l)); };
    auto w0 = [](Complex l) { return std::exp(-2.0 * std::norm(l)); };
    return planar_pair_integral(w, z, R) / planar_pair_integral(w0, z, R);
}

double ginibre_n2_induced(double gamma1, double k, Complex z) {
    const double R = std::abs(z) + 6.0;
    auto w = [&](Complex l) {
        return std::pow(std::abs(l), 2.0 * gamma1) * std::pow(std::abs(l - z), 2.0 * k) * std::exp(-2.0 * std::norm(l));
    };
    auto w0 = [](Complex l) { return std::exp(-2.0 * std::norm(l)); };
    return planar_pair_integral(w, 0.0, R) / planar_pair_integral(w0, 0.0, R);
}

double lemniscate_n1d2(double t) {
    auto w = [t](Complex l) {
        const Complex l2 = l * l;
        return std::exp(-2.0 * (std::norm(l2) - 2.0 * t * l2.real()));
    };
    return planar_pair_integral(w, 0.0, 2.5 + 2.0 * std::sqrt(std::abs(t)));
}

double tcue_n1_moment(int M, double gamma, Complex z) {
    if (M < 2) throw SizeError("need M >= 2");
    boost::math::quadrature::tanh_sinh<double> ts(12);
    const int n = 256;
    auto radial = [&](double r) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) {
            const Complex lam = std::polar(r, 2.0 * kPi * l / n);
            s += std::pow(std::abs(lam - z), gamma);
        }
        return r * std::pow(1.0 - r * r, M - 2) * s * (2.0 * kPi / n);
    };
    // Split at |z| where the radial integrand has a kink.
    const double rz = std::abs(z);
    double v = 0.0;
    if (rz > 0.0 && rz < 1.0)
        v = ts.integrate(radial, 0.0, rz, 1e-12) + ts.integrate(radial, rz, 1.0, 1e-12);
    else
        v = ts.integrate(radial, 0.0, 1.0, 1e-12);
    return (M - 1) / kPi * v;
}

double radial_norm(const std::function<double(double)>& w_of_r2, int j, double upper) {
    auto f = [&](double r) {
        const double w = w_of_r2(r);
        if (w == 0.0 || r == 0.0) return j == 0 ? w : 0.0;
        return std::exp(j * std::log(r) + std::log(w));
    };
    if (upper > 0.0) {
        boost::math::quadrature::tanh_sinh<double> ts;
        return kPi * ts.integrate(f, 0.0, upper, 1e-13);
    }
    boost::math::quadrature::exp_sinh<double> es;
    return kPi * es.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
}

ComplexMC hciz_haar(const std::vector<Complex>& u, const std::vector<Complex>& v, std::uint64_t samples,
                    std::uint64_t seed) {
    if (u.empty() || u.size() != v.size()) throw DomainError("hciz_haar needs equal nonempty vectors");
    const int k = static_cast<int>(u.size());
    auto trace = [&](Rng& rng) {
        const ComplexMatrix U = sample_haar_unitary(k, rng);
        Complex t = 0.0;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) t += U(i, j) * u[j] * std::conj(U(i, j)) * std::conj(v[i]);
        return std::exp(t);
    };
    return {mc_mean([&](Rng& r) { return trace(r).real(); }, samples, seed, 0.0),
            mc_mean([&](Rng& r) { return trace(r).imag(); }, samples, seed, 0.0)};
}

}  // namespace charpoly::oracle
