#include "charpoly/gap.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "charpoly/errors.hpp"
#include "charpoly/linalg.hpp"
#include "charpoly/specfun.hpp"

namespace charpoly {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log|m_n| and sign of int_{-inf}^x t^n e^{-t^2/2} dt for n < count.
void gue_incomplete(double x, int count, std::vector<double>& la, std::vector<double>& sg) {
    la.assign(count, 0.0);
    sg.assign(count, 1.0);
    std::vector<double> m(count);
    const double g = std::exp(-0.5 * x * x);
    m[0] = std::sqrt(std::numbers::pi / 2.0) * std::erfc(-x / std::numbers::sqrt2);
    if (count > 1) m[1] = -g;
    double xp = 1.0;  // x^{n-1}
    for (int n = 2; n < count; ++n) {
        xp *= x;
        m[n] = (n - 1) * m[n - 2] - xp * g;
    }
    for (int n = 0; n < count; ++n) {
        la[n] = m[n] == 0.0 ? kNegInf : std::log(std::abs(m[n]));
        sg[n] = m[n] < 0.0 ? -1.0 : 1.0;
    }
}

double log_det_hankel(const std::vector<double>& la, const std::vector<double>& sg, int k) {
    Eigen::MatrixXd l(k, k), s(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            l(i, j) = la[i + j];
            s(i, j) = sg[i + j];
        }
    const auto [ld, sign] = logdet_scaled(l, s);
    if (sign < 0.0) return kNegInf;  // round-off at the lower end of the support
    return ld;
}

struct Support {
    double lo;
    double hi;
};

Support support_of(const GapEnsemble& e) {
    if (std::holds_alternative<GUE>(e)) return {kNegInf, std::numeric_limits<double>::infinity()};
    if (std::holds_alternative<LUE>(e)) return {0.0, std::numeric_limits<double>::infinity()};
    return {0.0, 1.0};
}

}  // namespace

void validate(const GapEnsemble& e) {
    std::visit(
        [](const auto& g) {
            if (g.k < 1) throw DomainError("gap ensemble size must be positive");
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, LUE>) {
                if (!(g.alpha > -1.0)) throw DomainError("LUE requires alpha > -1");
            } else if constexpr (std::is_same_v<T, JUE>) {
                if (!(g.alpha > -1.0) || !(g.beta > -1.0)) throw DomainError("JUE requires alpha, beta > -1");
            }
        },
        e);
}

int size_of(const GapEnsemble& e) {
    return std::visit([](const auto& g) { return g.k; }, e);
}

double log_norm_constant(const GapEnsemble& e) {
    validate(e);
    double s = 0.0;
    if (const auto* g = std::get_if<GUE>(&e)) {
        s = 0.5 * g->k * std::log(2.0 * std::numbers::pi);
        for (int j = 0; j < g->k; ++j) s += log_factorial(j + 1);
    } else if (const auto* l = std::get_if<LUE>(&e)) {
        for (int j = 0; j < l->k; ++j) s += log_gamma(l->alpha + j + 1) + log_gamma(j + 2.0);
    } else {
        const auto& u = std::get<JUE>(e);
        for (int j = 0; j < u.k; ++j)
            s += log_gamma(u.alpha + j + 1) + log_gamma(u.beta + j + 1) + log_gamma(j + 2.0) -
                 log_gamma(u.alpha + u.beta + u.k + j + 1);
    }
    return s;
}

double log_gap_cdf(const GapEnsemble& e, double x) {
    validate(e);
    const int k = size_of(e);
    const Support sup = support_of(e);
    if (std::isnan(x)) throw DomainError("gap_cdf at NaN");
    if (x <= sup.lo) return kNegInf;
    if (x >= sup.hi) return 0.0;
    std::vector<double> la(2 * k - 1), sg(2 * k - 1, 1.0);
    if (std::holds_alternative<GUE>(e)) {
        gue_incomplete(x, 2 * k - 1, la, sg);
    } else if (const auto* l = std::get_if<LUE>(&e)) {
        for (int n = 0; n < 2 * k - 1; ++n) {
            const double a = l->alpha + n + 1;
            la[n] = log_gamma(a) + log_reg_lower_gamma(a, x);
        }
    } else {
        const auto& u = std::get<JUE>(e);
        for (int n = 0; n < 2 * k - 1; ++n) {
            const double a = u.alpha + n + 1;
            const double b = u.beta + 1;
            la[n] = log_gamma(a) + log_gamma(b) - log_gamma(a + b) + log_reg_inc_beta(a, b, x);
        }
    }
    const double r = log_factorial(k) + log_det_hankel(la, sg, k) - log_norm_constant(e);
    return std::min(r, 0.0);
}

GapProbability gap_cdf_flagged(const GapEnsemble& e, double x) {
    const Support sup = support_of(e);
    if (x < sup.lo) return {0.0, true};
    if (x > sup.hi) return {1.0, true};
    return {std::exp(log_gap_cdf(e, x)), false};
}

double gap_cdf(const GapEnsemble& e, double x) { return gap_cdf_flagged(e, x).value; }

double log_lue_tail(int k, double alpha, double x) {
    validate(LUE{k, alpha});
    if (x <= 0.0) return 0.0;
    std::vector<double> la(2 * k - 1), sg(2 * k - 1, 1.0);
    for (int n = 0; n < 2 * k - 1; ++n) {
        const double a = alpha + n + 1;
        la[n] = log_gamma(a) + log_reg_upper_gamma(a, x);
    }
    const double r = log_factorial(k) + log_det_hankel(la, sg, k) - log_norm_constant(LUE{k, alpha});
    return std::min(r, 0.0);
}

double lue_tail(int k, double alpha, double x) { return std::exp(log_lue_tail(k, alpha, x)); }

double gap_oracle(const GapEnsemble& e, double x) {
    validate(e);
    const int k = size_of(e);
    if (k > 3) throw SizeError("gap_oracle supports k <= 3");
    const Support sup = support_of(e);
    if (x <= sup.lo) return 0.0;
    if (x >= sup.hi) return 1.0;

    std::function<double(double)> weight;
    if (std::holds_alternative<GUE>(e)) {
        weight = [](double t) { return std::exp(-0.5 * t * t); };
    } else if (const auto* l = std::get_if<LUE>(&e)) {
        const double a = l->alpha;
        weight = [a](double t) { return t <= 0.0 ? 0.0 : std::pow(t, a) * std::exp(-t); };
    } else {
        const auto u = std::get<JUE>(e);
        weight = [u](double t) {
            return (t <= 0.0 || t >= 1.0) ? 0.0 : std::pow(t, u.alpha) * std::pow(1.0 - t, u.beta);
        };
    }

    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    std::array<double, 3> pts{};
    std::function<double(int, double)> nest = [&](int d, double upper) -> double {
        auto f = [&, d](double t) {
            pts[d] = t;
            double v = weight(t);
            for (int i = 0; i < d; ++i) v *= (t - pts[i]) * (t - pts[i]);
            if (v == 0.0) return 0.0;
            return d + 1 == k ? v : v * nest(d + 1, upper);
        };
        return GK::integrate(f, sup.lo, upper, 12, 1e-12);
    };
    const double top = nest(0, x);
    const double all = nest(0, sup.hi);
    return top / all;
}

}  // namespace charpoly
