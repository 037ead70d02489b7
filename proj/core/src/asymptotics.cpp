#include "charpoly/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "charpoly/dualities.hpp"
#include "charpoly/errors.hpp"
#include "charpoly/gap.hpp"
#include "charpoly/painleve.hpp"
#include "charpoly/specfun.hpp"

namespace charpoly {
namespace {

constexpr double kPi = std::numbers::pi;
const double kLog2Pi = std::log(2.0 * kPi);

bool is_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

Complex det_upto3(const Complex* a, int k) {
    if (k == 1) return a[0];
    if (k == 2) return a[0] * a[3] - a[1] * a[2];
    return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) + a[2] * (a[3] * a[7] - a[4] * a[6]);
}

// Z_{1/2}(u, w, R+) with product Gauss-Legendre on [0, S], `panels` panels.
Complex km_integral(const std::vector<Complex>& u, const std::vector<Complex>& w, double S, int panels) {
    using GL = boost::math::quadrature::gauss<double, 20>;
    const auto& xa = GL::abscissa();
    const auto& wa = GL::weights();
    std::vector<double> s, ws;
    const double h = S / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (std::size_t i = 0; i < xa.size(); ++i) {
            const int signs = xa[i] == 0.0 ? 1 : 2;
            for (int sg = 0; sg < signs; ++sg) {
                s.push_back(mid + (sg ? -1.0 : 1.0) * 0.5 * h * xa[i]);
                ws.push_back(0.5 * h * wa[i]);
            }
        }
    }
    const int k = static_cast<int>(u.size());
    const std::size_t n = s.size();
    const double norm = 1.0 / std::sqrt(kPi);
    std::vector<Complex> P(k * n), Q(k * n);
    for (int i = 0; i < k; ++i)
        for (std::size_t a = 0; a < n; ++a) {
            P[i * n + a] = norm * std::exp(-(u[i] - s[a]) * (u[i] - s[a]));
            Q[i * n + a] = norm * std::exp(-(w[i] - s[a]) * (w[i] - s[a]));
        }
    Complex total = 0.0;
    std::array<Complex, 9> A, B;
    if (k == 1) {
        for (std::size_t a = 0; a < n; ++a) total += ws[a] * P[a] * Q[a];
        return total;
    }
    std::vector<std::size_t> idx(k);
    // Odometer over the k-fold product grid.
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
        double wt = 1.0;
        for (int j = 0; j < k; ++j) {
            wt *= ws[idx[j]];
            for (int i = 0; i < k; ++i) {
                A[i * k + j] = P[i * n + idx[j]];
                B[i * k + j] = Q[i * n + idx[j]];
            }
        }
        total += wt * det_upto3(A.data(), k) * det_upto3(B.data(), k);
        int j = 0;
        while (j < k && ++idx[j] == n) idx[j++] = 0;
        if (j == k) break;
    }
    return total;
}

}  // namespace

void EdgeVectors::validate() const {
    if (u.empty() || u.size() != v.size()) throw DomainError("edge vectors must be nonempty and of equal length");
}

double ww_bulk(int N, double gamma, Complex z) {
    if (!(gamma > -2.0)) throw DomainError("exponent gamma must exceed -2");
    return 0.5 * N * gamma * (std::norm(z) - 1.0) + gamma * gamma / 8.0 * std::log(double(N)) +
           0.25 * gamma * kLog2Pi - log_barnes_g(1.0 + 0.5 * gamma);
}

double log_edge_F(double k, double x) {
    if (!(k > -1.0)) throw DomainError("edge order k must exceed -1");
    if (k == 0.0) return 0.0;
    if (k >= 1.0 && is_integer(k)) return log_gap_cdf(GUE{static_cast<int>(std::round(k))}, x);
    const SigmaSolution sol = solve(PIV{k}, init_from_asymptote_p4(k, 1e4), x);
    return log_F_from_sigma(sol, x);
}

double ginibre_edge(int N, double k, Complex z) {
    const double r2 = std::norm(z);
    return N * k * (r2 - 1.0) + 0.5 * k * k * std::log(double(N)) + 0.5 * k * kLog2Pi - log_barnes_g(1.0 + k) +
           log_edge_F(k, std::sqrt(double(N)) * (1.0 - r2));
}

double bulk_two_charge(int N, double k1, double k2, Complex z, Complex u1, Complex u2) {
    if (k1 < k2) {
        std::swap(k1, k2);
        std::swap(u1, u2);
    }
    if (k2 < 0.0) throw DomainError("charges must be non-negative");
    const double sn = std::sqrt(double(N));
    const Complex z1 = z + u1 / sn, z2 = z + u2 / sn;
    if (k2 == 0.0) return ww_bulk(N, 2.0 * k1, z1);
    if (!is_integer(k2)) throw DomainError("the smaller charge must be an integer");
    const double sep = std::abs(z2 - z1);
    if (sep == 0.0) throw DomainError("coincident charges: use the merged single-charge formula");
    const double ln = std::log(double(N));
    return k1 * N * (std::norm(z1) - 1.0) + k2 * N * (std::norm(z2) - 1.0) + 0.5 * (k1 * k1 + k2 * k2) * ln -
           2.0 * k1 * k2 * std::log(sep) + 0.5 * (k1 + k2) * kLog2Pi - log_barnes_g(1.0 + k1) -
           log_barnes_g(1.0 + k2) + log_gap_cdf(LUE{static_cast<int>(std::round(k2)), k1 - k2}, N * sep * sep);
}

double noninteger_bulk(int N, double gamma, double k2, double u2) {
    if (!(gamma >= k2) || !(k2 >= 1.0) || !is_integer(k2)) throw DomainError("need integer k2 >= 1 and gamma >= k2");
    if (!(u2 > 0.0)) throw DomainError("u2 must be positive");
    const double ln = std::log(double(N));
    return u2 * u2 * k2 - (gamma + k2) * N + 0.5 * (gamma * gamma + k2 * k2) * ln -
           2.0 * k2 * gamma * (std::log(u2) - 0.5 * ln) + 0.5 * (gamma + k2) * kLog2Pi - log_barnes_g(1.0 + k2) -
           log_barnes_g(1.0 + gamma) + log_gap_cdf(LUE{static_cast<int>(std::round(k2)), gamma - k2}, u2 * u2);
}

Complex erf_kernel(Complex u, Complex v) {
    return std::exp(-0.5 * (u - v) * (u - v)) * erfc(-(u + v) / std::sqrt(2.0));
}

Complex edge_F_determinant(const EdgeVectors& ev) {
    ev.validate();
    const int k = ev.size();
    std::vector<Complex> vb(k);
    std::transform(ev.v.begin(), ev.v.end(), vb.begin(), [](Complex c) { return std::conj(c); });
    const LogDet r = confluent_ratio(erf_kernel, ev.u, vb);
    const double lc = log_factorial(k) - k * std::log(2.0) - 0.5 * k * kLog2Pi;
    return std::polar(std::exp(r.log_modulus + lc), r.phase);
}

Complex edge_F_karlin_mcgregor(const EdgeVectors& ev) {
    ev.validate();
    const int k = ev.size();
    if (k > 3) throw SizeError("Karlin-McGregor quadrature is limited to k <= 3");
    std::vector<Complex> w(k);
    std::transform(ev.v.begin(), ev.v.end(), w.begin(), [](Complex c) { return std::conj(c); });
    Complex vand = 1.0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) vand *= (ev.u[j] - ev.u[i]) * (w[j] - w[i]);
    if (std::abs(vand) < 1e-12) throw DomainError("Karlin-McGregor route needs distinct points");
    double right = 0.0;
    for (int i = 0; i < k; ++i) right = std::max({right, ev.u[i].real(), w[i].real()});
    const double S = right + 7.0;
    int panels = static_cast<int>(std::ceil(S));
    Complex z = km_integral(ev.u, w, S, panels);
    for (int level = 0; level < 2; ++level) {
        panels *= 2;
        const Complex z2 = km_integral(ev.u, w, S, panels);
        const bool done = std::abs(z2 - z) <= 1e-12 * std::abs(z2);
        z = z2;
        if (done) break;
    }
    return z / vand;
}

LogDet edge_multi_complex(int N, Complex z, const EdgeVectors& ev) {
    ev.validate();
    if (std::abs(std::abs(z) - 1.0) > 1e-12) throw DomainError("edge_multi requires |z| = 1");
    const int k = ev.size();
    const double sn = std::sqrt(double(N));
    Complex e = 0.0;
    for (int j = 0; j < k; ++j) {
        const Complex vb = std::conj(ev.v[j]);
        e -= sn * (ev.u[j] + vb) - 0.5 * (ev.u[j] * ev.u[j] + vb * vb);
    }
    const Complex F = edge_F_determinant(ev);
    const double lm = e.real() + 0.5 * k * k * std::log(double(N)) + k * kLog2Pi - log_factorial(k) + std::log(std::abs(F));
    return {lm, std::remainder(e.imag() + std::arg(F), 2.0 * kPi)};
}

double edge_multi(int N, Complex z, const EdgeVectors& ev) { return edge_multi_complex(N, z, ev).log_modulus; }

LogDet bulk_multi_complex(int N, Complex z, const EdgeVectors& ev) {
    ev.validate();
    if (!(std::abs(z) < 1.0)) throw DomainError("bulk_multi requires |z| < 1");
    const int k = ev.size();
    const double sn = std::sqrt(double(N));
    Complex e = N * k * (std::norm(z) - 1.0);
    for (int j = 0; j < k; ++j) e += sn * (z * std::conj(ev.v[j]) + std::conj(z) * ev.u[j]);
    const Complex h = hciz_ratio(ev.u, ev.v);
    const double lm = e.real() + 0.5 * k * k * std::log(double(N)) + 0.5 * k * kLog2Pi + std::log(std::abs(h));
    return {lm, std::remainder(e.imag() + std::arg(h), 2.0 * kPi)};
}

double bulk_multi(int N, Complex z, const EdgeVectors& ev) { return bulk_multi_complex(N, z, ev).log_modulus; }

double tcue_edge(int N, double kappa, double k, double u) {
    if (!(u > 0.0)) throw DomainError("u must be positive");
    if (!(kappa >= 0.0)) throw DomainError("kappa must be non-negative");
    if (!(k >= 1.0) || !is_integer(k)) throw DomainError("tcue_edge needs integer k >= 1");
    return k * k * std::log(double(N)) + log_barnes_g(k + kappa + 1.0) - log_barnes_g(k + 1.0) -
           log_barnes_g(kappa + 1.0) - (k * k + k * kappa) * std::log(2.0 * u) +
           log_gap_cdf(LUE{static_cast<int>(std::round(k)), kappa}, 2.0 * u);
}

double ginibre_exterior(int N, double k, Complex z) {
    const double r = std::abs(z);
    if (!(r > 1.0)) throw DomainError("ginibre_exterior requires |z| > 1");
    return 2.0 * N * k * std::log(r) - k * k * std::log1p(-1.0 / (r * r));
}

double lemniscate_kappa(int d) { return d * (d - 1.0) * (2.0 * d - 1.0) / (6.0 * d * d); }

double lemniscate_log_norm(int N, int d, int j) {
    const double a = (j + 1.0) / d;
    return std::log(kPi) + log_gamma(a) - std::log(double(d)) - a * std::log(double(N) * d);
}

double lemniscate_log_z0(int N, int d) {
    double s = log_factorial(N * d);
    for (int j = 0; j < N * d; ++j) s += lemniscate_log_norm(N, d, j);
    return s;
}

double lemniscate_critical_t(int d) { return 1.0 / std::sqrt(double(d)); }

LemniscateAsym lemniscate_asym(int N, int d, double t, LemniscateRegime regime) {
    if (N < 1 || d < 1) throw DomainError("lemniscate needs N, d >= 1");
    const double tc = lemniscate_critical_t(d);
    const double kd = lemniscate_kappa(d);
    const double sub = lemniscate_log_z0(N, d) + std::pow(N * t * d, 2) - N * t * t * d * (d - 1.0) / 2.0;
    switch (regime) {
    case LemniscateRegime::sub:
        if (!(t >= 0.0 && t < tc)) throw DomainError("sub-critical regime needs 0 <= t < t_c");
        return {sub, false, kd};
    case LemniscateRegime::critical: {
        const double tau = std::sqrt(double(N)) * (1.0 - t / tc);
        if (std::abs(tau) > 10.0) throw DomainError("critical regime needs t within O(1/sqrt N) of t_c");
        double s = sub;
        for (int l = 0; l < d; ++l) s += log_edge_F(0.5 * lemniscate_gamma(l, d), 2.0 * tau);
        return {s, true, kd};
    }
    case LemniscateRegime::super: {
        if (!(t > tc)) throw DomainError("super-critical regime needs t > t_c");
        const double s = t * std::sqrt(double(d));
        const double lem1 = double(N) * N * s * s + log_ginibre_partition(N);
        const double v = d * lem1 + lemniscate_log_c(N, d) - N * (d - 1.0) * std::log(t / tc) -
                         kd * std::log1p(-(tc / t) * (tc / t));
        return {v, true, kd};
    }
    }
    throw DomainError("unknown regime");
}

}  // namespace charpoly
