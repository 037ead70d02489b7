#include "charpoly/dualities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "charpoly/errors.hpp"
#include "charpoly/gap.hpp"
#include "charpoly/detail/fd.hpp"
#include "charpoly/painleve.hpp"
#include "charpoly/specfun.hpp"

namespace charpoly {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

void check_gamma(double gamma) {
    if (!(gamma > -2.0)) throw DomainError("exponent gamma must exceed -2");
}

double toeplitz_logdet(const std::function<Complex(double, double)>& g, int n) {
    const auto f = fourier_coefficients(g, n);
    ComplexMatrix t(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) t(j, k) = f[j - k + n - 1];
    const LogDet ld = logdet(t);
    return ld.log_modulus;
}

Complex gk_complex(const std::function<Complex(double)>& f, double a, double b) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double re = GK::integrate([&](double t) { return f(t).real(); }, a, b, 15, 1e-14);
    const double im = GK::integrate([&](double t) { return f(t).imag(); }, a, b, 15, 1e-14);
    return {re, im};
}

struct Group {
    Complex at;
    int mult;
};

std::vector<Group> group_points(const std::vector<Complex>& x, double tol) {
    std::vector<Group> g;
    for (const Complex& xi : x) {
        bool merged = false;
        for (auto& gr : g)
            if (std::abs(xi - gr.at) <= tol * std::max(1.0, std::abs(gr.at))) {
                ++gr.mult;
                merged = true;
                break;
            }
        if (!merged) g.push_back({xi, 1});
    }
    return g;
}

// (1/(p! q!)) d^p/dx^p d^q/dy^q K at (a, b) by trapezoid sums on circles.
Complex taylor_coefficient(const std::function<Complex(Complex, Complex)>& k, Complex a, Complex b, int p, int q) {
    if (p == 0 && q == 0) return k(a, b);
    constexpr int n = 32;
    constexpr double rho = 0.5;
    std::array<Complex, n> w;
    for (int l = 0; l < n; ++l) w[l] = std::polar(1.0, 2.0 * kPi * l / n);
    Complex s = 0.0;
    if (q == 0) {
        for (int l = 0; l < n; ++l) s += k(a + rho * w[l], b) * std::pow(std::conj(w[l]), p);
        return s / (n * std::pow(rho, p));
    }
    if (p == 0) {
        for (int l = 0; l < n; ++l) s += k(a, b + rho * w[l]) * std::pow(std::conj(w[l]), q);
        return s / (n * std::pow(rho, q));
    }
    for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
            s += k(a + rho * w[l], b + rho * w[m]) * std::pow(std::conj(w[l]), p) * std::pow(std::conj(w[m]), q);
    return s / (double(n) * n * std::pow(rho, p + q));
}

LogDet log_confluent_vandermonde(const std::vector<Group>& g) {
    LogDet v{0.0, 0.0};
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            const Complex d = g[j].at - g[i].at;
            const double e = double(g[i].mult) * g[j].mult;
            v.log_modulus += e * std::log(std::abs(d));
            v.phase += e * std::arg(d);
        }
    return v;
}

double log_binom(int n, int k) { return log_factorial(n) - log_factorial(k) - log_factorial(n - k); }

}  // namespace

double ginibre_log_r0(int N, double gamma) {
    check_gamma(gamma);
    if (N < 1) throw DomainError("N must be positive");
    double s = -0.5 * gamma * N * std::log(double(N));
    for (int j = 0; j < N; ++j) s += log_gamma(0.5 * gamma + j + 1) - log_gamma(j + 1.0);
    return s;
}

double ginibre_moment_exact(int N, int k, Complex z) {
    if (k < 1) throw DomainError("ginibre_moment_exact needs k >= 1");
    if (N < 1) throw DomainError("N must be positive");
    const double r2 = std::norm(z);
    double s = -double(N) * k * std::log(double(N)) + double(N) * k * r2;
    for (int j = 1; j <= k; ++j) s += log_gamma(j + double(N)) - log_gamma(double(j));
    return s + log_lue_tail(k, N, N * r2);
}

std::vector<Complex> fourier_coefficients(const std::function<Complex(double, double)>& g, int n) {
    boost::math::quadrature::tanh_sinh<double> ts(15);
    std::vector<Complex> out(2 * n - 1);
    for (int m = -(n - 1); m <= n - 1; ++m) {
        auto part = [&](bool imag) {
            auto f = [&](double th, double thc) {
                const double c = std::sin(0.5 * std::abs(thc));
                if (c == 0.0) return 0.0;
                const Complex v = g(th, c) * std::polar(1.0, -m * th);
                return imag ? v.imag() : v.real();
            };
            double err = 0.0, l1 = 0.0;
            const double r = ts.integrate(f, -kPi, kPi, 1e-14, &err, &l1);
            if (err > 1e-10 * std::max(1.0, l1)) throw AccuracyError("Toeplitz symbol quadrature did not converge");
            return r;
        };
        out[m + n - 1] = Complex(part(false), part(true)) / (2.0 * kPi);
    }
    return out;
}

double ginibre_toeplitz_coefficient(double a, double x, int m) {
    if (x == 0.0) {
        if (m > 0) return 0.0;
        double c = 1.0;
        for (int i = 0; i < -m; ++i) c *= (a - i) / (i + 1.0);
        return c;
    }
    const bool integral = std::abs(a - std::round(a)) < 1e-15;
    const int J = a >= 0.0 ? static_cast<int>(std::floor(a)) + 1 : 0;
    const int j0 = std::max(0, -m);
    const double lx = std::log(x);
    double finite = 0.0;
    for (int j = j0; j < J; ++j)
        finite += std::exp(log_gamma(a + 1.0) - log_gamma(j + 1.0) - log_gamma(a - j + 1.0) + (m + j) * lx -
                           log_gamma(m + j + 1.0));
    if (integral) return finite;
    // Binomials beyond a as Beta integrals; the alternating exponential tail
    // then sums to q!-scaled Poisson averages of q/(q+k).
    const int j1 = std::max(j0, J);
    const int q = m + j1;
    const double lpre = q * lx - log_gamma(q + 1.0);
    auto poisson_mean = [q](double y) {
        if (q == 0) return std::exp(-y);
        if (y == 0.0) return 1.0;
        const int mode = static_cast<int>(std::floor(y));
        const double lw = mode * std::log(y) - y - log_gamma(mode + 1.0);
        double sum = 0.0, w = std::exp(lw);
        for (int k = mode; ; ++k) {
            sum += w * q / double(q + k);
            w *= y / (k + 1);
            if (k > mode + 10 && w < 1e-18 * sum) break;
        }
        w = std::exp(lw);
        for (int k = mode; k > 0; --k) {
            w *= k / y;
            sum += w * q / double(q + k - 1);
            if (w < 1e-18 * sum) break;
        }
        return sum;
    };
    auto h = [&](double s, double sc) {
        const double om = s < 0.5 ? 1.0 - s : sc;
        return std::exp((j1 - a - 1.0) * std::log(s) + a * std::log(om) + lpre) * poisson_mean(s * x);
    };
    boost::math::quadrature::tanh_sinh<double> ts(15);
    double err = 0.0, l1 = 0.0;
    const double v = ts.integrate(h, 0.0, 1.0, 1e-14, &err, &l1);
    if (err > 1e-10 * l1) throw AccuracyError("Toeplitz coefficient integral did not converge");
    return finite + ((j1 % 2 == 1) ? 1.0 : -1.0) * std::sin(kPi * a) / kPi * v;
}

double ginibre_moment_toeplitz(int N, double gamma, Complex z) {
    check_gamma(gamma);
    if (N < 1) throw DomainError("N must be positive");
    if (gamma == 0.0) return 0.0;
    const double x = N * std::norm(z);
    const double r0 = ginibre_log_r0(N, gamma);
    if (x == 0.0) return r0;
    const double a = 0.5 * gamma;
    std::vector<double> f(2 * N - 1);
    for (int m = -(N - 1); m <= N - 1; ++m) f[m + N - 1] = ginibre_toeplitz_coefficient(a, x, m);
    // Rounding sensitivity: the LU under a rescaling, and the determinant
    // under a deterministic relative perturbation of the coefficients of
    // 1e-13 (about fifty times their accuracy).
    auto logdet_real = [N, &f](double scale, double pert) {
        Eigen::MatrixXd t(N, N);
        std::uint64_t state = 0x9e3779b97f4a7c15ULL;
        std::vector<double> g(f);
        for (double& v : g) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            v *= 1.0 + pert * (double(state >> 11) * 0x1.0p-53 * 2.0 - 1.0);
        }
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) t(j, k) = g[j - k + N - 1] * std::pow(scale, j - k);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(t);
        double l = 0.0;
        for (int i = 0; i < N; ++i) l += std::log(std::abs(lu.matrixLU()(i, i)));
        return l;
    };
    const std::array<double, 2> ld{logdet_real(1.0, 0.0), logdet_real(0.25, 0.0)};
    const double est = std::max(std::abs(ld[0] - ld[1]), 0.02 * std::abs(logdet_real(0.25, 1e-13) - ld[1]));
    if (!(est <= 1e-8 * (1.0 + std::abs(ld[1]))))
        throw AccuracyError("Toeplitz determinant is too ill-conditioned at N|z|^2 = " + std::to_string(x));
    return r0 + ld[1];
}

double ginibre_moment_pv(int N, double gamma, Complex z, double tol) {
    check_gamma(gamma);
    if (N < 1) throw DomainError("N must be positive");
    const double r0 = ginibre_log_r0(N, gamma);
    const double T = N * std::norm(z);
    if (T == 0.0 || gamma == 0.0) return r0 + 0.5 * gamma * T;
    const double k = 0.5 * gamma;
    const PV pv{k, double(N), LaguerreGap::smallest};
    SigmaInit init;
    if (k >= 1.0 && std::abs(k - std::round(k)) < 1e-12) {
        init = init_from_gap(pv, T);
    } else {
        auto s = [&](double t) { return ginibre_moment_toeplitz(N, gamma, std::sqrt(t / N)) - 0.5 * gamma * t; };
        const double h = std::min(0.02 * std::max(1.0, T), 0.2 * T);
        const auto d = detail::central_derivatives(s, T, h);
        init = {T, T * d[1], d[1] + T * d[2], 2.0 * d[2] + T * d[3]};
    }
    // Backward integration amplifies the t^{1-N} mode; stop where that growth
    // and the neglected head balance.
    const double r = std::clamp(std::pow(10.0, 5.5 / N), 1.5, 30.0);
    const SigmaSolution sol = solve(pv, init, T / r, tol);
    return r0 + 0.5 * gamma * T + log_F_from_sigma(sol, T);
}

double tcue_log_c(int M, int N, int k) {
    if (N < 1 || N >= M) throw SizeError("truncated CUE requires 1 <= N < M");
    double s = 0.0;
    for (int j = 0; j < k; ++j)
        s += log_gamma(M - N + 1.0 + j) + log_gamma(N + 1.0 + j) - log_gamma(M + 1.0 + j) - log_gamma(1.0 + j);
    return s;
}

Complex tcue_moment_value(int M, int N, int k, Complex x, Complex y) {
    if (N < 1 || N >= M) throw SizeError("truncated CUE requires 1 <= N < M");
    if (k < 1) throw DomainError("tcue moments need k >= 1");
    const int kappa = M - N;
    const Complex w = x * y - 1.0;
    std::vector<Complex> mom(2 * k - 1);
    for (int n = 0; n < 2 * k - 1; ++n)
        mom[n] = gk_complex([&](double t) { return std::pow(t, kappa + n) * std::pow(1.0 + w * t, N); }, 0.0, 1.0);
    ComplexMatrix h(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) h(i, j) = mom[i + j];
    const LogDet ld = logdet(h);
    const double lc = log_norm_constant(JUE{k, double(kappa + N), 0.0});
    return std::polar(std::exp(log_factorial(k) + ld.log_modulus - lc), ld.phase);
}

double tcue_moment_jue_factored(int M, int N, int k, Complex z) {
    const double r2 = std::norm(z);
    if (!(r2 < 1.0)) throw DomainError("JUE-factored form needs |z| < 1");
    const int kappa = M - N;
    const double x = 1.0 - r2;
    return tcue_log_c(M, N, k) - (double(k) * kappa + double(k) * k) * std::log(x) +
           log_gap_cdf(JUE{k, double(kappa), double(N)}, x);
}

double tcue_moment_exact(int M, int N, int k, Complex z) {
    const Complex v = tcue_moment_value(M, N, k, z, std::conj(z));
    const double lv = std::log(std::abs(v));
    if (std::norm(z) < 1.0) {
        const double lf = tcue_moment_jue_factored(M, N, k, z);
        if (std::abs(lf - lv) > 1e-8 * (1.0 + std::abs(lv)))
            throw AccuracyError("truncated CUE routes disagree: " + std::to_string(lv) + " vs " + std::to_string(lf));
    }
    return lv;
}

double tcue_log_r0(int M, int N, double gamma) {
    check_gamma(gamma);
    if (N < 1 || N >= M) throw SizeError("truncated CUE requires 1 <= N < M");
    const double kappa = M - N;
    double s = 0.0;
    for (int j = 0; j < N; ++j)
        s += log_gamma(0.5 * gamma + j + 1) + log_gamma(j + kappa + 1) - log_gamma(j + 1.0) -
             log_gamma(0.5 * gamma + j + kappa + 1);
    return s;
}

double tcue_moment_toeplitz(int M, int N, double gamma, Complex z) {
    check_gamma(gamma);
    const double r = std::norm(z);
    if (r > 1.0 + 1e-14) throw DomainError("Toeplitz route for the truncated CUE needs |z| <= 1");
    if (gamma == 0.0) return 0.0;
    const double p = (M - N) + 0.5 * gamma;
    const bool edge = std::abs(r - 1.0) <= 1e-14;
    auto g = [gamma, p, r, edge](double th, double c) {
        const Complex head = std::polar(std::pow(2.0 * c, 0.5 * gamma), -0.25 * gamma * th);
        if (edge) return head * std::polar(std::pow(2.0 * c, p), 0.5 * p * th);
        return head * std::pow(1.0 + r * std::polar(1.0, th), p);
    };
    return tcue_log_r0(M, N, gamma) + toeplitz_logdet(g, N);
}

double tcue_morris(int M, int N, double gamma) {
    check_gamma(gamma);
    const double kappa = M - N;
    double s = 0.0;
    for (int j = 0; j < N; ++j)
        s += log_gamma(kappa + j + 1) + log_gamma(kappa + gamma + j + 1) - 2.0 * log_gamma(kappa + 0.5 * gamma + j + 1);
    return s;
}

LogDet confluent_ratio(const std::function<Complex(Complex, Complex)>& kernel, const std::vector<Complex>& x,
                       const std::vector<Complex>& y, double merge_tol) {
    if (x.size() != y.size()) throw DomainError("confluent_ratio needs equally many x and y points");
    const auto gx = group_points(x, merge_tol);
    const auto gy = group_points(y, merge_tol);
    const int n = static_cast<int>(x.size());
    ComplexMatrix m(n, n);
    int row = 0;
    for (const auto& a : gx)
        for (int p = 0; p < a.mult; ++p, ++row) {
            int col = 0;
            for (const auto& b : gy)
                for (int q = 0; q < b.mult; ++q, ++col) m(row, col) = taylor_coefficient(kernel, a.at, b.at, p, q);
        }
    LogDet d = logdet(m);
    const LogDet vx = log_confluent_vandermonde(gx);
    const LogDet vy = log_confluent_vandermonde(gy);
    d.log_modulus -= vx.log_modulus + vy.log_modulus;
    d.phase = std::remainder(d.phase - vx.phase - vy.phase, 2.0 * kPi);
    return d;
}

Complex hciz_ratio(const std::vector<Complex>& u, const std::vector<Complex>& v) {
    if (u.empty() || u.size() != v.size()) throw DomainError("hciz_ratio needs equal nonempty vectors");
    std::vector<Complex> vb(v.size());
    std::transform(v.begin(), v.end(), vb.begin(), [](Complex c) { return std::conj(c); });
    const LogDet r = confluent_ratio([](Complex a, Complex b) { return std::exp(a * b); }, u, vb);
    return std::polar(std::exp(r.log_modulus), r.phase);
}

TraceIdentity hciz_trace_identity(const ComplexMatrix& U, Complex u1, Complex u2, Complex v1, Complex v2, int k1,
                                  int k2) {
    const int k = k1 + k2;
    if (U.rows() != k || U.cols() != k) throw SizeError("unitary size must be k1 + k2");
    Eigen::VectorXcd a(k), b(k);
    for (int i = 0; i < k; ++i) {
        a(i) = i < k1 ? u1 : u2;
        b(i) = std::conj(i < k1 ? v1 : v2);
    }
    const ComplexMatrix m = U * a.asDiagonal() * U.adjoint() * b.asDiagonal();
    const ComplexMatrix c = U.bottomLeftCorner(k2, k1);
    const double cc = c.squaredNorm();
    const Complex ex = u1 * std::conj(v1) * double(k1) + u2 * std::conj(v2) * double(k2) -
                       (u2 - u1) * (std::conj(v2) - std::conj(v1)) * cc;
    return {m.trace(), ex};
}

double log_ginibre_partition(int N) {
    double s = N * std::log(kPi) - 0.5 * N * (N + 1.0) * std::log(double(N));
    for (int k = 1; k <= N; ++k) s += log_factorial(k);
    return s;
}

double lemniscate_log_c(int N, int d) {
    return log_factorial(N * d) - 0.5 * N * (double(N) * d + 2.0 * d + 1.0) * std::log(double(d)) -
           d * log_factorial(N);
}

double lemniscate_log_ctilde(int N, int d) { return lemniscate_log_c(N, d) + d * log_ginibre_partition(N); }

double lemniscate_gamma(int l, int d) { return -2.0 * (1.0 - (l + 1.0) / d); }

double lemniscate_partition(int N, int d, double t) {
    if (N < 1 || d < 1) throw DomainError("lemniscate needs N, d >= 1");
    if (!(t >= 0.0)) throw DomainError("lemniscate needs t >= 0");
    const double ntd = N * t * d;
    double s = ntd * ntd + lemniscate_log_ctilde(N, d);
    const Complex z(t * std::sqrt(double(d)), 0.0);
    for (int l = 0; l < d; ++l) s += ginibre_moment_toeplitz(N, lemniscate_gamma(l, d), z);
    return s;
}

double log_radial_norm(const RadialWeightSpec& w, int j) {
    if (const auto* g = std::get_if<GinibreWeight>(&w))
        return std::log(kPi) + log_factorial(j) - (j + 1.0) * std::log(double(g->N));
    if (const auto* g = std::get_if<InducedGinibre>(&w))
        return std::log(kPi) - (j + g->gamma1 + 1.0) * std::log(double(g->N)) + log_gamma(j + g->gamma1 + 1.0);
    const auto& t = std::get<TruncatedCUEWeight>(w);
    const double kappa = t.M - t.N;
    if (kappa < 1.0) throw SizeError("truncated CUE weight needs M > N");
    return std::log(kPi) + log_factorial(j) + log_gamma(kappa) - log_gamma(j + kappa + 1.0);
}

double correlator_finiteN(const RadialWeightSpec& w, const ChargeConfiguration& charges) {
    charges.validate();
    int N = 0;
    std::visit([&N](const auto& s) { N = s.N; }, w);
    if (const auto* ig = std::get_if<InducedGinibre>(&w))
        if (!(ig->gamma1 >= 0.0)) throw DomainError("induced Ginibre needs gamma1 >= 0");
    std::vector<Group> groups;
    for (std::size_t i = 0; i < charges.size(); ++i) {
        const double e = charges.exponents[i];
        const double k = 0.5 * e;
        if (e < 0.0 || std::abs(k - std::round(k)) > 1e-12)
            throw DomainError("correlator_finiteN needs non-negative even integer exponents");
        const int ki = static_cast<int>(std::round(k));
        if (ki == 0) continue;
        bool merged = false;
        for (auto& g : groups)
            if (std::abs(charges.points[i] - g.at) <= 1e-8 * std::max(1.0, std::abs(g.at))) {
                g.mult += ki;
                merged = true;
            }
        if (!merged) groups.push_back({charges.points[i], ki});
    }
    double induced = 0.0;
    if (std::holds_alternative<InducedGinibre>(w))
        for (int j = 0; j < N; ++j) induced += log_radial_norm(w, j) - log_radial_norm(GinibreWeight{N}, j);
    if (groups.empty()) return induced;

    int K = 0;
    for (const auto& g : groups) K += g.mult;
    const int top = N + K;
    std::vector<double> lh(top);
    for (int j = 0; j < top; ++j) lh[j] = log_radial_norm(w, j);

    struct Index {
        Complex z;
        int order;
    };
    std::vector<Index> idx;
    for (const auto& g : groups)
        for (int p = 0; p < g.mult; ++p) idx.push_back({g.at, p});

    ComplexMatrix m(K, K);
    double shift = 0.0;
    std::vector<double> lt;
    std::vector<double> ph;
    for (int r = 0; r < K; ++r) {
        const auto [za, p] = idx[r];
        lt.clear();
        ph.clear();
        std::vector<int> where;
        double row_max = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < K; ++c) {
            const auto [zb, q] = idx[c];
            for (int j = std::max(p, q); j < top; ++j) {
                const int ea = j - p, eb = j - q;
                if ((ea > 0 && za == 0.0) || (eb > 0 && zb == 0.0)) continue;
                double l = log_binom(j, p) + log_binom(j, q) - lh[j];
                double phase = 0.0;
                if (ea > 0) {
                    l += ea * std::log(std::abs(za));
                    phase += ea * std::arg(za);
                }
                if (eb > 0) {
                    l += eb * std::log(std::abs(zb));
                    phase -= eb * std::arg(zb);
                }
                lt.push_back(l);
                ph.push_back(phase);
                where.push_back(c);
                row_max = std::max(row_max, l);
            }
        }
        m.row(r).setZero();
        for (std::size_t i = 0; i < lt.size(); ++i) m(r, where[i]) += std::polar(std::exp(lt[i] - row_max), ph[i]);
        shift += row_max;
    }
    const LogDet ld = logdet(m);
    double s = ld.log_modulus + shift;
    for (std::size_t a = 0; a < groups.size(); ++a)
        for (std::size_t b = a + 1; b < groups.size(); ++b)
            s -= 2.0 * groups[a].mult * groups[b].mult * std::log(std::abs(groups[b].at - groups[a].at));
    for (int j = 0; j < K; ++j) s += lh[N + j];
    return s + induced;
}

}  // namespace charpoly
