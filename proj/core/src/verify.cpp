#include "charpoly/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "charpoly/asymptotics.hpp"
#include "charpoly/detail/fd.hpp"
#include "charpoly/dualities.hpp"
#include "charpoly/ensembles.hpp"
#include "charpoly/errors.hpp"
#include "charpoly/gap.hpp"
#include "charpoly/oracles.hpp"
#include "charpoly/painleve.hpp"
#include "charpoly/specfun.hpp"

namespace charpoly {
namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

// Collects sub-checks of one criterion. With a single tolerance the observed
// value is the worst raw metric; with mixed tolerances it is the worst
// metric/tolerance ratio against 1.
class Tally {
public:
    void add(const std::string& label, double metric, double tol, bool ok_extra = true) {
        const bool ok = std::isfinite(metric) && metric <= tol && ok_extra;
        pass_ = pass_ && ok;
        if (!tols_.empty() && tols_.back() != tol) mixed_ = true;
        tols_.push_back(tol);
        metrics_.push_back(std::isfinite(metric) ? metric : std::numeric_limits<double>::infinity());
        if (!note_.empty()) note_ += "; ";
        note_ += label + ": " + fmt(metric) + (ok ? "" : " FAIL");
    }
    void fail(const std::string& why) {
        pass_ = false;
        if (!note_.empty()) note_ += "; ";
        note_ += why;
    }
    void note(const std::string& s) {
        if (!note_.empty()) note_ += "; ";
        note_ += s;
    }
    CheckResult result(const std::string& name) const {
        CheckResult r;
        r.name = name;
        r.pass = pass_ && !metrics_.empty();
        r.note = note_;
        if (metrics_.empty()) {
            r.observed = std::numeric_limits<double>::quiet_NaN();
            return r;
        }
        if (mixed_) {
            r.tolerance = 1.0;
            for (std::size_t i = 0; i < metrics_.size(); ++i) r.observed = std::max(r.observed, metrics_[i] / tols_[i]);
        } else {
            r.tolerance = tols_.front();
            r.observed = *std::max_element(metrics_.begin(), metrics_.end());
        }
        return r;
    }

private:
    bool pass_ = true;
    bool mixed_ = false;
    std::vector<double> metrics_, tols_;
    std::string note_;
};

struct Ctx {
    std::uint64_t seed;
    std::vector<OutputRecord>* out;
    void record(const std::string& name, Route r, double v, std::optional<double> im = {},
                std::optional<double> se = {}) {
        if (out) out->push_back({name, r, v, im, se, true});
    }
    void linear(const std::string& name, Route r, double v, std::optional<double> im = {},
                std::optional<double> se = {}) {
        if (out) out->push_back({name, r, v, im, se, false});
    }
    std::uint64_t sub_seed(int id, int i) const { return seed * 1000003ULL + 7919ULL * id + i; }
};

double zscore(const MCEstimate& e, double target_shifted) {
    return std::abs(e.mean_shifted - target_shifted) / e.stderr_shifted;
}

// |exp(a - b) - 1|
double ratio_err(double a, double b) { return std::abs(std::expm1(a - b)); }

bool trend_ok(const std::vector<double>& e, double final_tol) {
    for (std::size_t i = 1; i < e.size(); ++i)
        if (!(e[i] <= 1.1 * e[i - 1])) return false;
    return e.back() < e.front() && e.back() < final_tol;
}

std::string seq(const std::vector<double>& e) {
    std::string s;
    for (double x : e) s += (s.empty() ? "" : " > ") + fmt(x);
    return s;
}

void c01(Ctx& c, Tally& t) {
    int i = 0;
    for (int k : {1, 2})
        for (double z : {0.0, 0.5, 1.0}) {
            const auto t0 = Clock::now();
            const double ex = ginibre_moment_exact(8, k, z);
            const MCEstimate e = mc_moment(Ginibre{8}, {{Complex(z, 0.0)}, {2.0 * k}}, 200000, c.sub_seed(1, i++), ex);
            const double el = seconds_since(t0);
            const std::string tag = "k=" + std::to_string(k) + " z=" + fmt(z);
            c.record("ginibre N=8 " + tag, Route::exact, ex);
            c.record("ginibre N=8 " + tag, Route::mc, e.log_value(), {}, e.relative_stderr());
            t.add(tag + " |dev|/stderr", zscore(e, 1.0), 3.0);
            t.add(tag + " seconds", el, 60.0);
        }
}

void c02(Ctx& c, Tally& t) {
    const double ex = ginibre_moment_exact(2, 1, 0.5);
    const double q = oracle::ginibre_n2_moment(2.0, 0.5);
    c.record("ginibre N=2 k=1 z=0.5", Route::exact, ex);
    c.record("ginibre N=2 k=1 z=0.5", Route::oracle, std::log(q));
    t.add("relative", std::abs(q / std::exp(ex) - 1.0), 1e-6);
}

void c03(Ctx&, Tally& t) {
    auto grid = [](double a, double b) {
        std::vector<double> x(20);
        for (int i = 0; i < 20; ++i) x[i] = a + (b - a) * i / 19.0;
        return x;
    };
    const std::vector<std::pair<std::string, std::pair<GapEnsemble, std::vector<double>>>> cases{
        {"GUE{2}", {GUE{2}, grid(-3.0, 3.0)}},
        {"LUE{2,0}", {LUE{2, 0.0}, grid(0.2, 12.0)}},
        {"LUE{2,3}", {LUE{2, 3.0}, grid(0.2, 16.0)}},
        {"JUE{2,1,2}", {JUE{2, 1.0, 2.0}, grid(0.02, 0.98)}}};
    for (const auto& [name, cs] : cases) {
        double md = 0.0;
        for (double x : cs.second) md = std::max(md, std::abs(gap_cdf(cs.first, x) - gap_oracle(cs.first, x)));
        t.add(name, md, 1e-7);
    }
}

void c04(Ctx& c, Tally& t) {
    for (int k : {1, 2}) {
        const SigmaSolution sol = solve(PIV{double(k)}, init_from_asymptote_p4(k, 1e4), 3.0);
        double md = 0.0;
        for (int i = 0; i <= 24; ++i) {
            const double x = -3.0 + 0.25 * i;
            md = std::max(md, std::abs(F_from_sigma(sol, x) - gap_cdf(GUE{k}, x)));
        }
        t.add("k=" + std::to_string(k) + " max|F - gap|", md, 1e-6);
        if (k == 1) {
            const double f0 = F_from_sigma(sol, 0.0);
            c.linear("F_1(0)", Route::pv, f0);
            t.add("|F_1(0) - 1/2|", std::abs(f0 - 0.5), 1e-9);
        }
    }
}

void c05(Ctx&, Tally& t) {
    const PV pv{1.0, 4.0, LaguerreGap::smallest};
    auto f = [](double x) { return log_lue_tail(1, 4.0, x); };
    double worst = 0.0;
    for (int i = 0; i <= 39; ++i) {
        const double x = 0.2 + (8.0 - 0.2) * i / 39.0;
        const auto d = detail::central_derivatives(f, x, std::min(0.05, 0.25 * x));
        const double s = x * d[1], s1 = d[1] + x * d[2], s2 = 2.0 * d[2] + x * d[3];
        worst = std::max(worst, std::abs(residual(pv, x, s, s1, s2)));
    }
    t.add("max normalized residual", worst, 1e-5);
}

void c06(Ctx& c, Tally& t) {
    const PVI p = pvi_from_jue(1.0, 1.0, 2.0);
    const SigmaSolution sol = solve_interval(p, init_from_gap(p, 0.5), 0.02, 0.9999);
    double md = 0.0;
    for (int i = 0; i <= 45; ++i) {
        const double x = 0.05 + 0.02 * i;
        md = std::max(md, std::abs(F_from_sigma(sol, x) - gap_cdf(JUE{1, 1.0, 2.0}, x)));
    }
    t.add("max|F - gap|", md, 1e-6);
    Rng rng(c.sub_seed(6, 0));
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::normal_distribution<double> G(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double gamma = 0.2 + 3.0 * U(rng), kappa = 3.0 * U(rng), N = 1 + std::floor(6.0 * U(rng));
        const double tau = 0.05 + 0.9 * U(rng), h = G(rng), h1 = G(rng), h2 = G(rng);
        const double a = residual_heqn(gamma, kappa, N, tau, h, h1, h2);
        const double b = residual_raw(pvi_from_jue(0.5 * gamma, kappa, N), 1.0 - tau, h, -h1, h2);
        worst = std::max(worst, std::abs(a + b) / (1.0 + std::abs(a)));
    }
    t.add("t -> 1-t residual identity", worst, 1e-8);
}

void c07(Ctx& c, Tally& t) {
    const double tp = ginibre_moment_toeplitz(2, 1.3, 0.6);
    const double q = oracle::ginibre_n2_moment(1.3, 0.6);
    c.record("ginibre N=2 gamma=1.3 z=0.6", Route::toeplitz, tp);
    c.record("ginibre N=2 gamma=1.3 z=0.6", Route::oracle, std::log(q));
    t.add("toeplitz vs quadrature (relative)", std::abs(q / std::exp(tp) - 1.0), 1e-4);
    for (double g : {1.3, 2.0}) {
        const double a = ginibre_moment_toeplitz(4, g, 0.6), b = ginibre_moment_pv(4, g, 0.6);
        c.record("ginibre N=4 gamma=" + fmt(g) + " z=0.6", Route::toeplitz, a);
        c.record("ginibre N=4 gamma=" + fmt(g) + " z=0.6", Route::pv, b);
        t.add("gamma=" + fmt(g) + " toeplitz vs pv", std::abs(a - b), 1e-6);
    }
}

void c08(Ctx& c, Tally& t) {
    const double ex = tcue_moment_exact(8, 6, 1, 0.5);
    const MCEstimate e = mc_moment(TruncatedCUE{8, 6}, {{Complex(0.5, 0.0)}, {2.0}}, 200000, c.sub_seed(8, 0), ex);
    c.record("tcue M=8 N=6 k=1 z=0.5", Route::exact, ex);
    c.record("tcue M=8 N=6 k=1 z=0.5", Route::mc, e.log_value(), {}, e.relative_stderr());
    t.add("M=8 N=6 |dev|/stderr", zscore(e, 1.0), 3.0);
    const MCEstimate e2 = mc_moment(TruncatedCUE{2, 1}, {{Complex(0.0, 0.0)}, {2.0}}, 200000, c.sub_seed(8, 1), 0.0);
    c.record("C_{2,1,1}", Route::mc, e2.log_value(), {}, e2.relative_stderr());
    t.add("C_{2,1,1}=1/2 |dev|/stderr", zscore(e2, 0.5), 3.0);
    t.add("C_{2,1,1} closed form", std::abs(std::exp(tcue_log_c(2, 1, 1)) - 0.5), 1e-14);
    for (auto [M, N, k] : {std::array<int, 3>{6, 4, 2}, std::array<int, 3>{8, 6, 1}}) {
        const double a = std::log(std::abs(tcue_moment_value(M, N, k, 0.5, 0.5)));
        const double b = tcue_moment_jue_factored(M, N, k, 0.5);
        t.add("routes M=" + std::to_string(M) + " N=" + std::to_string(N) + " k=" + std::to_string(k), std::abs(a - b),
              1e-10);
    }
}

void c09(Ctx& c, Tally& t) {
    Rng rng(c.sub_seed(9, 0));
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<Complex> u(3), v(3);
    for (int i = 0; i < 3; ++i) {
        u[i] = {U(rng), U(rng)};
        v[i] = {U(rng), U(rng)};
    }
    const Complex h = 2.0 * hciz_ratio(u, v);  // G(4) = 2
    const auto mc = oracle::hciz_haar(u, v, 100000, c.sub_seed(9, 1));
    c.linear("hciz k=3 group integral", Route::exact, h.real(), h.imag());
    c.linear("hciz k=3 group integral", Route::mc, mc.re.value(), mc.im.value(), mc.re.stderr_shifted);
    t.add("real |dev|/stderr", zscore(mc.re, h.real()), 3.0);
    t.add("imag |dev|/stderr", zscore(mc.im, h.imag()), 3.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int k1 = 1 + i % 3, k2 = 1 + (i / 3) % 3;
        const ComplexMatrix W = sample_haar_unitary(k1 + k2, rng);
        const Complex u1(U(rng), U(rng)), u2(U(rng), U(rng)), v1(U(rng), U(rng)), v2(U(rng), U(rng));
        const TraceIdentity ti = hciz_trace_identity(W, u1, u2, v1, v2, k1, k2);
        worst = std::max(worst, std::abs(ti.direct - ti.explicit_));
    }
    t.add("explicit trace identity", worst, 1e-12);
}

void c10(Ctx& c, Tally& t) {
    const double ex = lemniscate_partition(1, 2, 0.3);
    const double q = oracle::lemniscate_n1d2(0.3);
    c.record("lemniscate N=1 d=2 t=0.3", Route::exact, ex);
    c.record("lemniscate N=1 d=2 t=0.3", Route::oracle, std::log(q));
    t.add("relative", std::abs(q / std::exp(ex) - 1.0), 1e-5);
    const LemniscateAsym a = lemniscate_asym(8, 2, 1.0, LemniscateRegime::super);
    t.add("|kappa_2 - 1/4|", std::abs(a.kappa_d - 0.25), 1e-15, std::isfinite(a.log_value));
}

void c11(Ctx& c, Tally& t) {
    auto run = [&](const std::string& name, const std::vector<int>& Ns, auto&& pair) {
        std::vector<double> e;
        for (int N : Ns) {
            const auto [ex, as] = pair(N);
            c.record(name + " N=" + std::to_string(N), Route::exact, ex);
            c.record(name + " N=" + std::to_string(N), Route::asym, as);
            e.push_back(ratio_err(ex, as));
        }
        const bool ok = trend_ok(e, 0.1);
        t.add(name + " [" + seq(e) + "]", e.back(), 0.1, ok);
    };
    const std::vector<int> big{50, 200, 800};
    run("bulk k=1 z=0.5", big,
        [](int N) { return std::pair{ginibre_moment_exact(N, 1, 0.5), ww_bulk(N, 2.0, 0.5)}; });
    run("edge k=1 z=1", big,
        [](int N) { return std::pair{ginibre_moment_exact(N, 1, 1.0), ginibre_edge(N, 1.0, 1.0)}; });
    const Complex u1(0.3, 0.1), u2(-0.4, 0.5);
    run("two-charge k1=k2=1 z=0", {8, 32, 128}, [&](int N) {
        const double sn = std::sqrt(double(N));
        return std::pair{correlator_finiteN(GinibreWeight{N}, {{u1 / sn, u2 / sn}, {2.0, 2.0}}),
                         bulk_two_charge(N, 1.0, 1.0, 0.0, u1, u2)};
    });
    run("tcue edge kappa=2 k=1 u=1", big, [](int N) {
        return std::pair{tcue_moment_exact(N + 2, N, 1, 1.0 - 1.0 / N), tcue_edge(N, 2.0, 1.0, 1.0)};
    });
    run("exterior k=1 z=1.5", big,
        [](int N) { return std::pair{ginibre_moment_exact(N, 1, 1.5), ginibre_exterior(N, 1.0, 1.5)}; });
}

void c12(Ctx& c, Tally& t) {
    std::vector<double> r5, r6;
    for (int N : {64, 256, 1024}) {
        r5.push_back(p5_to_p4_residual(2.0, N, 1.0));
        r6.push_back(p6_to_p5_residual(1.0, 1.0, N, 1.0));
        c.linear("PV->PIV residual N=" + std::to_string(N), Route::pv, r5.back());
        c.linear("PVI->PV residual N=" + std::to_string(N), Route::pv, r6.back());
    }
    auto dec = [](const std::vector<double>& r) { return r[1] < r[0] && r[2] < r[1]; };
    t.add("PV->PIV gamma=2 s=1 [" + seq(r5) + "]", r5.back(), 1e-2, dec(r5));
    t.add("PVI->PV k=1 kappa=1 t=1 [" + seq(r6) + "]", r6.back(), 1e-2, dec(r6));
    t.note("the PV->PIV residual is O(N^-1/2) with an O(1) coefficient at fixed s, so 1e-2 needs N of about 4000");
}

void c13(Ctx& c, Tally& t) {
    Rng rng(c.sub_seed(13, 0));
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int k : {2, 3}) {
        double worst = 0.0;
        for (int d = 0; d < 3; ++d) {
            EdgeVectors ev;
            for (int i = 0; i < k; ++i) {
                ev.u.emplace_back(U(rng), U(rng));
                ev.v.emplace_back(U(rng), U(rng));
            }
            const Complex a = edge_F_determinant(ev), b = edge_F_karlin_mcgregor(ev);
            worst = std::max(worst, std::abs(a - b) / std::abs(b));
        }
        t.add("k=" + std::to_string(k) + " determinant vs Karlin-McGregor", worst, 1e-7);
    }
    double worst = 0.0;
    for (double u : {-1.0, -0.3, 0.0, 0.4, 1.2}) {
        const double a = 2.0 * kPi * edge_F_determinant({{u}, {u}}).real();
        const double b = std::sqrt(2.0 * kPi) * gap_cdf(GUE{1}, 2.0 * u);
        worst = std::max(worst, std::abs(a / b - 1.0));
    }
    c.linear("edge k=1 worst relative deviation from erfc form", Route::asym, worst);
    t.add("k=1 vs single-charge edge form", worst, 1e-8);
}

const std::vector<std::pair<std::string, std::function<void(Ctx&, Tally&)>>>& criteria() {
    static const std::vector<std::pair<std::string, std::function<void(Ctx&, Tally&)>>> list{
        {"duality_monte_carlo", c01},     {"two_point_quadrature", c02}, {"gap_vs_quadrature", c03},
        {"painleve_iv", c04},             {"painleve_v", c05},           {"painleve_vi", c06},
        {"noninteger_routes", c07},       {"truncated_cue", c08},        {"hciz", c09},
        {"lemniscate", c10},              {"convergence_trends", c11},   {"scaling_heuristics", c12},
        {"edge_multi_charge", c13}};
    return list;
}

// Extra checks for the full suite.

void x_routes(Ctx& c, Tally& t) {
    const double ex = ginibre_moment_exact(6, 2, 0.4);
    const double tp = ginibre_moment_toeplitz(6, 4.0, 0.4);
    const double co = correlator_finiteN(GinibreWeight{6}, {{Complex(0.4, 0.0)}, {4.0}});
    const double pv = ginibre_moment_pv(6, 4.0, 0.4);
    c.record("ginibre N=6 k=2 z=0.4", Route::exact, ex);
    c.record("ginibre N=6 k=2 z=0.4", Route::toeplitz, tp);
    c.record("ginibre N=6 k=2 z=0.4", Route::pv, pv);
    t.add("toeplitz", std::abs(tp - ex), 1e-8);
    t.add("correlator", std::abs(co - ex), 1e-8);
    t.add("pv", std::abs(pv - ex), 1e-6);
}

void x_rotation(Ctx&, Tally& t) {
    double we = 0.0, wt = 0.0;
    const double e0 = ginibre_moment_exact(5, 2, 0.7), t0 = ginibre_moment_toeplitz(5, 1.3, 0.7);
    for (double a : {kPi / 3.0, 1.7}) {
        we = std::max(we, std::abs(ginibre_moment_exact(5, 2, std::polar(0.7, a)) - e0));
        wt = std::max(wt, std::abs(ginibre_moment_toeplitz(5, 1.3, std::polar(0.7, a)) - t0));
    }
    t.add("exact", we, 1e-12);
    t.add("toeplitz", wt, 1e-12);
}

void x_tcue(Ctx&, Tally& t) {
    t.add("toeplitz vs exact M=5 N=3 k=1 z=0.6",
          std::abs(tcue_moment_toeplitz(5, 3, 2.0, 0.6) - tcue_moment_exact(5, 3, 1, 0.6)), 1e-8);
    t.add("z=1 vs Morris", std::abs(tcue_moment_toeplitz(5, 3, 1.3, 1.0) - tcue_morris(5, 3, 1.3)), 1e-8);
    const double q = oracle::tcue_n1_moment(3, 1.3, 0.5);
    t.add("N=1 planar quadrature gamma=1.3", std::abs(std::log(q) - tcue_moment_toeplitz(3, 1, 1.3, 0.5)), 1e-6);
    t.add("toeplitz gamma=0", std::abs(tcue_moment_toeplitz(5, 3, 0.0, 0.3)), 0.0);
}

void x_correlator_mc(Ctx& c, Tally& t) {
    const ChargeConfiguration ch{{Complex(0.2, 0.0), Complex(0.3, 0.0)}, {2.0, 2.0}};
    const double ex = correlator_finiteN(GinibreWeight{6}, ch);
    const MCEstimate e = mc_moment(Ginibre{6}, ch, 200000, c.sub_seed(101, 0), ex);
    c.record("two charges N=6 z=(0.2,0.3)", Route::exact, ex);
    c.record("two charges N=6 z=(0.2,0.3)", Route::mc, e.log_value(), {}, e.relative_stderr());
    t.add("|dev|/stderr", zscore(e, 1.0), 3.0);
    t.add("trivial charges", std::abs(correlator_finiteN(GinibreWeight{6}, {{Complex(0.2, 0.0)}, {0.0}})), 0.0);
}

void x_lemniscate(Ctx& c, Tally& t) {
    double w1 = 0.0, w0 = 0.0;
    for (int N : {1, 3, 5}) {
        w1 = std::max(w1, std::abs(lemniscate_partition(N, 1, 0.4) - (N * N * 0.16 + log_ginibre_partition(N))));
        for (int d : {2, 3}) {
            double z0 = log_factorial(N * d);
            for (int j = 0; j < N * d; ++j) {
                const double nd = double(N) * d;
                z0 += std::log(oracle::radial_norm([&](double r) { return std::exp(-nd * std::pow(r, d)); }, j));
            }
            w0 = std::max(w0, std::abs(lemniscate_partition(N, d, 0.0) - z0));
        }
    }
    t.add("d=1 shifted Ginibre", w1, 1e-10);
    t.add("t=0 vs radial quadrature (c~ = c Z^d)", w0, 1e-9);
    std::vector<double> e;
    for (int N : {1, 2, 3, 4}) e.push_back(ratio_err(lemniscate_partition(N, 2, 0.3),
                                                     lemniscate_asym(N, 2, 0.3, LemniscateRegime::sub).log_value));
    t.add("sub-critical t=0.3 [" + seq(e) + "]", e.back(), 0.1, trend_ok(e, 0.1));
    e.clear();
    const double tc = lemniscate_critical_t(2);
    for (int N : {2, 4, 8, 16}) e.push_back(ratio_err(lemniscate_partition(N, 2, tc),
                                                      lemniscate_asym(N, 2, tc, LemniscateRegime::critical).log_value));
    t.add("critical tau=0 (conjectural) [" + seq(e) + "]", e.back(), 0.1, trend_ok(e, 0.1));
    c.linear("F_{-1/2}(0)", Route::pv, std::exp(log_edge_F(-0.5, 0.0)));
    e.clear();
    for (int N : {4, 8, 16}) e.push_back(ratio_err(lemniscate_partition(N, 2, 1.0),
                                                   lemniscate_asym(N, 2, 1.0, LemniscateRegime::super).log_value));
    t.add("super-critical t=1 [" + seq(e) + "]", e.back(), 0.1, trend_ok(e, 0.1));
}

void x_noninteger_bulk(Ctx&, Tally& t) {
    const double z = 0.7 / std::sqrt(2.0);
    const double q = oracle::ginibre_n2_induced(1.5, 1.0, z);
    const double ex = correlator_finiteN(InducedGinibre{2, 1.5}, {{Complex(z, 0.0)}, {2.0}});
    t.add("N=2 gamma=1.5 correlator vs quadrature", std::abs(std::log(q) - ex), 1e-6);
    std::vector<double> e;
    for (int N : {8, 32, 128})
        e.push_back(ratio_err(correlator_finiteN(InducedGinibre{N, 1.5}, {{Complex(0.7 / std::sqrt(N), 0.0)}, {2.0}}),
                              noninteger_bulk(N, 1.5, 1.0, 0.7)));
    t.add("gamma=1.5 k2=1 u2=0.7 [" + seq(e) + "]", e.back(), 0.1, trend_ok(e, 0.1));
    t.add("integer case vs two-charge form",
          std::abs(noninteger_bulk(50, 2.0, 2.0, 0.7) - bulk_two_charge(50, 2.0, 2.0, 0.0, 0.0, 0.7)), 1e-10);
}

void x_edge_multi(Ctx& c, Tally& t) {
    Rng rng(c.sub_seed(102, 0));
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    for (int k : {1, 2, 3})
        for (int d = 0; d < 10; ++d) {
            EdgeVectors ev;
            for (int i = 0; i < k; ++i) {
                ev.u.emplace_back(U(rng), U(rng));
                ev.v.emplace_back(U(rng), U(rng));
            }
            const Complex a = edge_F_determinant(ev), b = edge_F_karlin_mcgregor(ev);
            worst = std::max(worst, std::abs(a - b) / std::abs(b));
        }
    t.add("10 draws per k", worst, 1e-7);
    // Confluent Taylor route against a centred difference of the distinct-point ratio.
    const Complex a(0.3, 0.2), b(-0.1, 0.4), w(0.5, -0.3);
    const Complex conf = edge_F_determinant({{a, a}, {b, w}});
    const double h = 1e-4;
    const Complex fd = 0.5 * (edge_F_determinant({{a - h, a + h}, {b, w}}) +
                              edge_F_determinant({{a - 2.0 * h, a + 2.0 * h}, {b, w}}));
    t.add("degenerate u vs nearby distinct points", std::abs(conf - fd) / std::abs(conf), 1e-6);
}

void x_bulk_multi(Ctx&, Tally& t) {
    const Complex a(0.3, 0.1), b(-0.4, 0.5);
    const double m = bulk_multi(50, 0.2, {{a, a, b}, {a, a, b}});
    const double two = bulk_two_charge(50, 2.0, 1.0, 0.2, a, b);
    t.add("block-degenerate vs two-charge", std::abs(m - two), 1e-10);
    std::vector<double> e;
    for (int N : {8, 32, 128}) {
        const double sn = std::sqrt(double(N));
        e.push_back(ratio_err(correlator_finiteN(GinibreWeight{N}, {{0.2 + a / sn, 0.2 + b / sn}, {2.0, 2.0}}),
                              bulk_multi(N, 0.2, {{a, b}, {a, b}})));
    }
    t.add("k=2 distinct [" + seq(e) + "]", e.back(), 0.1, trend_ok(e, 0.1));
    t.add("k=1 single charge", std::abs(bulk_multi(200, 0.3, {{a}, {a}}) - ww_bulk(200, 2.0, 0.3 + a / std::sqrt(200.0))),
          1e-10);
}

void x_hciz_confluent(Ctx& c, Tally& t) {
    const std::vector<Complex> u{{0.4, 0.3}, {0.4, 0.3}, {-0.3, 0.1}}, v{{-0.2, 0.6}, {0.5, 0.1}, {0.1, -0.4}};
    const Complex h = 2.0 * hciz_ratio(u, v);  // G(4) = 2
    const auto mc = oracle::hciz_haar(u, v, 100000, c.sub_seed(103, 0));
    t.add("double point real |dev|/stderr", zscore(mc.re, h.real()), 3.0);
    t.add("double point imag |dev|/stderr", zscore(mc.im, h.imag()), 3.0);
    const std::vector<Complex> a{u[0], u[0]}, b{v[0], v[1]};
    t.add("constant integrand", std::abs(hciz_ratio(a, b) - std::exp(u[0] * std::conj(v[0] + v[1]))), 1e-12);
    t.add("k=1", std::abs(hciz_ratio({u[0]}, {v[0]}) - std::exp(u[0] * std::conj(v[0]))), 1e-14);
}

void x_tcue_morris_limit(Ctx&, Tally& t) {
    std::vector<double> e;
    for (int N : {50, 200, 800}) e.push_back(ratio_err(tcue_morris(N + 1, N, 2.0), tcue_edge(N, 1.0, 1.0, 1e-4)));
    t.add("u -> 0 against Morris, kappa=1 k=1 [" + seq(e) + "]", e.back(), 0.1, trend_ok(e, 0.1));
}

void x_edge_interior(Ctx&, Tally& t) {
    t.add("F_k -> 1 recovers the bulk form", std::abs(ginibre_edge(800, 1.0, 0.5) - ww_bulk(800, 2.0, 0.5)), 1e-10);
    const double k = 0.7;
    const double clt = 800 * 2 * k * std::log(1.5) + 0.5 * 4 * k * k * (-0.5 * std::log(1.0 - 1.0 / 2.25));
    t.add("exterior equals CLT form", std::abs(ginibre_exterior(800, k, 1.5) - clt), 1e-9);
}

void x_determinism(Ctx& c, Tally& t) {
    const ChargeConfiguration ch{{Complex(0.5, 0.0)}, {2.0}};
    const MCEstimate a = mc_moment(Ginibre{5}, ch, 5000, c.seed, 0.0);
    const MCEstimate b = mc_moment(Ginibre{5}, ch, 5000, c.seed, 0.0);
    t.add("bit-identical reruns", (a.mean_shifted == b.mean_shifted && a.stderr_shifted == b.stderr_shifted) ? 0.0 : 1.0,
          0.0);
}

const std::vector<std::pair<std::string, std::function<void(Ctx&, Tally&)>>>& extras() {
    static const std::vector<std::pair<std::string, std::function<void(Ctx&, Tally&)>>> list{
        {"x_bulk_multi", x_bulk_multi},
        {"x_correlator_mc", x_correlator_mc},
        {"x_determinism", x_determinism},
        {"x_edge_interior_exterior", x_edge_interior},
        {"x_edge_multi_random", x_edge_multi},
        {"x_hciz_confluent", x_hciz_confluent},
        {"x_lemniscate", x_lemniscate},
        {"x_noninteger_bulk", x_noninteger_bulk},
        {"x_rotational_invariance", x_rotation},
        {"x_route_equivalence", x_routes},
        {"x_tcue_morris_limit", x_tcue_morris_limit},
        {"x_tcue_routes", x_tcue}};
    return list;
}

CheckResult run_one(const std::string& name, const std::function<void(Ctx&, Tally&)>& f, std::uint64_t seed,
                    std::vector<OutputRecord>* outputs) {
    Ctx ctx{seed, outputs};
    Tally t;
    try {
        f(ctx, t);
    } catch (const std::exception& e) {
        t.fail(std::string("error: ") + e.what());
    }
    return t.result(name);
}

}  // namespace

std::string route_name(Route r) {
    switch (r) {
    case Route::exact: return "exact";
    case Route::toeplitz: return "toeplitz";
    case Route::pv: return "pv";
    case Route::mc: return "mc";
    case Route::asym: return "asym";
    case Route::oracle: return "oracle";
    }
    return "unknown";
}

bool RunReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

CheckResult acceptance_criterion(int id, std::uint64_t seed, std::vector<OutputRecord>* outputs) {
    if (id < 1 || id > kAcceptanceCriteria) throw DomainError("acceptance criterion id out of range");
    const auto& [name, f] = criteria()[id - 1];
    const std::string full = (id < 10 ? "c0" : "c") + std::to_string(id) + "_" + name;
    CheckResult r = run_one(full, f, seed, outputs);
    r.known_unattainable = (id == 12);
    return r;
}

RunReport run_verification_suite(SuiteLevel level, std::uint64_t seed) {
    const auto t0 = Clock::now();
    RunReport rep;
    rep.command = "verify";
    rep.inputs["level"] = level == SuiteLevel::quick ? "quick" : "full";
    rep.inputs["seed"] = std::to_string(seed);
    rep.seed = seed;
    for (int id = 1; id <= kAcceptanceCriteria; ++id) rep.checks.push_back(acceptance_criterion(id, seed, &rep.outputs));
    if (level == SuiteLevel::full)
        for (const auto& [name, f] : extras()) rep.checks.push_back(run_one(name, f, seed, &rep.outputs));
    std::sort(rep.checks.begin(), rep.checks.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    rep.wall_time = seconds_since(t0);
    return rep;
}

}  // namespace charpoly
