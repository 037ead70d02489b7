#include "charpoly/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>

#include "charpoly/detail/fd.hpp"
#include "charpoly/errors.hpp"
#include "charpoly/gap.hpp"

namespace charpoly {
namespace {

namespace ode = boost::numeric::odeint;
using State = std::array<double, 3>;

constexpr double kInf = std::numeric_limits<double>::infinity();

double prod(const std::array<double, 4>& b) { return b[0] * b[1] * b[2] * b[3]; }

double pvi_shift(const PVI& p) { return 0.5 * (p.b[0] * p.b[1] + p.b[2] * p.b[3]); }

void check_t(const SigmaFamily& f, double t) {
    if (std::holds_alternative<PV>(f) && t == 0.0) throw DomainError("PV sigma-form is singular at t = 0");
    if (std::holds_alternative<PVI>(f) && (t == 0.0 || t == 1.0))
        throw DomainError("PVI sigma-form is singular at t = 0, 1");
}

double norm_scale(double t, double s, double s1) { return 1.0 + s * s + (t * s1) * (t * s1); }

// Coefficients of A s2^2 = R.
std::pair<double, double> quadratic(const SigmaFamily& f, double t, double s, double s1) {
    if (const auto* p = std::get_if<PIV>(&f)) {
        const double q = t * s1 - s;
        return {1.0, q * q - 4.0 * s1 * s1 * (s1 + p->k)};
    }
    if (const auto* p = std::get_if<PV>(&f)) {
        const double a = s - t * s1 + 2.0 * s1 * s1 + (2.0 * p->k + p->alpha) * s1;
        return {t * t, a * a - 4.0 * s1 * s1 * (p->k + p->alpha + s1) * (p->k + s1)};
    }
    const auto& b = std::get<PVI>(f).b;
    const double w = t * (1.0 - t);
    const double a = s1 * (2.0 * s + (1.0 - 2.0 * t) * s1) + prod(b);
    double pr = 1.0;
    for (double bi : b) pr *= s1 - bi * bi;
    return {s1 * w * w, a * a - pr};
}

enum class Status { ok, blowup, stiff };

struct Track {
    std::vector<double> t, s, s1, s2;
    Status status = Status::ok;
    double t_stop = 0.0;
    State y{};
};

double max_step(const SigmaFamily& f, double t) {
    if (std::holds_alternative<PIV>(f)) return 0.05;
    if (std::holds_alternative<PV>(f)) return std::max(1e-6, std::min(0.05, 0.1 * std::abs(t)));
    return std::max(1e-7, std::min({0.01, 0.1 * t, 0.1 * (1.0 - t)}));
}

Track integrate(const SigmaFamily& f, State y, double t0, double t1, double abs_tol, double rel_tol, bool record,
                double blow) {
    auto stepper = ode::make_controlled(abs_tol, rel_tol, ode::runge_kutta_fehlberg78<State>());
    auto rhs = [&f](const State& x, State& d, double t) {
        d[0] = x[1];
        d[1] = x[2];
        d[2] = sigma_third(f, t, x[0], x[1], x[2]);
    };
    Track tr;
    const double dir = t1 >= t0 ? 1.0 : -1.0;
    double t = t0;
    double dt = dir * std::min(max_step(f, t0), std::max(1e-8, 1e-3 * std::abs(t1 - t0)));
    auto push = [&] {
        if (!record) return;
        tr.t.push_back(t);
        tr.s.push_back(y[0]);
        tr.s1.push_back(y[1]);
        tr.s2.push_back(y[2]);
    };
    push();
    const double eps = 1e-14 * std::max(1.0, std::abs(t1));
    while (dir * (t1 - t) > eps) {
        const double hmax = max_step(f, t);
        if (std::abs(dt) > hmax) dt = dir * hmax;
        if (dir * (t + dt - t1) > 0.0) dt = t1 - t;
        const auto r = stepper.try_step(rhs, y, t, dt);
        if (r == ode::fail) {
            if (std::abs(dt) < 1e-13 * std::max(1.0, std::abs(t))) {
                tr.status = Status::stiff;
                tr.t_stop = t;
                tr.y = y;
                return tr;
            }
            continue;
        }
        if (!std::isfinite(y[0]) || !std::isfinite(y[1]) || !std::isfinite(y[2]) || std::abs(y[0]) > blow) {
            tr.status = Status::blowup;
            tr.t_stop = t;
            tr.y = y;
            return tr;
        }
        push();
    }
    tr.t_stop = t;
    tr.y = y;
    return tr;
}

double pick_root(const SigmaFamily& f, double t, double s, double s1, std::optional<double> hint, double tol) {
    const auto r = sigma_second_roots(f, t, s, s1, tol);
    if (!hint) return r[0];
    return std::abs(r[0] - *hint) <= std::abs(r[1] - *hint) ? r[0] : r[1];
}

void check_nodes(SigmaSolution& sol) {
    for (std::size_t i = 0; i < sol.grid.size(); ++i) {
        const double r = std::abs(
            residual(sol.family, sol.grid[i], sol.sigma[i], sol.sigma_prime[i], sol.sigma_second[i]));
        if (!(r <= sol.tol))
            throw AccuracyError("sigma-form residual " + std::to_string(r) + " above tolerance at t = " +
                                std::to_string(sol.grid[i]));
    }
}

SigmaSolution from_track(const SigmaFamily& f, Track tr, double tol, bool reverse) {
    if (reverse) {
        std::reverse(tr.t.begin(), tr.t.end());
        std::reverse(tr.s.begin(), tr.s.end());
        std::reverse(tr.s1.begin(), tr.s1.end());
        std::reverse(tr.s2.begin(), tr.s2.end());
    }
    SigmaSolution sol{f, std::move(tr.t), std::move(tr.s), std::move(tr.s1), std::move(tr.s2), tol};
    return sol;
}

void raise(const Track& tr) {
    if (tr.status == Status::stiff) throw StiffnessError("step size underflow", tr.t_stop);
    if (tr.status == Status::blowup) throw StiffnessError("solution left the representable range", tr.t_stop);
}

bool is_trivial(const SigmaFamily& f) {
    if (const auto* p = std::get_if<PIV>(&f)) return p->k == 0.0;
    if (const auto* p = std::get_if<PV>(&f)) return p->k == 0.0;
    return false;
}

SigmaSolution zero_solution(const SigmaFamily& f, double a, double b, double tol) {
    SigmaSolution sol{f, {}, {}, {}, {}, tol};
    const int n = std::max(2, static_cast<int>(std::ceil((b - a) / 0.05)) + 1);
    for (int i = 0; i < n; ++i) {
        sol.grid.push_back(a + (b - a) * i / (n - 1));
        sol.sigma.push_back(0.0);
        sol.sigma_prime.push_back(0.0);
        sol.sigma_second.push_back(0.0);
    }
    return sol;
}

// Shooting from the decaying tail at large t (PIV, PV largest gap).
SigmaSolution solve_tail(const SigmaFamily& f, const SigmaInit& init, double t_end, double tol) {
    const auto* p4 = std::get_if<PIV>(&f);
    const bool asymptote = p4 && init.t0 < -6.0;
    // Backward integration towards the asymptote regime loses all precision
    // beyond a k-dependent point, so the asymptotic match is tried from -6 inwards.
    std::vector<double> match_points{init.t0};
    if (asymptote) match_points = {-6.0, -5.5, -5.0, -4.5, -4.0, -3.5, -3.0};
    const double t_right = std::max(init.t0, t_end);
    double L;
    double m;
    if (p4) {
        L = std::max(10.0, t_right + 2.0);
        m = 2.0 * p4->k - 2.0;
    } else {
        const auto& pv = std::get<PV>(f);
        m = pv.alpha + 2.0 * pv.k - 1.0;
        L = t_right + 40.0 + 2.0 * std::max(0.0, m);
    }
    const double center = p4 ? -0.5 * L * L + m * std::log(L) : -L + m * std::log(L);

    auto tail_state = [&](double sign, double logc) {
        const double s = sign * std::exp(logc);
        State y;
        y[0] = s;
        if (p4) {
            y[1] = s * (-L + m / L);
            y[2] = s * (L * L - 4.0 * p4->k + 3.0);
        } else {
            y[1] = s * (-1.0 + m / L);
            y[2] = s * (1.0 - 2.0 * m / L + (m * m - m) / (L * L));
        }
        try {
            y[2] = pick_root(f, L, y[0], y[1], y[2], 1e-6);
        } catch (const BranchError&) {
            y[2] = std::numeric_limits<double>::quiet_NaN();
        }
        return y;
    };

    struct Candidate {
        double sign, logc, err, quality;
    };
    for (double tm : match_points) {
        double target = init.sigma;
        double target_p = init.sigma_prime;
        if (asymptote) {
            target = p4_asymptotic_series(p4->k, tm);
            target_p = p4_asymptotic_series_prime(p4->k, tm);
        }
        const double t_lo = asymptote ? tm : std::min(tm, t_end);
        if (is_trivial(f) && target == 0.0 && target_p == 0.0) return zero_solution(f, t_lo, L, tol);

        const double blow = 1e8 * (1.0 + std::abs(target) + std::abs(tm * target_p));
        auto run = [&](double sign, double logc, double t_stop, bool record) {
            const State y = tail_state(sign, logc);
            if (std::isnan(y[2])) {
                Track bad;
                bad.status = Status::stiff;
                bad.y = {std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
                return bad;
            }
            return integrate(f, y, L, t_stop, 1e-12 * std::abs(y[0]), 1e-12, record, blow);
        };
        auto mismatch = [&](double sign, double logc) {
            const Track tr = run(sign, logc, tm, false);
            if (std::isnan(tr.y[0])) return tr.y[0];
            if (tr.status != Status::ok) return tr.y[0] > 0.0 ? kInf : -kInf;
            return tr.y[0] - target;
        };

        std::vector<Candidate> cands;
        const double step = 0.5;
        for (double sign : {1.0, -1.0}) {
            double prev_c = center - 60.0;
            double prev_m = mismatch(sign, prev_c);
            for (double c = prev_c + step; c <= center + 40.0 + 1e-9; c += step) {
                const double mc = mismatch(sign, c);
                if (!std::isnan(mc) && !std::isnan(prev_m) && ((mc < 0.0) != (prev_m < 0.0))) {
                    double lo = prev_c, hi = c;
                    const bool lo_neg = prev_m < 0.0;
                    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++it) {
                        const double mid = 0.5 * (lo + hi);
                        if ((mismatch(sign, mid) < 0.0) == lo_neg)
                            lo = mid;
                        else
                            hi = mid;
                    }
                    for (double end : {lo, hi}) {
                        const Track tr = run(sign, end, tm, false);
                        if (tr.status != Status::ok) continue;
                        const double err = std::abs(tr.y[0] - target);
                        if (err <= 1e-2 * (1.0 + std::abs(target)))
                            cands.push_back({sign, end, err, std::abs(tr.y[1] - target_p)});
                    }
                }
                prev_c = c;
                prev_m = mc;
            }
        }
        if (cands.empty()) continue;
        const auto best = *std::min_element(
            cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.quality < b.quality; });
        Track tr = run(best.sign, best.logc, t_lo, true);
        raise(tr);
        SigmaSolution sol = from_track(f, std::move(tr), tol, true);
        check_nodes(sol);
        return sol;
    }
    throw AccuracyError("tail shooting found no trajectory through the initial data");
}

bool uses_tail(const SigmaFamily& f) {
    if (std::holds_alternative<PIV>(f)) return true;
    if (const auto* p = std::get_if<PV>(&f)) return p->gap == LaguerreGap::largest;
    return false;
}

void check_interval(const SigmaFamily& f, double a, double b) {
    if (std::holds_alternative<PV>(f) && (a <= 0.0 || b <= 0.0))
        throw DomainError("PV solutions are integrated on t > 0");
    if (std::holds_alternative<PVI>(f) && (a <= 0.0 || b >= 1.0 || a >= 1.0 || b <= 0.0))
        throw DomainError("PVI solutions are integrated on 0 < t < 1");
}

Track direct(const SigmaFamily& f, const SigmaInit& init, double t_end, double tol) {
    const double s2 = pick_root(f, init.t0, init.sigma, init.sigma_prime, init.sigma_second, 10.0 * tol);
    const State y{init.sigma, init.sigma_prime, s2};
    const double blow = 1e8 * (1.0 + std::abs(init.sigma) + std::abs(init.t0 * init.sigma_prime));
    const double itol = std::min(1e-12, 1e-3 * tol);
    Track tr = integrate(f, y, init.t0, t_end, itol * (1.0 + std::abs(init.sigma)), itol, true, blow);
    raise(tr);
    return tr;
}

double integrand(const SigmaFamily& f, double t, double s) {
    if (std::holds_alternative<PIV>(f)) return s;
    if (std::holds_alternative<PV>(f)) return s / t;
    const auto& p = std::get<PVI>(f);
    return (s - p.b[0] * p.b[1] * t + pvi_shift(p)) / (t * (1.0 - t));
}

double hermite(const SigmaSolution& sol, std::size_t i, double t) {
    const double h = sol.grid[i + 1] - sol.grid[i];
    const double u = (t - sol.grid[i]) / h;
    const double u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
    const double h0 = 1 - 10 * u3 + 15 * u4 - 6 * u5;
    const double h1 = u - 6 * u3 + 8 * u4 - 3 * u5;
    const double h2 = 0.5 * (u2 - 3 * u3 + 3 * u4 - u5);
    const double h3 = 0.5 * (u3 - 2 * u4 + u5);
    const double h4 = -4 * u3 + 7 * u4 - 3 * u5;
    const double h5 = 10 * u3 - 15 * u4 + 6 * u5;
    return sol.sigma[i] * h0 + h * sol.sigma_prime[i] * h1 + h * h * sol.sigma_second[i] * h2 +
           h * h * sol.sigma_second[i + 1] * h3 + h * sol.sigma_prime[i + 1] * h4 + sol.sigma[i + 1] * h5;
}

std::size_t segment_of(const SigmaSolution& sol, double t) {
    auto it = std::upper_bound(sol.grid.begin(), sol.grid.end(), t);
    std::size_t i = it == sol.grid.begin() ? 0 : static_cast<std::size_t>(it - sol.grid.begin()) - 1;
    return std::min(i, sol.grid.size() - 2);
}

double segment_integral(const SigmaSolution& sol, std::size_t i, double a, double b) {
    auto g = [&](double t) { return integrand(sol.family, t, hermite(sol, i, t)); };
    return boost::math::quadrature::gauss<double, 10>::integrate(g, a, b);
}

}  // namespace

std::string family_name(const SigmaFamily& f) {
    if (std::holds_alternative<PIV>(f)) return "PIV";
    if (std::holds_alternative<PV>(f)) return "PV";
    return "PVI";
}

PVI pvi_from_jue(double k, double alpha, double beta) {
    const double b1 = k + 0.5 * (alpha + beta);
    return PVI{{b1, b1, 0.5 * (alpha + beta), 0.5 * (beta - alpha)}};
}

double residual_raw(const SigmaFamily& f, double t, double s, double s1, double s2) {
    check_t(f, t);
    const auto [a, r] = quadratic(f, t, s, s1);
    return a * s2 * s2 - r;
}

double residual(const SigmaFamily& f, double t, double s, double s1, double s2) {
    return residual_raw(f, t, s, s1, s2) / norm_scale(t, s, s1);
}

double residual_heqn(double gamma, double kappa, double N, double t, double h, double h1, double h2) {
    const std::array<double, 4> b{0.5 * (kappa + N), 0.5 * (kappa + gamma + N), 0.5 * (N - kappa),
                                  -0.5 * (N + gamma + kappa)};
    const double w = t * (1.0 - t) * h2;
    const double a = h1 * (2.0 * h - (2.0 * t - 1.0) * h1) + prod(b);
    double rhs = 1.0;
    for (double bi : b) rhs *= h1 + bi * bi;
    return h1 * w * w + a * a - rhs;
}

double sigma_third(const SigmaFamily& f, double t, double s, double s1, double s2) {
    if (const auto* p = std::get_if<PIV>(&f)) return -4.0 * p->k * s1 - s * t - 6.0 * s1 * s1 + s1 * t * t;
    if (const auto* p = std::get_if<PV>(&f)) {
        const double a = p->alpha, k = p->k;
        return (a * a * s1 + a * s + 2.0 * k * s + 4.0 * s * s1 + s1 * t * t -
                t * (2.0 * a * s1 + 4.0 * k * s1 + s + 6.0 * s1 * s1 + s2)) /
               (t * t);
    }
    const auto& b = std::get<PVI>(f).b;
    const double B1 = b[0] * b[0], B2 = b[1] * b[1], B3 = b[2] * b[2], B4 = b[3] * b[3];
    const double P = prod(b);
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
    const double q = s1 * s1;
    const double num = B1 * B2 * B3 + B1 * B2 * B4 - 2 * B1 * B2 * s1 + B1 * B3 * B4 - 2 * B1 * B3 * s1 -
                       2 * B1 * B4 * s1 + 3 * B1 * q + 4 * P * s - 8 * P * s1 * t + 4 * P * s1 + B2 * B3 * B4 -
                       2 * B2 * B3 * s1 - 2 * B2 * B4 * s1 + 3 * B2 * q - 2 * B3 * B4 * s1 + 3 * B3 * q + 3 * B4 * q +
                       8 * s * s * s1 - 24 * s * q * t + 12 * s * q + 16 * q * s1 * t2 - 16 * q * s1 * t -
                       4 * s1 * s2 * t3 + 6 * s1 * s2 * t2 - 2 * s1 * s2 * t - s2 * s2 * t4 + 2 * s2 * s2 * t3 -
                       s2 * s2 * t2;
    const double om = 1.0 - t;
    return 0.5 * num / (s1 * t2 * om * om);
}

std::array<double, 2> sigma_second_roots(const SigmaFamily& f, double t, double s, double s1, double tol) {
    check_t(f, t);
    const auto [a, r] = quadratic(f, t, s, s1);
    if (a == 0.0) throw BranchError("sigma-form degenerates (vanishing sigma'' coefficient)", t);
    double disc = r / a;
    if (disc < 0.0) {
        if (std::abs(r) / norm_scale(t, s, s1) > tol)
            throw BranchError("negative discriminant in the sigma-form", t);
        disc = 0.0;
    }
    const double root = std::sqrt(disc);
    return {root, -root};
}

double SigmaSolution::eval(double t) const {
    if (grid.size() < 2 || t < grid.front() || t > grid.back())
        throw ExtrapolationError("evaluation outside the solution grid");
    return hermite(*this, segment_of(*this, t), t);
}

double SigmaSolution::max_residual() const {
    double m = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        m = std::max(m, std::abs(residual(family, grid[i], sigma[i], sigma_prime[i], sigma_second[i])));
    return m;
}

double p4_asymptotic_series(double k, double t) {
    const double k2 = k * k, k3 = k2 * k, k4 = k2 * k2;
    const double u = 1.0 / t, u2 = u * u;
    const double c[] = {-k2,
                        2 * k3,
                        -k2 * (9 * k2 + 1),
                        2 * k3 * (27 * k2 + 10),
                        -k2 * (378 * k4 + 307 * k2 + 21),
                        2 * k3 * (1458 * k4 + 2140 * k2 + 483)};
    double s = -k * t;
    double up = u;
    for (double ci : c) {
        s += ci * up;
        up *= u2;
    }
    return s;
}

double p4_asymptotic_series_prime(double k, double t) {
    const double k2 = k * k, k3 = k2 * k, k4 = k2 * k2;
    const double u = 1.0 / t, u2 = u * u;
    const double c[] = {-k2,
                        2 * k3,
                        -k2 * (9 * k2 + 1),
                        2 * k3 * (27 * k2 + 10),
                        -k2 * (378 * k4 + 307 * k2 + 21),
                        2 * k3 * (1458 * k4 + 2140 * k2 + 483)};
    double s = -k;
    double up = u2;
    int p = 1;
    for (double ci : c) {
        s -= p * ci * up;
        up *= u2;
        p += 2;
    }
    return s;
}

SigmaInit init_from_asymptote_p4(double k, double T) {
    if (!(T >= 1e3)) throw DomainError("asymptotic initialization needs T >= 1e3");
    const double t0 = -T;
    return {t0, -k * t0 - k * k / t0, -k + k * k / (t0 * t0), -2.0 * k * k / (t0 * t0 * t0)};
}

SigmaInit init_from_gap(const SigmaFamily& f, double t0) {
    std::function<double(double)> logp;
    double h;
    auto integer_k = [](double k) {
        const double r = std::round(k);
        if (r < 1.0 || std::abs(k - r) > 1e-12) throw DomainError("gap initialization needs a positive integer k");
        return static_cast<int>(r);
    };
    if (const auto* p = std::get_if<PIV>(&f)) {
        const int k = integer_k(p->k);
        logp = [k](double t) { return log_gap_cdf(GUE{k}, t); };
        h = 0.02 * std::max(1.0, std::abs(t0));
    } else if (const auto* p = std::get_if<PV>(&f)) {
        const int k = integer_k(p->k);
        if (!(t0 > 0.0)) throw DomainError("PV initialization needs t0 > 0");
        const double a = p->alpha;
        if (p->gap == LaguerreGap::smallest)
            logp = [k, a](double t) { return log_lue_tail(k, a, t); };
        else
            logp = [k, a](double t) { return log_gap_cdf(LUE{k, a}, t); };
        h = std::min(0.02 * std::max(1.0, t0), 0.2 * t0);
    } else {
        const auto& b = std::get<PVI>(f).b;
        if (std::abs(b[0] - b[1]) > 1e-12 * (1.0 + std::abs(b[0])))
            throw DomainError("PVI gap initialization needs b1 = b2");
        const int k = integer_k(b[0] - b[2]);
        const double a = b[2] - b[3], be = b[2] + b[3];
        if (!(t0 > 0.0 && t0 < 1.0)) throw DomainError("PVI initialization needs 0 < t0 < 1");
        logp = [k, a, be](double t) { return log_gap_cdf(JUE{k, a, be}, t); };
        h = std::min(0.01, 0.02 * std::min(t0, 1.0 - t0));
    }
    const double l0 = logp(t0);
    if (l0 < std::log(1e-300)) throw UnderflowError("gap probability below 1e-300 at t0");
    if (l0 == 0.0) throw DomainError("gap probability is identically one at t0");
    const auto d = detail::central_derivatives(logp, t0, h);
    SigmaInit init{t0, 0.0, 0.0, std::nullopt};
    if (std::holds_alternative<PIV>(f)) {
        init.sigma = d[1];
        init.sigma_prime = d[2];
        init.sigma_second = d[3];
    } else if (std::holds_alternative<PV>(f)) {
        init.sigma = t0 * d[1];
        init.sigma_prime = d[1] + t0 * d[2];
        init.sigma_second = 2.0 * d[2] + t0 * d[3];
    } else {
        const auto& p = std::get<PVI>(f);
        const double w = t0 * (1.0 - t0);
        init.sigma = w * d[1] + p.b[0] * p.b[1] * t0 - pvi_shift(p);
        init.sigma_prime = (1.0 - 2.0 * t0) * d[1] + w * d[2] + p.b[0] * p.b[1];
        init.sigma_second = -2.0 * d[1] + 2.0 * (1.0 - 2.0 * t0) * d[2] + w * d[3];
    }
    return init;
}

SigmaSolution solve(const SigmaFamily& f, const SigmaInit& init, double t_end, double tol) {
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    if (uses_tail(f)) {
        if (std::holds_alternative<PV>(f)) check_interval(f, std::min(init.t0, t_end), std::max(init.t0, t_end));
        if (!std::get_if<PIV>(&f) || init.t0 >= -6.0)
            sigma_second_roots(f, init.t0, init.sigma, init.sigma_prime, 10.0 * tol);
        return solve_tail(f, init, t_end, tol);
    }
    check_interval(f, std::min(init.t0, t_end), std::max(init.t0, t_end));
    if (is_trivial(f) && init.sigma == 0.0 && init.sigma_prime == 0.0)
        return zero_solution(f, std::min(init.t0, t_end), std::max(init.t0, t_end), tol);
    Track tr = direct(f, init, t_end, tol);
    SigmaSolution sol = from_track(f, std::move(tr), tol, t_end < init.t0);
    check_nodes(sol);
    return sol;
}

SigmaSolution solve_interval(const SigmaFamily& f, const SigmaInit& init, double a, double b, double tol) {
    if (!(a <= init.t0 && init.t0 <= b)) throw DomainError("solve_interval needs a <= t0 <= b");
    if (uses_tail(f)) return solve(f, init, a, tol);
    SigmaSolution left = solve(f, init, a, tol);
    SigmaSolution right = solve(f, init, b, tol);
    SigmaSolution out{f, {}, {}, {}, {}, tol};
    const std::size_t nl = left.grid.size();
    for (std::size_t i = 0; i + 1 < nl; ++i) {
        out.grid.push_back(left.grid[i]);
        out.sigma.push_back(left.sigma[i]);
        out.sigma_prime.push_back(left.sigma_prime[i]);
        out.sigma_second.push_back(left.sigma_second[i]);
    }
    out.grid.insert(out.grid.end(), right.grid.begin(), right.grid.end());
    out.sigma.insert(out.sigma.end(), right.sigma.begin(), right.sigma.end());
    out.sigma_prime.insert(out.sigma_prime.end(), right.sigma_prime.begin(), right.sigma_prime.end());
    out.sigma_second.insert(out.sigma_second.end(), right.sigma_second.begin(), right.sigma_second.end());
    return out;
}

double log_F_from_sigma(const SigmaSolution& sol, double x) {
    const std::size_t n = sol.grid.size();
    if (n < 2) throw ExtrapolationError("solution grid too short");
    const double slack = 1e-12 * std::max(1.0, std::abs(x));
    if (x < sol.grid.front() - slack || x > sol.grid.back() + slack)
        throw ExtrapolationError("x outside the solution grid");
    x = std::clamp(x, sol.grid.front(), sol.grid.back());
    const std::size_t j = segment_of(sol, x);
    const auto* pv = std::get_if<PV>(&sol.family);
    if (pv && pv->gap == LaguerreGap::smallest) {
        const double t0 = sol.grid.front(), s0 = sol.sigma.front();
        double head = 0.0;
        if (s0 != 0.0) {
            double p = t0 * sol.sigma_prime.front() / s0;
            if (!(p > 0.5)) p = pv->alpha + 1.0;
            head = s0 / p;
        }
        double acc = head;
        for (std::size_t i = 0; i < j; ++i) acc += segment_integral(sol, i, sol.grid[i], sol.grid[i + 1]);
        acc += segment_integral(sol, j, sol.grid[j], x);
        return acc;
    }
    double acc = segment_integral(sol, j, x, sol.grid[j + 1]);
    for (std::size_t i = j + 1; i + 1 < n; ++i) acc += segment_integral(sol, i, sol.grid[i], sol.grid[i + 1]);
    const double tl = sol.grid.back(), sl = sol.sigma.back();
    if (const auto* p6 = std::get_if<PVI>(&sol.family)) {
        const double beta = p6->b[2] + p6->b[3];
        acc += integrand(sol.family, tl, sl) * (1.0 - tl) / (beta + 1.0);
    } else {
        acc += sl / tl;
    }
    return -acc;
}

double F_from_sigma(const SigmaSolution& sol, double x) { return std::exp(log_F_from_sigma(sol, x)); }

double p5_to_p4_residual(double gamma, int N, double s) {
    if (gamma == 0.0) return 0.0;
    const double k = 0.5 * gamma;
    if (k < 1.0 || std::abs(k - std::round(k)) > 1e-12)
        throw DomainError("p5_to_p4_residual needs gamma = 0 or a positive even integer");
    if (N < 16) throw DomainError("p5_to_p4_residual needs N >= 16");
    const double rn = std::sqrt(static_cast<double>(N));
    const double t0 = N - s * rn;
    if (!(t0 > 0.0)) throw DomainError("rescaled point outside t > 0");
    const PV pv{k, static_cast<double>(N), LaguerreGap::smallest};
    const SigmaInit init = init_from_gap(pv, t0);
    const double s2 = pick_root(pv, t0, init.sigma, init.sigma_prime, init.sigma_second, 1e-6);
    const double v = -init.sigma / rn, v1 = init.sigma_prime, v2 = -rn * s2;
    return std::abs(residual(PIV{k}, s, v, v1, v2));
}

double p6_to_p5_residual(double k, double kappa, int N, double t) {
    if (k == 0.0) return 0.0;
    if (k < 1.0 || std::abs(k - std::round(k)) > 1e-12)
        throw DomainError("p6_to_p5_residual needs a positive integer k");
    if (N < 1) throw DomainError("p6_to_p5_residual needs N >= 1");
    const PVI p6 = pvi_from_jue(k, kappa, N);
    const double n = N;
    const double x = t / n;
    if (!(x > 0.0 && x < 1.0)) throw DomainError("rescaled point outside (0, 1)");
    const int ki = static_cast<int>(std::round(k));
    auto logp = [&](double y) { return log_gap_cdf(JUE{ki, kappa, n}, y); };
    const double l0 = logp(x);
    if (l0 < std::log(1e-300)) throw UnderflowError("gap probability below 1e-300");
    const auto d = detail::central_derivatives(logp, x, 0.02 * x);
    const double w = x * (1.0 - x);
    const double v = w * d[1];
    const double v1 = ((1.0 - 2.0 * x) * d[1] + w * d[2]) / n;
    const double bb = p6.b[0] * p6.b[1];
    const double sig = v + bb * x - pvi_shift(p6);
    const double sig1 = n * v1 + bb;
    const double hint = -2.0 * d[1] + 2.0 * (1.0 - 2.0 * x) * d[2] + w * d[3];
    const double s2 = pick_root(p6, x, sig, sig1, hint, 1e-6);
    const double v2 = s2 / (n * n);
    return std::abs(residual(PV{k, kappa}, t, v, v1, v2));
}

}  // namespace charpoly
