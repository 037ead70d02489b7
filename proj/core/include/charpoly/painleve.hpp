#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace charpoly {

struct PIV {
    double k;
};

// Which Laguerre gap probability the PV solution encodes:
//   smallest: P(lambda_min > x) = exp( int_0^x sigma/t dt)
//   largest:  P(lambda_max < x) = exp(-int_x^inf sigma/t dt)
enum class LaguerreGap { smallest, largest };

struct PV {
    double k;
    double alpha;
    LaguerreGap gap = LaguerreGap::smallest;
};

struct PVI {
    std::array<double, 4> b;
};

using SigmaFamily = std::variant<PIV, PV, PVI>;

std::string family_name(const SigmaFamily& f);

// PVI parameters attached to JUE{k, alpha, beta}.
PVI pvi_from_jue(double k, double alpha, double beta);

// Raw sigma-form left-hand side.
double residual_raw(const SigmaFamily& f, double t, double s, double s1, double s2);

// Left-hand side divided by 1 + s^2 + (t s1)^2.
double residual(const SigmaFamily& f, double t, double s, double s1, double s2);

// Raw left-hand side minus right-hand side of the truncated-CUE h-equation.
double residual_heqn(double gamma, double kappa, double N, double t, double h, double h1, double h2);

// sigma''' from the differentiated sigma-form.
double sigma_third(const SigmaFamily& f, double t, double s, double s1, double s2);

// The two sigma'' roots (+r, -r) of the sigma-form; throws BranchError when
// the discriminant is negative beyond tolerance.
std::array<double, 2> sigma_second_roots(const SigmaFamily& f, double t, double s, double s1, double tol = 1e-8);

struct SigmaInit {
    double t0;
    double sigma;
    double sigma_prime;
    std::optional<double> sigma_second;  // also used as a hint for the root choice
};

struct SigmaSolution {
    SigmaFamily family;
    std::vector<double> grid;
    std::vector<double> sigma;
    std::vector<double> sigma_prime;
    std::vector<double> sigma_second;
    double tol = 0.0;

    double t_min() const { return grid.front(); }
    double t_max() const { return grid.back(); }
    // Quintic Hermite interpolation of sigma.
    double eval(double t) const;
    double max_residual() const;
};

// Large-negative-t asymptote sigma = -k t - k^2/t.
SigmaInit init_from_asymptote_p4(double k, double T);

// The asymptotic series of sigma_IV at t -> -inf through 1/t^11, and its derivative.
double p4_asymptotic_series(double k, double t);
double p4_asymptotic_series_prime(double k, double t);

// sigma and sigma' from finite differences of the matching gap probability:
//   PIV{k}          <-> GUE{k},            sigma = (ln F)'
//   PV{k, a, gap}   <-> LUE{k, a},         sigma = t (ln P)'
//   PVI{b}          <-> JUE{b1-b3, b3-b4, b3+b4},
//                       sigma = t(1-t)(ln P)' + b1 b2 t - (b1 b2 + b3 b4)/2
SigmaInit init_from_gap(const SigmaFamily& f, double t0);

inline constexpr double kDefaultSigmaTol = 1e-8;

// Integrates the sigma-form from init towards t_end. PIV and the PV largest
// gap are solved by shooting from their decaying tail at large t, so the grid
// runs from min(t0, t_end) to a tail point beyond t_end; PV smallest and PVI
// are integrated directly from t0 to t_end.
SigmaSolution solve(const SigmaFamily& f, const SigmaInit& init, double t_end, double tol = kDefaultSigmaTol);

// Two-sided direct integration over [a, b] containing init.t0 (PV smallest, PVI).
SigmaSolution solve_interval(const SigmaFamily& f, const SigmaInit& init, double a, double b,
                             double tol = kDefaultSigmaTol);

double log_F_from_sigma(const SigmaSolution& sol, double x);
double F_from_sigma(const SigmaSolution& sol, double x);

// Rescaled PV residual in PIV{gamma/2} form at s, from PV{gamma/2, N} data.
double p5_to_p4_residual(double gamma, int N, double s);

// Rescaled PVI residual in PV{k, kappa} form at t, from JUE{k, kappa, N} data.
double p6_to_p5_residual(double k, double kappa, int N, double t);

}  // namespace charpoly
