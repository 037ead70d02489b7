#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "charpoly/ensembles.hpp"
#include "charpoly/linalg.hpp"

namespace charpoly {

// ln R_gamma(0) = ln E|det G_N|^gamma for the Ginibre ensemble.
double ginibre_log_r0(int N, double gamma);

// ln E|det(G_N - z)|^{2k} via the LUE smallest-eigenvalue duality.
double ginibre_moment_exact(int N, int k, Complex z);

// Fourier coefficient m of (1 + e^{-i theta})^a exp(x e^{i theta}), summed in
// positive terms.
double ginibre_toeplitz_coefficient(double a, double x, int m);

// ln E|det(G_N - z)|^gamma via the N x N Toeplitz determinant.
double ginibre_moment_toeplitz(int N, double gamma, Complex z);

// ln E|det(G_N - z)|^gamma via the PV sigma-form, integrated from data at N|z|^2
// down towards 0.
double ginibre_moment_pv(int N, double gamma, Complex z, double tol = 1e-10);

// ln C_{M,N,k} = ln E|det T|^{2k} for the truncated CUE.
double tcue_log_c(int M, int N, int k);

// E det(T - x)^k det(T^dagger - y)^k from the k x k JUE-type moment determinant.
Complex tcue_moment_value(int M, int N, int k, Complex x, Complex y);

// ln of the above for x = conj(y) = z. When |z| < 1 the JUE-factored form is
// evaluated as well and the two are required to agree.
double tcue_moment_exact(int M, int N, int k, Complex z);

// C_{M,N,k} (1-|z|^2)^{-k(M-N)-k^2} P(lambda_max^{JUE{k,M-N,N}} < 1-|z|^2), in logs.
double tcue_moment_jue_factored(int M, int N, int k, Complex z);

double tcue_log_r0(int M, int N, double gamma);
double tcue_moment_toeplitz(int M, int N, double gamma, Complex z);
// ln R_gamma(1) by the Morris integral.
double tcue_morris(int M, int N, double gamma);

// Fourier coefficients f_m, m = -(n-1)..(n-1), of a 2pi-periodic symbol given
// as g(theta, c) with c = cos(theta/2) >= 0 computed without cancellation near
// theta = +-pi. Returned with index m + n - 1.
std::vector<Complex> fourier_coefficients(const std::function<Complex(double, double)>& g, int n);

// det{K(x_i, y_j)} / (Delta(x) Delta(y)), Delta(x) = prod_{i<j} (x_j - x_i), with
// coincident points (within merge_tol) replaced by Taylor coefficients of K.
// Returned as (log|value|, phase).
LogDet confluent_ratio(const std::function<Complex(Complex, Complex)>& kernel, const std::vector<Complex>& x,
                       const std::vector<Complex>& y, double merge_tol = 1e-8);

// det{e^{u_i conj(v_j)}} / (Delta(u) Delta(conj v)).
Complex hciz_ratio(const std::vector<Complex>& u, const std::vector<Complex>& v);

struct TraceIdentity {
    Complex direct;    // Tr(U A U^dagger conj(B))
    Complex explicit_; // u1 v1' k1 + u2 v2' k2 - (u2-u1)(v2'-v1') Tr(c c^dagger)
};

// A = diag(u1 I_k1, u2 I_k2), B = diag(v1 I_k1, v2 I_k2), c the lower-left k2 x k1 block of U.
TraceIdentity hciz_trace_identity(const ComplexMatrix& U, Complex u1, Complex u2, Complex v1, Complex v2, int k1,
                                  int k2);

// ln of Z_N^{Gin} = pi^N prod_{k=1}^N k! / N^{N(N+1)/2}.
double log_ginibre_partition(int N);
double lemniscate_log_c(int N, int d);
// ln c~_{N,d} = ln c_{N,d} + d ln Z_N^{Gin}.
double lemniscate_log_ctilde(int N, int d);
double lemniscate_gamma(int l, int d);
double lemniscate_partition(int N, int d, double t);

struct GinibreWeight {
    int N;
};
// |lambda|^{2 gamma1} e^{-N|lambda|^2}
struct InducedGinibre {
    int N;
    double gamma1;
};
// (1-|lambda|^2)^{M-N-1} on the unit disc
struct TruncatedCUEWeight {
    int M;
    int N;
};
using RadialWeightSpec = std::variant<GinibreWeight, InducedGinibre, TruncatedCUEWeight>;

// ln h_j for the monomials lambda^j.
double log_radial_norm(const RadialWeightSpec& w, int j);

// ln E prod_i |det(A - z_i)|^{2 k_i} for even integer exponents. For the
// induced weight the result is E_Gin |det G|^{2 gamma1} prod_i |det(G - z_i)|^{2k_i}.
double correlator_finiteN(const RadialWeightSpec& w, const ChargeConfiguration& charges);

}  // namespace charpoly
