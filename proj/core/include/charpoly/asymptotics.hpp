#pragma once

#include <vector>

#include "charpoly/linalg.hpp"

namespace charpoly {

// Microscopic offsets of the charges, in units of 1/sqrt(N).
struct EdgeVectors {
    std::vector<Complex> u;
    std::vector<Complex> v;
    void validate() const;
    int size() const { return static_cast<int>(u.size()); }
};

// ln of the large-N form of E|det(G_N - z)|^gamma for |z| < 1.
double ww_bulk(int N, double gamma, Complex z);

// ln F_k(x), the distribution of the largest eigenvalue of a k x k GUE for
// integer k, and its PIV continuation otherwise.
double log_edge_F(double k, double x);

double ginibre_edge(int N, double k, Complex z);

// Two charges 2k1, 2k2 at z + u_i/sqrt(N).
double bulk_two_charge(int N, double k1, double k2, Complex z, Complex u1, Complex u2);

// E|det G|^{2 gamma} |det(G - u2/sqrt(N))|^{2 k2}, gamma >= k2.
double noninteger_bulk(int N, double gamma, double k2, double u2);

// K_erf(u, v) = exp(-(u-v)^2/2) erfc(-(u+v)/sqrt 2).
Complex erf_kernel(Complex u, Complex v);

// F^edge_k(u, v) = Z_{1/2}(u, conj v, R+) / prod_{i<j}(u_j-u_i)(conj v_j - conj v_i),
// from det{K_erf} with confluent limits.
Complex edge_F_determinant(const EdgeVectors& ev);

// The same from k-dimensional quadrature of the Karlin-McGregor integrand.
// Requires k <= 3 and pairwise distinct u and v.
Complex edge_F_karlin_mcgregor(const EdgeVectors& ev);

// Edge expansion for charges at x_j = z - u_j/(conj(z) sqrt N), conj y_j = conj z - conj v_j/(z sqrt N).
LogDet edge_multi_complex(int N, Complex z, const EdgeVectors& ev);
double edge_multi(int N, Complex z, const EdgeVectors& ev);

// Bulk expansion for x_i = z + u_i/sqrt N, conj y_i = conj z + conj v_i/sqrt N.
LogDet bulk_multi_complex(int N, Complex z, const EdgeVectors& ev);
double bulk_multi(int N, Complex z, const EdgeVectors& ev);

// |z| = 1 - u/N, M = N + kappa.
double tcue_edge(int N, double kappa, double k, double u);

double ginibre_exterior(int N, double k, Complex z);

enum class LemniscateRegime { sub, critical, super };

struct LemniscateAsym {
    double log_value;
    bool conjectural;
    double kappa_d;
};

// kappa_d = d(d-1)(2d-1)/(6 d^2) = (1/4) sum_l gamma_l^2
double lemniscate_kappa(int d);
// ln h_j for |lambda|^j under exp(-N d |lambda|^{2d}), and ln Z^{Lem_d}_{Nd}(0).
double lemniscate_log_norm(int N, int d, int j);
double lemniscate_log_z0(int N, int d);
double lemniscate_critical_t(int d);

// Large-N form of ln Z^{Lem_d}_{Nd}(t).
LemniscateAsym lemniscate_asym(int N, int d, double t, LemniscateRegime regime);

}  // namespace charpoly
