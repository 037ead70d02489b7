#pragma once

#include <functional>
#include <vector>

#include "charpoly/ensembles.hpp"
#include "charpoly/linalg.hpp"

// Brute-force reference computations, independent of the determinantal
// identities used by the main routes.
namespace charpoly::oracle {

// int int w(l1) w(l2) |l1 - l2|^2 d^2l1 d^2l2 over the disc of radius R around
// `center`, in polar coordinates about that center.
double planar_pair_integral(const std::function<double(Complex)>& w, Complex center, double R, double tol = 1e-9);

// E|det(G_2 - z)|^gamma from the two-point joint density.
double ginibre_n2_moment(double gamma, Complex z);

// E|det G_2|^{2 gamma1} |det(G_2 - z)|^{2 k}.
double ginibre_n2_induced(double gamma1, double k, Complex z);

// Z^{Lem_2}_2(t), i.e. N = 1, d = 2.
double lemniscate_n1d2(double t);

// E|t - z|^gamma for the 1 x 1 truncation of an M x M Haar unitary.
double tcue_n1_moment(int M, double gamma, Complex z);

// int_0^inf r^j w(r) dr * pi: the radial norm h_j for a weight given in r = |lambda|^2.
double radial_norm(const std::function<double(double)>& w_of_r2, int j, double upper = 0.0);

struct ComplexMC {
    MCEstimate re;
    MCEstimate im;
};

// Haar average of exp Tr(U A U^dagger conj(B)), A = diag(u), B = diag(v).
ComplexMC hciz_haar(const std::vector<Complex>& u, const std::vector<Complex>& v, std::uint64_t samples,
                    std::uint64_t seed);

}  // namespace charpoly::oracle
