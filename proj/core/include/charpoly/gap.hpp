#pragma once

#include <variant>

namespace charpoly {

// Weight e^{-t^2/2} on R.
struct GUE {
    int k;
};

// Weight t^alpha e^{-t} on [0, inf).
struct LUE {
    int k;
    double alpha;
};

// Weight t^alpha (1-t)^beta on [0, 1].
struct JUE {
    int k;
    double alpha;
    double beta;
};

using GapEnsemble = std::variant<GUE, LUE, JUE>;

void validate(const GapEnsemble& e);
int size_of(const GapEnsemble& e);

double log_norm_constant(const GapEnsemble& e);

struct GapProbability {
    double value;
    bool clamped;  // x was outside the support
};

// P(lambda_max < x).
GapProbability gap_cdf_flagged(const GapEnsemble& e, double x);
double gap_cdf(const GapEnsemble& e, double x);
double log_gap_cdf(const GapEnsemble& e, double x);

// P(lambda_min > x) for LUE{k, alpha}.
double lue_tail(int k, double alpha, double x);
double log_lue_tail(int k, double alpha, double x);

// k-fold adaptive quadrature of the joint eigenvalue density, k <= 3.
double gap_oracle(const GapEnsemble& e, double x);

}  // namespace charpoly
