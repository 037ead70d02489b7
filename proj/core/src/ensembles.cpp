#include "charpoly/ensembles.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "charpoly/errors.hpp"

namespace charpoly {

void ChargeConfiguration::validate() const {
    if (points.size() != exponents.size()) throw DomainError("charge points and exponents differ in length");
    for (double g : exponents)
        if (!(g > -2.0)) throw DomainError("charge exponents must exceed -2");
}

double MCEstimate::value() const { return std::exp(log_shift) * mean_shifted; }

double MCEstimate::log_value() const { return log_shift + std::log(mean_shifted); }

ComplexMatrix sample_ginibre(int N, Rng& rng) {
    if (N < 1) throw SizeError("Ginibre size must be positive");
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 / N));
    ComplexMatrix g(N, N);
    for (int j = 0; j < N; ++j)
        for (int i = 0; i < N; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i, j) = Complex(re, im);
        }
    return g;
}

ComplexMatrix sample_haar_unitary(int n, Rng& rng) {
    ComplexMatrix z = sample_ginibre(n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const auto& r = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
        const double a = std::abs(r(j, j));
        if (a > 0.0) q.col(j) *= r(j, j) / a;
    }
    return q;
}

ComplexMatrix sample_truncated_cue(int M, int N, Rng& rng) {
    if (N < 1 || N >= M) throw SizeError("truncated CUE requires 1 <= N < M");
    return sample_haar_unitary(M, rng).topLeftCorner(N, N);
}

ComplexMatrix sample(const EnsembleSpec& spec, Rng& rng) {
    if (const auto* g = std::get_if<Ginibre>(&spec)) return sample_ginibre(g->N, rng);
    const auto& t = std::get<TruncatedCUE>(spec);
    return sample_truncated_cue(t.M, t.N, rng);
}

unsigned worker_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("CHARPOLY_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

MCEstimate mc_moment(const EnsembleSpec& spec, const ChargeConfiguration& charges, std::uint64_t n_samples,
                     std::uint64_t seed, double log_shift) {
    charges.validate();
    if (n_samples < 2) throw DomainError("mc_moment needs at least two samples");
    if (std::holds_alternative<TruncatedCUE>(spec)) {
        const auto& t = std::get<TruncatedCUE>(spec);
        if (t.N < 1 || t.N >= t.M) throw SizeError("truncated CUE requires 1 <= N < M");
    }
    if (charges.size() == 0) {
        MCEstimate e;
        e.log_shift = 0.0;
        e.mean_shifted = 1.0;
        e.n_samples = n_samples;
        e.seed = seed;
        return e;
    }
    auto f = [&](Rng& rng) {
        const ComplexMatrix a = sample(spec, rng);
        double s = -log_shift;
        for (std::size_t i = 0; i < charges.size(); ++i) {
            ComplexMatrix b = a;
            b.diagonal().array() -= charges.points[i];
            s += charges.exponents[i] * logdet(b).log_modulus;
        }
        return std::exp(s);
    };
    return mc_mean(f, n_samples, seed, log_shift);
}

}  // namespace charpoly
