#pragma once

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "charpoly/linalg.hpp"

namespace charpoly {

struct Ginibre {
    int N;
};

// Top-left N x N block of a Haar unitary of size M.
struct TruncatedCUE {
    int M;
    int N;
};

using EnsembleSpec = std::variant<Ginibre, TruncatedCUE>;

struct ChargeConfiguration {
    std::vector<Complex> points;
    std::vector<double> exponents;

    void validate() const;
    std::size_t size() const { return points.size(); }
};

struct MCEstimate {
    double log_shift = 0.0;
    double mean_shifted = 0.0;
    double stderr_shifted = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;

    double value() const;
    double log_value() const;
    // log(mean +- stderr) would be asymmetric; this is stderr/mean.
    double relative_stderr() const { return stderr_shifted / mean_shifted; }
};

using Rng = std::mt19937_64;

ComplexMatrix sample_ginibre(int N, Rng& rng);
ComplexMatrix sample_haar_unitary(int n, Rng& rng);
ComplexMatrix sample_truncated_cue(int M, int N, Rng& rng);
ComplexMatrix sample(const EnsembleSpec& spec, Rng& rng);

// Worker count, capped by CHARPOLY_THREADS when set.
unsigned worker_count();

// Samples are grouped in fixed-size blocks with one stream per block, so the
// estimate does not depend on the number of workers.
inline constexpr std::uint64_t kMcBlockSize = 1024;

MCEstimate mc_moment(const EnsembleSpec& spec, const ChargeConfiguration& charges, std::uint64_t n_samples,
                     std::uint64_t seed, double log_shift = 0.0);

// Generic block-parallel Monte Carlo mean of f(rng) (values already shifted).
template <class F>
MCEstimate mc_mean(F&& f, std::uint64_t n_samples, std::uint64_t seed, double log_shift);

}  // namespace charpoly

#include "charpoly/detail/mc_impl.hpp"
