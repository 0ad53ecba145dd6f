#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "segsim/crn.hpp"
#include "segsim/run.hpp"

namespace segsim {

/// Normalized empirical distribution over integer values (counts or levels).
struct Histogram {
    std::vector<std::int64_t> support;  // sorted, unique
    std::vector<double> mass;           // same length, sums to 1
    std::uint64_t sample_count = 0;

    void validate() const;  // throws DomainError when unnormalized
};

Histogram histogram_from_samples(std::span<const std::int64_t> samples);

/// State of the last seam with time <= t (right-continuous step function);
/// past a deadlocked run this is the final state. Throws DomainError for
/// t < 0 or an empty run.
const State& state_at(const Run& run, double t);

Histogram transient_histogram(std::span<const Run> runs, double t, std::size_t species);

/// 1-Wasserstein distance on the integer line, computed as the integral of
/// |CDF1 - CDF2|. Exact for 1-D distributions.
double emd(const Histogram& h1, const Histogram& h2);

/// EMD between two independent SSA ensembles of n_runs each, simulated up to
/// time t — the "control SSA" yardstick reported alongside accuracy figures.
double control_pair_emd(const CrnModel& model, double t, std::size_t species, std::size_t n_runs,
                        std::uint64_t seed_a, std::uint64_t seed_b);

struct TimeSeriesStat {
    std::vector<double> grid;
    std::vector<double> mean;
    std::vector<double> variance;  // unbiased sample variance
};

TimeSeriesStat stats_over_time(std::span<const Run> runs, std::span<const double> grid,
                               std::size_t species);

}  // namespace segsim
