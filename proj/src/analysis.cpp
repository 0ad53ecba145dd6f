#include "segsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "segsim/rng.hpp"
#include "segsim/ssa.hpp"

namespace segsim {

void Histogram::validate() const {
    if (support.size() != mass.size()) throw DomainError("histogram support/mass length mismatch");
    double total = 0.0;
    for (double m : mass) {
        if (m < 0.0) throw DomainError("histogram has negative mass");
        total += m;
    }
    if (std::abs(total - 1.0) > 1e-9) throw DomainError("histogram mass does not sum to 1");
    if (!std::is_sorted(support.begin(), support.end())) {
        throw DomainError("histogram support is not sorted");
    }
}

Histogram histogram_from_samples(std::span<const std::int64_t> samples) {
    if (samples.empty()) throw DomainError("histogram needs at least one sample");
    std::map<std::int64_t, std::uint64_t> counts;
    for (std::int64_t v : samples) ++counts[v];
    Histogram h;
    h.sample_count = samples.size();
    const double norm = 1.0 / static_cast<double>(samples.size());
    for (const auto& [value, n] : counts) {
        h.support.push_back(value);
        h.mass.push_back(static_cast<double>(n) * norm);
    }
    return h;
}

const State& state_at(const Run& run, double t) {
    if (t < 0.0) throw DomainError("state_at: negative time");
    if (run.seams.empty()) throw DomainError("state_at: empty run");
    // last seam with time <= t
    auto it = std::upper_bound(run.seams.begin(), run.seams.end(), t,
                               [](double time, const Seam& seam) { return time < seam.time; });
    if (it == run.seams.begin()) return run.seams.front().state;
    return std::prev(it)->state;
}

Histogram transient_histogram(std::span<const Run> runs, double t, std::size_t species) {
    if (runs.empty()) throw DomainError("transient_histogram needs at least one run");
    std::vector<std::int64_t> samples;
    samples.reserve(runs.size());
    for (const Run& run : runs) samples.push_back(state_at(run, t).counts[species]);
    return histogram_from_samples(samples);
}

double emd(const Histogram& h1, const Histogram& h2) {
    h1.validate();
    h2.validate();
    // walk the merged support; between consecutive points, |CDF1 - CDF2| is
    // constant and contributes gap * |difference|
    double distance = 0.0;
    double cdf1 = 0.0, cdf2 = 0.0;
    std::size_t i = 0, j = 0;
    std::int64_t prev = 0;
    bool have_prev = false;
    while (i < h1.support.size() || j < h2.support.size()) {
        std::int64_t x;
        if (j >= h2.support.size() || (i < h1.support.size() && h1.support[i] <= h2.support[j])) {
            x = h1.support[i];
        } else {
            x = h2.support[j];
        }
        if (have_prev) distance += static_cast<double>(x - prev) * std::abs(cdf1 - cdf2);
        while (i < h1.support.size() && h1.support[i] == x) cdf1 += h1.mass[i++];
        while (j < h2.support.size() && h2.support[j] == x) cdf2 += h2.mass[j++];
        prev = x;
        have_prev = true;
    }
    return distance;
}

double control_pair_emd(const CrnModel& model, double t, std::size_t species, std::size_t n_runs,
                        std::uint64_t seed_a, std::uint64_t seed_b) {
    if (n_runs < 2) throw DomainError("control_pair_emd needs n_runs >= 2");
    // Decorrelate the root seeds before deriving substreams. Substreams are
    // seed XOR run-index, so two nearby roots (e.g. 1 and 2) would otherwise
    // produce nearly the same *set* of stream seeds and thus share most runs,
    // collapsing the control distance to zero.
    const auto mix = [](std::uint64_t z) {
        z ^= z >> 33;
        z *= 0xff51afd7ed558ccdULL;
        z ^= z >> 33;
        z *= 0xc4ceb9fe1a85ec53ULL;
        z ^= z >> 33;
        return z;
    };
    const auto ensemble = [&](std::uint64_t seed) {
        std::vector<std::int64_t> samples;
        samples.reserve(n_runs);
        for (std::size_t i = 0; i < n_runs; ++i) {
            RngStream rng = substream(seed, i);
            // simulating only up to t makes the final seam the exact state at t
            const Run run =
                ssa_simulate(model, model.initial_state, t, rng, Recording::seams_only());
            samples.push_back(run.seams.back().state.counts[species]);
        }
        return histogram_from_samples(samples);
    };
    return emd(ensemble(mix(seed_a)), ensemble(mix(seed_b)));
}

TimeSeriesStat stats_over_time(std::span<const Run> runs, std::span<const double> grid,
                               std::size_t species) {
    if (grid.empty()) throw DomainError("stats_over_time needs a nonempty grid");
    TimeSeriesStat out;
    out.grid.assign(grid.begin(), grid.end());
    out.mean.resize(grid.size());
    out.variance.resize(grid.size());
    const double n = static_cast<double>(runs.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double sum = 0.0, sum_sq = 0.0;
        for (const Run& run : runs) {
            const double x = static_cast<double>(state_at(run, grid[g]).counts[species]);
            sum += x;
            sum_sq += x * x;
        }
        const double mean = sum / n;
        out.mean[g] = mean;
        out.variance[g] = runs.size() > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0))
                                          : 0.0;
    }
    return out;
}

}  // namespace segsim
