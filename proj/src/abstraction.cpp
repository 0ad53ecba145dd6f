#include "segsim/abstraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace segsim {

namespace {
constexpr double kBoundaryLimit = 4.0e18;  // stay inside the Count range
}

std::vector<Count> exponential_boundaries(double c, int n_max) {
    if (!(c > 1.0) || !(c <= 2.0)) {
        throw ConfigError("partition parameter c must satisfy 1 < c <= 2");
    }
    if (n_max < 1) throw ConfigError("n_max must be >= 1");
    std::vector<Count> boundaries;
    for (int n = 0; n <= n_max; ++n) {
        const long double value = std::pow(static_cast<long double>(c), n);
        if (value > kBoundaryLimit) break;
        // round half-up; the formula's duplicates for c < 2 are dropped
        const Count b = static_cast<Count>(std::floor(value + 0.5L));
        if (boundaries.empty() || b > boundaries.back()) boundaries.push_back(b);
    }
    return boundaries;
}

Abstraction::Abstraction(double c) : c_(c), boundaries_(exponential_boundaries(c, 4096)) {}

std::int32_t Abstraction::level_of(Count population) const {
    if (population <= 0) return 0;
    const auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), population);
    return static_cast<std::int32_t>(it - boundaries_.begin());
}

std::pair<Count, Count> Abstraction::interval_of(std::int32_t level) const {
    if (level < 0) throw ConfigError("negative abstraction level");
    if (level == 0) return {0, 0};
    const auto idx = static_cast<std::size_t>(level - 1);
    if (idx >= boundaries_.size()) throw ConfigError("abstraction level beyond boundary table");
    const Count lo = boundaries_[idx];
    const Count hi = idx + 1 < boundaries_.size() ? boundaries_[idx + 1] - 1
                                                  : std::numeric_limits<Count>::max();
    return {lo, hi};
}

Count Abstraction::representative_count(std::int32_t level) const {
    const auto [lo, hi] = interval_of(level);
    return lo + (hi - lo) / 2;
}

AbstractState Abstraction::abstract_state(const State& state) const {
    AbstractState a;
    a.levels.reserve(state.counts.size());
    for (Count x : state.counts) a.levels.push_back(level_of(x));
    return a;
}

State Abstraction::representative(const AbstractState& abstract) const {
    State s;
    s.counts.reserve(abstract.levels.size());
    for (std::int32_t level : abstract.levels) s.counts.push_back(representative_count(level));
    return s;
}

}  // namespace segsim
