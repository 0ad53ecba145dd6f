#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "segsim/crn.hpp"

namespace segsim {

/// Per-species interval level indices; the hyperrectangle of all states whose
/// populations fall in the levels' intervals.
struct AbstractState {
    std::vector<std::int32_t> levels;

    bool operator==(const AbstractState&) const = default;
};

struct AbstractStateHash {
    std::size_t operator()(const AbstractState& a) const {
        std::size_t h = 0xcbf29ce484222325ULL;  // FNV-1a
        for (std::int32_t level : a.levels) {
            h ^= static_cast<std::uint32_t>(level);
            h *= 0x100000001b3ULL;
        }
        return h;
    }
};

/// Exponential interval boundaries round(c^n) for n = 0, 1, ..., rounded
/// half-up and deduplicated so every interval [b_j, b_{j+1}-1] is nonempty.
/// Stops after n_max exponents or once the values leave the Count range.
std::vector<Count> exponential_boundaries(double c, int n_max);

/// Exponential population-level partition with parameter 1 < c <= 2.
/// Intervals per dimension: [0,0], then [b_j, b_{j+1}-1] over the boundary
/// list; for c = 2 this is [0,0],[1,1],[2,3],[4,7],[8,15],...
///
/// The full boundary table (up to the Count range) is computed once at
/// construction, so a configuration is immutable and safe to share across
/// simulation workers.
class Abstraction {
public:
    explicit Abstraction(double c);  // throws ConfigError unless 1 < c <= 2

    double c() const { return c_; }
    std::span<const Count> boundaries() const { return boundaries_; }

    /// 0 for population 0, otherwise 1 + index of the largest boundary <= x.
    std::int32_t level_of(Count population) const;

    /// Inclusive interval of a level; level 0 is [0,0].
    std::pair<Count, Count> interval_of(std::int32_t level) const;

    /// Floored midpoint of the level's interval.
    Count representative_count(std::int32_t level) const;

    AbstractState abstract_state(const State& state) const;
    State representative(const AbstractState& abstract) const;

private:
    double c_;
    std::vector<Count> boundaries_;
};

}  // namespace segsim
