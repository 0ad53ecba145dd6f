#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "segsim/abstraction.hpp"
#include "segsim/crn.hpp"
#include "segsim/rng.hpp"
#include "segsim/run.hpp"

namespace segsim {

struct Recording {
    enum class Kind {
        Full,       // every reaction event
        Stride,     // every n-th event (plus initial and final)
        SeamsOnly,  // initial and final state only
    };
    Kind kind = Kind::Full;
    std::uint64_t stride = 1;

    static Recording full() { return {Kind::Full, 1}; }
    static Recording every(std::uint64_t n) { return {Kind::Stride, n}; }
    static Recording seams_only() { return {Kind::SeamsOnly, 1}; }
};

/// One Gillespie draw: reaction index chosen with probability a_i/A and
/// dt ~ Exponential(A). Index -1 and dt = inf when no reaction is enabled.
struct StepDraw {
    int reaction_index = -1;
    double dt = std::numeric_limits<double>::infinity();
};

StepDraw ssa_step(const CrnModel& model, const State& state, RngStream& rng);

/// Direct-method SSA from s_init until t >= t_end or deadlock.
/// stats.reaction_count counts every applied reaction regardless of the
/// recording policy.
Run ssa_simulate(const CrnModel& model, const State& s_init, double t_end, RngStream& rng,
                 Recording recording = Recording::full());

/// Net effect of a trajectory piece: state delta plus elapsed time.
/// delta_time = inf marks a terminal (deadlocked) summary.
struct Summary {
    std::vector<Count> delta_state;
    double delta_time = 0.0;

    bool terminal() const { return delta_time == std::numeric_limits<double>::infinity(); }
    bool operator==(const Summary&) const = default;
};

/// A segment: SSA piece started at `start`, terminated when the trajectory
/// first leaves start's abstract state (or deadlocks). The reaction index
/// sequence is retained only when requested (replay-based checks).
struct Segment {
    State start;
    std::vector<int> reactions;
    Summary summary;
};

Segment simulate_until_leaving(const CrnModel& model, const State& start,
                               const Abstraction& abstraction, RngStream& rng,
                               bool record_reactions = false);

}  // namespace segsim
