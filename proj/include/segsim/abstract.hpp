#pragma once

#include <string>
#include <vector>

#include "segsim/abstraction.hpp"
#include "segsim/analysis.hpp"
#include "segsim/rng.hpp"
#include "segsim/run.hpp"
#include "segsim/segmental.hpp"

namespace segsim {

struct AbstractStep {
    AbstractState abstract;
    double time = 0.0;

    bool operator==(const AbstractStep&) const = default;
};

/// Run over the abstract state space: per-species levels with times.
struct AbstractRun {
    std::vector<AbstractStep> steps;
    Terminal terminal = Terminal::Horizon;
    RunStats stats;
};

/// Projects a densely concrete run by mapping each seam through the
/// abstraction and dropping the concrete component.
AbstractRun project(const Run& run, const Abstraction& abstraction);

/// Segmental simulation emitting only (abstract state, time) steps; by
/// construction, the result equals projecting segmental_simulate under the
/// same seed (the concrete state is carried as hidden configuration state).
AbstractRun abstract_simulate(const CrnModel& model, const State& s_init, double t_end,
                              const Abstraction& abstraction, SegmentMemory& memory,
                              RngStream& rng);

/// Samples each dimension independently and uniformly from its level's
/// interval; the result always maps back to the given abstract state.
State concretize_uniform(const Abstraction& abstraction, const AbstractState& abstract,
                         RngStream& rng);

/// Spreads each level's mass uniformly over the level's integer interval.
Histogram concretize_histogram(const Histogram& level_histogram, const Abstraction& abstraction);

/// Compact byte encodings (LEB128 varints for populations and levels, raw
/// doubles for times); abstract runs serialize smaller than the concrete
/// runs they project.
std::string serialize_run_bytes(const Run& run);
std::string serialize_abstract_run_bytes(const AbstractRun& run);

}  // namespace segsim
