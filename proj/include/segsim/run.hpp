#pragma once

#include <cstdint>
#include <vector>

#include "segsim/crn.hpp"

namespace segsim {

struct Seam {
    State state;
    double time = 0.0;

    bool operator==(const Seam&) const = default;
};

enum class Terminal {
    Horizon,   // ran past t_end
    Deadlock,  // no reaction enabled / terminal summary drawn
};

struct RunStats {
    std::uint64_t reaction_count = 0;
    std::uint64_t summaries_applied = 0;
    std::uint64_t fresh_segments = 0;
    std::uint64_t reused_segments = 0;
    std::uint64_t fallbacks = 0;
    double wall_seconds = 0.0;
};

/// A recorded trajectory. For SSA runs the seams follow the recording
/// policy; for segmental runs every seam is a summary application point.
struct Run {
    std::vector<Seam> seams;
    Terminal terminal = Terminal::Horizon;
    RunStats stats;
};

}  // namespace segsim
