#pragma once

#include <cstdint>
#include <vector>

#include "segsim/abstraction.hpp"
#include "segsim/crn.hpp"
#include "segsim/run.hpp"
#include "segsim/segmental.hpp"
#include "segsim/ssa.hpp"

namespace segsim {

/// Runs n independent simulations, sharded across `threads` workers. Run i
/// always uses substream(seed, i), so the ensemble content is independent of
/// the thread count; with threads = 1 it is bit-reproducible.
std::vector<Run> run_ssa_ensemble(const CrnModel& model, std::size_t n_runs, std::uint64_t seed,
                                  int threads, double t_end, Recording recording);

/// Segmental ensemble sharing one SegmentMemory across workers.
std::vector<Run> run_segmental_ensemble(const CrnModel& model, std::size_t n_runs,
                                        std::uint64_t seed, int threads, double t_end,
                                        const Abstraction& abstraction, SegmentMemory& memory);

}  // namespace segsim
