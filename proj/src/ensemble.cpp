#include "segsim/ensemble.hpp"

#include <atomic>
#include <functional>
#include <thread>

namespace segsim {

namespace {

std::vector<Run> run_sharded(std::size_t n_runs, int threads,
                             const std::function<Run(std::size_t)>& one_run) {
    std::vector<Run> runs(n_runs);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n_runs; ++i) runs[i] = one_run(i);
        return runs;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        workers.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n_runs) return;
                runs[i] = one_run(i);
            }
        });
    }
    for (auto& worker : workers) worker.join();
    return runs;
}

}  // namespace

std::vector<Run> run_ssa_ensemble(const CrnModel& model, std::size_t n_runs, std::uint64_t seed,
                                  int threads, double t_end, Recording recording) {
    return run_sharded(n_runs, threads, [&](std::size_t i) {
        RngStream rng = substream(seed, i);
        return ssa_simulate(model, model.initial_state, t_end, rng, recording);
    });
}

std::vector<Run> run_segmental_ensemble(const CrnModel& model, std::size_t n_runs,
                                        std::uint64_t seed, int threads, double t_end,
                                        const Abstraction& abstraction, SegmentMemory& memory) {
    return run_sharded(n_runs, threads, [&](std::size_t i) {
        RngStream rng = substream(seed, i);
        return segmental_simulate(model, model.initial_state, t_end, abstraction, memory, rng);
    });
}

}  // namespace segsim
