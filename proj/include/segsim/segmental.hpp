#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "segsim/abstraction.hpp"
#include "segsim/crn.hpp"
#include "segsim/rng.hpp"
#include "segsim/run.hpp"
#include "segsim/ssa.hpp"

#include <nlohmann/json_fwd.hpp>

namespace segsim {

struct MemoryStats {
    std::uint64_t visited_states = 0;
    std::uint64_t stored_summaries = 0;
    std::uint64_t approx_bytes = 0;
};

/// Shared, lazily filled cache mapping each visited abstract state to at most
/// k summaries. Appends are atomic and lists only grow, so readers always see
/// a prefix-consistent list; generation happens outside the lock with a slot
/// reservation, keeping the per-state count hard-capped at k.
class SegmentMemory {
public:
    SegmentMemory(std::string model_name, double c, int k, std::size_t num_species);

    SegmentMemory(SegmentMemory&& other) noexcept;
    SegmentMemory& operator=(SegmentMemory&& other) noexcept;
    SegmentMemory(const SegmentMemory&) = delete;
    SegmentMemory& operator=(const SegmentMemory&) = delete;

    int k() const { return k_; }
    double c() const { return c_; }
    const std::string& model_name() const { return model_name_; }
    std::size_t num_species() const { return num_species_; }

    /// Algorithm core: with fewer than k summaries stored for `a`, generate a
    /// fresh segment from a's representative and store its summary; otherwise
    /// return a uniformly random stored one.
    Summary lookup_or_generate(const AbstractState& a, const CrnModel& model,
                               const Abstraction& abstraction, RngStream& rng,
                               bool* generated = nullptr);

    /// Direct insertion (import path and tests).
    void insert(const AbstractState& a, Summary summary);

    MemoryStats stats() const;
    std::uint64_t fresh_count() const { return fresh_.load(); }
    std::uint64_t reuse_count() const { return reuse_.load(); }
    std::uint64_t fallback_count() const { return fallbacks_.load(); }
    void note_fallback() { fallbacks_.fetch_add(1, std::memory_order_relaxed); }

    nlohmann::json export_json() const;
    static SegmentMemory import_json(const nlohmann::json& doc);

    /// Throws FormatError unless the memory was built for this model/partition.
    void check_compatible(const std::string& model_name, double c, std::size_t num_species) const;

private:
    struct Entry {
        std::vector<Summary> summaries;
        int inflight = 0;  // reserved generation slots
    };

    std::string model_name_;
    double c_;
    int k_;
    std::size_t num_species_;
    std::unordered_map<AbstractState, Entry, AbstractStateHash> map_;
    mutable std::mutex mutex_;
    std::atomic<std::uint64_t> stored_{0};
    std::atomic<std::uint64_t> fresh_{0};
    std::atomic<std::uint64_t> reuse_{0};
    std::atomic<std::uint64_t> fallbacks_{0};
};

/// Lazy segmental simulation: repeatedly map the concrete state to its
/// abstract state, draw a summary from the shared memory, and apply its
/// relative effect. A summary that would drive a count negative is discarded
/// in favor of a one-off segment simulated from the current concrete state
/// (not stored; counted as a fallback). Drawing a terminal summary ends the
/// run with deadlock semantics at t_end.
Run segmental_simulate(const CrnModel& model, const State& s_init, double t_end,
                       const Abstraction& abstraction, SegmentMemory& memory, RngStream& rng);

}  // namespace segsim
