#include "segsim/abstract.hpp"

#include <map>

namespace segsim {

namespace {

void append_varint(std::string& out, std::uint64_t value) {
    while (value >= 0x80) {
        out.push_back(static_cast<char>((value & 0x7f) | 0x80));
        value >>= 7;
    }
    out.push_back(static_cast<char>(value));
}

void append_double(std::string& out, double value) {
    const char* bytes = reinterpret_cast<const char*>(&value);
    out.append(bytes, sizeof value);
}

}  // namespace

AbstractRun project(const Run& run, const Abstraction& abstraction) {
    AbstractRun out;
    out.terminal = run.terminal;
    out.stats = run.stats;
    out.steps.reserve(run.seams.size());
    for (const Seam& seam : run.seams) {
        out.steps.push_back({abstraction.abstract_state(seam.state), seam.time});
    }
    return out;
}

AbstractRun abstract_simulate(const CrnModel& model, const State& s_init, double t_end,
                              const Abstraction& abstraction, SegmentMemory& memory,
                              RngStream& rng) {
    return project(segmental_simulate(model, s_init, t_end, abstraction, memory, rng),
                   abstraction);
}

State concretize_uniform(const Abstraction& abstraction, const AbstractState& abstract,
                         RngStream& rng) {
    State s;
    s.counts.reserve(abstract.levels.size());
    for (std::int32_t level : abstract.levels) {
        const auto [lo, hi] = abstraction.interval_of(level);
        s.counts.push_back(lo + static_cast<Count>(rng.uniform_below(
                                    static_cast<std::uint64_t>(hi - lo) + 1)));
    }
    return s;
}

Histogram concretize_histogram(const Histogram& level_histogram, const Abstraction& abstraction) {
    level_histogram.validate();
    std::map<std::int64_t, double> spread;
    for (std::size_t i = 0; i < level_histogram.support.size(); ++i) {
        const auto level = static_cast<std::int32_t>(level_histogram.support[i]);
        const auto [lo, hi] = abstraction.interval_of(level);
        const double share = level_histogram.mass[i] / static_cast<double>(hi - lo + 1);
        for (Count x = lo; x <= hi; ++x) spread[x] += share;
    }
    Histogram out;
    out.sample_count = level_histogram.sample_count;
    for (const auto& [value, mass] : spread) {
        out.support.push_back(value);
        out.mass.push_back(mass);
    }
    return out;
}

std::string serialize_run_bytes(const Run& run) {
    std::string out;
    append_varint(out, run.seams.size());
    for (const Seam& seam : run.seams) {
        append_double(out, seam.time);
        for (Count x : seam.state.counts) append_varint(out, static_cast<std::uint64_t>(x));
    }
    return out;
}

std::string serialize_abstract_run_bytes(const AbstractRun& run) {
    std::string out;
    append_varint(out, run.steps.size());
    for (const AbstractStep& step : run.steps) {
        append_double(out, step.time);
        for (std::int32_t level : step.abstract.levels) {
            append_varint(out, static_cast<std::uint64_t>(level));
        }
    }
    return out;
}

}  // namespace segsim
