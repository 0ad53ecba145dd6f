#include "segsim/ssa.hpp"

#include <chrono>
#include <utility>

namespace segsim {

namespace {

// Sparse per-reaction view for the allocation-free inner loop.
struct CompiledReaction {
    double k;
    std::vector<std::pair<int, Count>> reactant_terms;  // (species, stoichiometry)
    std::vector<std::pair<int, Count>> delta_terms;     // (species, net change)
    std::vector<std::pair<int, Count>> headroom_terms;  // (species, bound - delta)
};

constexpr std::size_t kMaxReactions = 64;  // props[] scratch in pick_reaction

std::vector<CompiledReaction> compile(const CrnModel& model) {
    if (model.reactions.size() > kMaxReactions) {
        throw ConfigError("model has more reactions than the engine supports (64)");
    }
    std::vector<CompiledReaction> compiled;
    compiled.reserve(model.reactions.size());
    for (const Reaction& r : model.reactions) {
        CompiledReaction c;
        c.k = r.rate_constant;
        for (std::size_t i = 0; i < model.num_species(); ++i) {
            if (r.reactants[i] > 0) c.reactant_terms.emplace_back(static_cast<int>(i), r.reactants[i]);
            const Count delta = r.products[i] - r.reactants[i];
            if (delta != 0) c.delta_terms.emplace_back(static_cast<int>(i), delta);
            if (delta > 0 && !model.bounds.empty()) {
                c.headroom_terms.emplace_back(static_cast<int>(i), model.bounds[i] - delta);
            }
        }
        compiled.push_back(std::move(c));
    }
    return compiled;
}

inline double compiled_propensity(const CompiledReaction& r, const Count* counts) {
    for (const auto& [species, headroom] : r.headroom_terms) {
        if (counts[species] > headroom) return 0.0;  // bound would be exceeded
    }
    double a = r.k;
    for (const auto& [species, stoich] : r.reactant_terms) {
        const Count x = counts[species];
        if (x < stoich) return 0.0;
        for (Count j = 0; j < stoich; ++j) a *= static_cast<double>(x - j);
    }
    return a;
}

inline void apply_compiled(const CompiledReaction& r, Count* counts) {
    for (const auto& [species, delta] : r.delta_terms) counts[species] += delta;
}

// Picks a reaction with probability a_i / A; returns -1 when A == 0.
inline int pick_reaction(const std::vector<CompiledReaction>& reactions, const Count* counts,
                         RngStream& rng, double& total_out) {
    double total = 0.0;
    double props[64];
    const std::size_t n = reactions.size();
    for (std::size_t i = 0; i < n; ++i) {
        props[i] = compiled_propensity(reactions[i], counts);
        total += props[i];
    }
    total_out = total;
    if (total <= 0.0) return -1;
    double u = rng.next_double() * total;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        u -= props[i];
        if (u < 0.0) return static_cast<int>(i);
    }
    return static_cast<int>(n - 1);
}

}  // namespace

StepDraw ssa_step(const CrnModel& model, const State& state, RngStream& rng) {
    const auto compiled = compile(model);
    double total = 0.0;
    // draw order matches ssa_simulate: reaction choice first, then dt
    const int chosen = pick_reaction(compiled, state.counts.data(), rng, total);
    if (chosen < 0) return {};
    return {chosen, rng.exponential(total)};
}

Run ssa_simulate(const CrnModel& model, const State& s_init, double t_end, RngStream& rng,
                 Recording recording) {
    const auto start_clock = std::chrono::steady_clock::now();
    const auto compiled = compile(model);

    Run run;
    State state = s_init;
    double t = 0.0;
    run.seams.push_back({state, 0.0});

    while (true) {
        double total = 0.0;
        const int chosen = pick_reaction(compiled, state.counts.data(), rng, total);
        if (chosen < 0) {
            run.terminal = Terminal::Deadlock;
            break;
        }
        const double dt = rng.exponential(total);
        if (t + dt >= t_end) {
            run.terminal = Terminal::Horizon;
            break;
        }
        t += dt;
        apply_compiled(compiled[chosen], state.counts.data());
        ++run.stats.reaction_count;
        if (recording.kind == Recording::Kind::Full ||
            (recording.kind == Recording::Kind::Stride &&
             run.stats.reaction_count % recording.stride == 0)) {
            run.seams.push_back({state, t});
        }
    }

    // non-full recordings still expose the final state
    if (recording.kind != Recording::Kind::Full && run.stats.reaction_count > 0) {
        const double final_time = run.terminal == Terminal::Horizon ? t_end : t;
        if (run.seams.back().time < final_time) run.seams.push_back({state, final_time});
    }

    run.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_clock).count();
    return run;
}

Segment simulate_until_leaving(const CrnModel& model, const State& start,
                               const Abstraction& abstraction, RngStream& rng,
                               bool record_reactions) {
    const auto compiled = compile(model);
    const AbstractState home = abstraction.abstract_state(start);

    Segment segment;
    segment.start = start;
    State state = start;
    double elapsed = 0.0;

    while (true) {
        double total = 0.0;
        const int chosen = pick_reaction(compiled, state.counts.data(), rng, total);
        if (chosen < 0) {
            // terminal segment: the representative is deadlocked
            segment.summary.delta_state.assign(start.counts.size(), 0);
            segment.summary.delta_time = std::numeric_limits<double>::infinity();
            return segment;
        }
        elapsed += rng.exponential(total);
        apply_compiled(compiled[chosen], state.counts.data());
        if (record_reactions) segment.reactions.push_back(chosen);

        bool left = false;
        for (const auto& [species, delta] : compiled[chosen].delta_terms) {
            (void)delta;
            if (abstraction.level_of(state.counts[species]) != home.levels[species]) {
                left = true;
                break;
            }
        }
        if (left) break;
    }

    segment.summary.delta_state.resize(start.counts.size());
    for (std::size_t i = 0; i < start.counts.size(); ++i) {
        segment.summary.delta_state[i] = state.counts[i] - start.counts[i];
    }
    segment.summary.delta_time = elapsed;
    return segment;
}

}  // namespace segsim
