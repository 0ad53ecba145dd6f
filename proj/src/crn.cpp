#include "segsim/crn.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace segsim {

std::vector<Count> Reaction::change() const {
    std::vector<Count> delta(products.size());
    for (std::size_t i = 0; i < products.size(); ++i) {
        delta[i] = products[i] - reactants[i];
    }
    return delta;
}

int CrnModel::species_index(std::string_view species_name) const {
    for (std::size_t i = 0; i < species.size(); ++i) {
        if (species[i] == species_name) return static_cast<int>(i);
    }
    return -1;
}

void CrnModel::validate() const {
    const std::size_t n = species.size();
    std::set<std::string_view> seen;
    for (const auto& s : species) {
        if (s.empty()) throw ModelError("empty species name in model '" + name + "'");
        if (!seen.insert(s).second) throw ModelError("duplicate species '" + s + "'");
    }
    if (initial_state.counts.size() != n) {
        throw ModelError("initial state length does not match species count");
    }
    for (Count x : initial_state.counts) {
        if (x < 0) throw ModelError("negative initial count");
    }
    if (!(t_end > 0)) throw ModelError("time horizon must be positive");
    if (!bounds.empty()) {
        if (bounds.size() != n) throw ModelError("bounds length does not match species count");
        for (std::size_t i = 0; i < n; ++i) {
            if (bounds[i] < initial_state.counts[i]) {
                throw ModelError("initial count exceeds bound for species '" + species[i] + "'");
            }
        }
    }
    for (const auto& r : reactions) {
        if (r.reactants.size() != n || r.products.size() != n) {
            throw ModelError("reaction '" + r.name + "' has wrong stoichiometry length");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (r.reactants[i] < 0 || r.products[i] < 0) {
                throw ModelError("reaction '" + r.name + "' has negative stoichiometry");
            }
        }
        if (!(r.rate_constant > 0) || !std::isfinite(r.rate_constant)) {
            throw ModelError("reaction '" + r.name + "' needs a positive finite rate constant");
        }
    }
}

bool enabled(const Reaction& reaction, const State& state) {
    if (reaction.reactants.size() != state.counts.size()) {
        throw ModelError("reaction/state length mismatch");
    }
    for (std::size_t i = 0; i < state.counts.size(); ++i) {
        if (state.counts[i] < reaction.reactants[i]) return false;
    }
    return true;
}

bool enabled(const Reaction& reaction, const State& state, const std::vector<Count>& bounds) {
    if (!enabled(reaction, state)) return false;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        const Count delta = reaction.products[i] - reaction.reactants[i];
        if (delta > 0 && state.counts[i] + delta > bounds[i]) return false;
    }
    return true;
}

double propensity(const Reaction& reaction, const State& state) {
    double a = reaction.rate_constant;
    for (std::size_t i = 0; i < state.counts.size(); ++i) {
        const Count r = reaction.reactants[i];
        const Count x = state.counts[i];
        if (x < r) return 0.0;
        for (Count j = 0; j < r; ++j) {
            a *= static_cast<double>(x - j);
        }
    }
    return a;
}

State apply_reaction(const State& state, const Reaction& reaction) {
    if (!enabled(reaction, state)) {
        throw DomainError("reaction '" + reaction.name + "' applied in a state where it is disabled");
    }
    State next = state;
    for (std::size_t i = 0; i < next.counts.size(); ++i) {
        next.counts[i] += reaction.products[i] - reaction.reactants[i];
    }
    return next;
}

}  // namespace segsim
