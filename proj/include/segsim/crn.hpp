#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "segsim/errors.hpp"

namespace segsim {

using Count = std::int64_t;

/// Population vector, one nonnegative count per species.
struct State {
    std::vector<Count> counts;

    bool operator==(const State&) const = default;
};

/// Reaction r -> p with stochastic rate constant k. Reactant/product vectors
/// give the stoichiometry per species, indexed like the model's species list.
struct Reaction {
    std::string name;
    std::vector<Count> reactants;
    std::vector<Count> products;
    double rate_constant = 0.0;

    /// Net state change, products - reactants.
    std::vector<Count> change() const;
};

struct CrnModel {
    std::string name;
    std::vector<std::string> species;
    std::vector<Reaction> reactions;
    State initial_state;
    double t_end = 0.0;
    /// Optional per-species population caps (empty = unbounded). A reaction
    /// is disabled when it would push a species past its bound; models whose
    /// dynamics explode (predator-prey after predator extinction) need this
    /// to keep exact simulation well defined over the whole horizon.
    std::vector<Count> bounds;

    std::size_t num_species() const { return species.size(); }

    /// Index of a species name, or -1 when absent.
    int species_index(std::string_view species_name) const;

    /// Throws ModelError when any structural invariant is broken.
    void validate() const;
};

bool enabled(const Reaction& reaction, const State& state);

/// Enabledness under population bounds: reactants present and no product
/// pushed past its cap.
bool enabled(const Reaction& reaction, const State& state, const std::vector<Count>& bounds);

/// Stochastic mass-action propensity: k * prod_i FF(x_i, r_i) with FF the
/// falling factorial x(x-1)...(x-r+1). Zero whenever a reactant is short.
/// The falling-factorial form is the conventional CTMC semantics; with unit
/// stoichiometry it reduces to k times the product of reactant counts.
double propensity(const Reaction& reaction, const State& state);

/// Applies the reaction's net change. Throws DomainError if the reaction is
/// not enabled in the given state.
State apply_reaction(const State& state, const Reaction& reaction);

}  // namespace segsim
