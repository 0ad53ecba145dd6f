#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <segsim/crn.hpp>
#include <segsim/model_io.hpp>
#include <segsim/rng.hpp>

using namespace segsim;

namespace {

const CrnModel& pp() { return builtin_models().at("PP"); }

const Reaction& reaction_named(const CrnModel& m, std::string_view name) {
    for (const auto& r : m.reactions) {
        if (r.name == name) return r;
    }
    REQUIRE(false);
    return m.reactions.front();
}

}  // namespace

TEST_CASE("change vector is products minus reactants") {
    const Reaction& eat = reaction_named(pp(), "eat");  // Pred+Prey -> 2Pred
    CHECK(eat.change() == std::vector<Count>{1, -1});
    const Reaction& rep = reaction_named(pp(), "rep");  // Prey -> 2Prey
    CHECK(rep.change() == std::vector<Count>{0, 1});
}

TEST_CASE("enabledness") {
    const Reaction& eat = reaction_named(pp(), "eat");
    CHECK(enabled(eat, State{{200, 200}}));
    CHECK_FALSE(enabled(eat, State{{0, 5}}));
    CHECK_FALSE(enabled(eat, State{{5, 0}}));

    // empty reactant complex is enabled everywhere, including the zero state
    const CrnModel& ts = builtin_models().at("TS");
    const Reaction& spawn = ts.reactions.front();
    State zero{std::vector<Count>(ts.num_species(), 0)};
    CHECK(enabled(spawn, zero));

    CHECK_THROWS_AS(enabled(eat, State{{1, 2, 3}}), ModelError);
}

TEST_CASE("enabledness under population bounds") {
    const Reaction& rep = reaction_named(pp(), "rep");
    const Reaction& eat = reaction_named(pp(), "eat");
    std::vector<Count> bounds{4096, 4096};
    CHECK(enabled(rep, State{{10, 4095}}, bounds));
    CHECK_FALSE(enabled(rep, State{{10, 4096}}, bounds));   // would push Prey past the cap
    CHECK(enabled(eat, State{{4095, 4096}}, bounds));       // Pred 4095 -> 4096 still fits
    CHECK_FALSE(enabled(eat, State{{4096, 5}}, bounds));    // Pred at the cap: +1 would exceed
    CHECK_FALSE(enabled(eat, State{{4096, 4096}}, bounds));
}

TEST_CASE("mass action propensity") {
    const Reaction& eat = reaction_named(pp(), "eat");
    CHECK(propensity(eat, State{{200, 200}}) == doctest::Approx(0.005 * 200 * 200));
    CHECK(propensity(eat, State{{0, 200}}) == 0.0);

    // stoichiometry 2 on a species with count 5: falling factorial 5*4
    Reaction dimerize{"dim", {2}, {0}, 1.0};
    CHECK(propensity(dimerize, State{{5}}) == doctest::Approx(20.0));
    CHECK(propensity(dimerize, State{{1}}) == 0.0);
}

TEST_CASE("propensity is zero exactly when disabled") {
    RngStream rng(42);
    for (int trial = 0; trial < 500; ++trial) {
        State s{{static_cast<Count>(rng.uniform_below(4)), static_cast<Count>(rng.uniform_below(4))}};
        for (const auto& r : pp().reactions) {
            const double a = propensity(r, s);
            CHECK(a >= 0.0);
            CHECK((a == 0.0) == !enabled(r, s));
        }
    }
}

TEST_CASE("apply_reaction") {
    const Reaction& rep = reaction_named(pp(), "rep");
    const Reaction& eat = reaction_named(pp(), "eat");
    CHECK(apply_reaction(State{{200, 200}}, rep).counts == std::vector<Count>{200, 201});
    CHECK(apply_reaction(State{{200, 200}}, eat).counts == std::vector<Count>{201, 199});

    // applying then subtracting the change vector returns the original state
    State s{{7, 3}};
    State after = apply_reaction(s, eat);
    auto delta = eat.change();
    for (std::size_t i = 0; i < s.counts.size(); ++i) after.counts[i] -= delta[i];
    CHECK(after == s);

    CHECK_THROWS_AS(apply_reaction(State{{0, 0}}, eat), DomainError);
}

TEST_CASE("model validation") {
    CrnModel good = pp();
    CHECK_NOTHROW(good.validate());

    CrnModel m = good;
    m.species[1] = m.species[0];
    CHECK_THROWS_AS(m.validate(), ModelError);

    m = good;
    m.species[0] = "";
    CHECK_THROWS_AS(m.validate(), ModelError);

    m = good;
    m.initial_state.counts.pop_back();
    CHECK_THROWS_AS(m.validate(), ModelError);

    m = good;
    m.initial_state.counts[0] = -1;
    CHECK_THROWS_AS(m.validate(), ModelError);

    m = good;
    m.t_end = 0.0;
    CHECK_THROWS_AS(m.validate(), ModelError);

    m = good;
    m.reactions[0].reactants.push_back(0);
    CHECK_THROWS_AS(m.validate(), ModelError);

    m = good;
    m.reactions[0].rate_constant = 0.0;
    CHECK_THROWS_AS(m.validate(), ModelError);

    m = good;
    m.reactions[0].rate_constant = -1.0;
    CHECK_THROWS_AS(m.validate(), ModelError);
}

TEST_CASE("bounds validation") {
    CrnModel m = pp();
    m.bounds = {4096};  // wrong length
    CHECK_THROWS_AS(m.validate(), ModelError);

    m = pp();
    m.bounds = {100, 4096};  // below the initial Pred count of 200
    CHECK_THROWS_AS(m.validate(), ModelError);

    m = pp();
    m.bounds = {200, 200};
    CHECK_NOTHROW(m.validate());
}

TEST_CASE("species_index") {
    CHECK(pp().species_index("Pred") == 0);
    CHECK(pp().species_index("Prey") == 1);
    CHECK(pp().species_index("Wolf") == -1);
}
