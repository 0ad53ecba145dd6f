#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <segsim/analysis.hpp>
#include <segsim/ensemble.hpp>
#include <segsim/model_io.hpp>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"

using namespace segsim;

namespace {

CrnModel birth_death() {
    return parse_model(
        "@model BD\n@species X\n@init\n@time 10\n"
        "@reaction birth: 0 -> X @ 1\n@reaction death: X -> 0 @ 0.1\n");
}

Histogram random_units_histogram(RngStream& rng, int max_support) {
    const int bins = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(max_support)));
    std::vector<std::int64_t> support;
    while (static_cast<int>(support.size()) < bins) {
        const std::int64_t v = static_cast<std::int64_t>(rng.uniform_below(40));
        if (std::find(support.begin(), support.end(), v) == support.end()) support.push_back(v);
    }
    std::sort(support.begin(), support.end());
    std::vector<int> units(support.size(), 0);
    for (int u = 0; u < 8; ++u) units[rng.uniform_below(units.size())] += 1;  // masses k/8
    Histogram h;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (units[i] == 0) continue;
        h.support.push_back(support[i]);
        h.mass.push_back(units[i] / 8.0);
    }
    h.sample_count = 8;
    return h;
}

std::vector<std::int64_t> unit_expansion(const Histogram& h) {
    std::vector<std::int64_t> units;
    for (std::size_t i = 0; i < h.support.size(); ++i) {
        const int n = static_cast<int>(std::llround(h.mass[i] * 8.0));
        units.insert(units.end(), static_cast<std::size_t>(n), h.support[i]);
    }
    return units;
}

}  // namespace

TEST_CASE("histogram construction") {
    std::vector<std::int64_t> samples{3, 1, 3, 3, 1, 2};
    Histogram h = histogram_from_samples(samples);
    CHECK(h.support == std::vector<std::int64_t>{1, 2, 3});
    CHECK(h.mass[0] == doctest::Approx(2.0 / 6));
    CHECK(h.mass[1] == doctest::Approx(1.0 / 6));
    CHECK(h.mass[2] == doctest::Approx(3.0 / 6));
    CHECK(h.sample_count == 6);
    CHECK_NOTHROW(h.validate());

    Histogram single = histogram_from_samples(std::vector<std::int64_t>{7});
    CHECK(single.support == std::vector<std::int64_t>{7});
    CHECK(single.mass == std::vector<double>{1.0});

    Histogram bad{{1, 2}, {0.7, 0.7}, 2};
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("state_at walks the seams") {
    Run run;
    run.seams = {{State{{5}}, 0.0}, {State{{6}}, 1.5}, {State{{4}}, 4.0}};
    CHECK(state_at(run, 0.0).counts[0] == 5);
    CHECK(state_at(run, 1.49).counts[0] == 5);
    CHECK(state_at(run, 1.5).counts[0] == 6);   // right-continuous step function
    CHECK(state_at(run, 3.99).counts[0] == 6);
    CHECK(state_at(run, 1000.0).counts[0] == 4);  // past the end: last state
    CHECK_THROWS_AS(state_at(run, -0.1), DomainError);
    CHECK_THROWS_AS(state_at(Run{}, 1.0), DomainError);
}

TEST_CASE("emd basics") {
    Histogram a{{4}, {1.0}, 1};
    CHECK(emd(a, a) == 0.0);
    Histogram p10{{10}, {1.0}, 1};
    Histogram p25{{25}, {1.0}, 1};
    CHECK(emd(p10, p25) == doctest::Approx(15.0));
    Histogram split{{0, 2}, {0.5, 0.5}, 2};
    Histogram point{{1}, {1.0}, 1};
    CHECK(emd(split, point) == doctest::Approx(1.0));
}

TEST_CASE("emd equals brute-force optimal transport") {
    RngStream rng(31);
    for (int trial = 0; trial < 150; ++trial) {
        Histogram h1 = random_units_histogram(rng, 6);
        Histogram h2 = random_units_histogram(rng, 6);
        const double reference =
            oracles::transport_min_cost_units(unit_expansion(h1), unit_expansion(h2));
        CHECK(emd(h1, h2) == doctest::Approx(reference).epsilon(1e-9));
    }
}

TEST_CASE("emd is a metric on sampled inputs") {
    RngStream rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        Histogram a = random_units_histogram(rng, 5);
        Histogram b = random_units_histogram(rng, 5);
        Histogram c = random_units_histogram(rng, 5);
        CHECK(emd(a, b) == doctest::Approx(emd(b, a)));
        CHECK(emd(a, a) == 0.0);
        CHECK(emd(a, c) <= emd(a, b) + emd(b, c) + 1e-12);
        if (!(a.support == b.support && a.mass == b.mass)) CHECK(emd(a, b) > 0.0);
    }
}

TEST_CASE("control pair emd") {
    CrnModel bd = birth_death();
    CHECK(control_pair_emd(bd, 10.0, 0, 500, 42, 42) == 0.0);  // same seeds, same ensemble

    const double small = control_pair_emd(bd, 10.0, 0, 1000, 1, 2);
    const double large = control_pair_emd(bd, 10.0, 0, 8000, 1, 2);
    CHECK(small > 0.0);
    CHECK(large > 0.0);
    CHECK(large < small);  // shrinks roughly as n^{-1/2}
}

TEST_CASE("transient histogram from an ensemble") {
    CrnModel bd = birth_death();
    auto runs_a = run_ssa_ensemble(bd, 600, 9, 2, 10.0, Recording::seams_only());
    auto runs_b = run_ssa_ensemble(bd, 600, 9, 2, 10.0, Recording::seams_only());
    Histogram ha = transient_histogram(runs_a, 10.0, 0);
    Histogram hb = transient_histogram(runs_b, 10.0, 0);
    CHECK(ha.support == hb.support);
    CHECK(ha.mass == hb.mass);
    CHECK_NOTHROW(ha.validate());

    Run constant;
    constant.seams = {{State{{3}}, 0.0}};
    std::vector<Run> runs{constant};
    Histogram point = transient_histogram(runs, 5.0, 0);
    CHECK(point.support == std::vector<std::int64_t>{3});
    CHECK(point.mass == std::vector<double>{1.0});
}

TEST_CASE("statistics over a time grid") {
    Run flat;
    flat.seams = {{State{{2}}, 0.0}};
    std::vector<Run> same{flat, flat, flat};
    std::vector<double> grid{0.0, 1.0, 50.0};
    TimeSeriesStat s = stats_over_time(same, grid, 0);
    REQUIRE(s.mean.size() == 3);
    for (double m : s.mean) CHECK(m == doctest::Approx(2.0));
    for (double v : s.variance) CHECK(v == 0.0);

    const CrnModel& pp = builtin_models().at("PP");
    auto runs = run_ssa_ensemble(pp, 300, 23, 4, pp.t_end, Recording::every(64));
    std::vector<double> times{0.0, 100.0, 200.0, 500.0};
    TimeSeriesStat pred = stats_over_time(runs, times, 0);
    CHECK(pred.mean[0] == doctest::Approx(200.0));
    CHECK(pred.mean[1] < pred.mean[0]);  // the predator mean decays
    CHECK(pred.mean[2] < pred.mean[1]);
    CHECK(pred.mean[3] == pred.mean[2]);  // grid point past every horizon: final states
    for (double v : pred.variance) CHECK(v >= 0.0);
}
