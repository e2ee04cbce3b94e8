#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "mslcp/cuts.hpp"
#include "mslcp/error.hpp"
#include "oracles/oracles.hpp"
#include "support/builders.hpp"

using namespace mslcp;
using support::jobs;

namespace {

std::vector<Job> pick(const std::vector<Job>& q, const std::vector<int>& subset) {
    std::vector<Job> out;
    for (int i : subset) out.push_back(q[static_cast<std::size_t>(i)]);
    return out;
}

// Two separate clashing pairs among feasible fillers.
std::vector<Job> two_clashes() {
    return jobs({{0, 30, 30}, {0, 30, 30}, {100, 130, 30}, {100, 130, 30}, {200, 260, 20}, {300, 400, 30}});
}

// One clashing pair among ten jobs.
std::vector<Job> one_clash() {
    return jobs({{0, 40, 20}, {50, 90, 20}, {100, 130, 30}, {100, 130, 30}, {140, 180, 20}, {190, 230, 20},
                 {240, 280, 20}, {290, 330, 20}, {340, 380, 20}, {390, 430, 20}});
}

}  // namespace

TEST_CASE("procedure names") {
    for (auto p : {CutProcedure::Naive, CutProcedure::BasicHeuristic, CutProcedure::BinarySearchHeuristic,
                   CutProcedure::MinCut})
        CHECK(parse_procedure(to_string(p)) == p);
    CHECK(parse_procedure("min-cut") == CutProcedure::MinCut);
    CHECK(parse_procedure("binary") == CutProcedure::BinarySearchHeuristic);
    CHECK_FALSE(parse_procedure("random"));
}

TEST_CASE("uniform index stays in range and is reproducible") {
    CutRng a(42), b(42);
    for (std::size_t n = 1; n < 50; ++n) {
        const auto i = a.uniform_index(n);
        CHECK(i < n);
        CHECK(b.uniform_index(n) == i);
    }
}

TEST_CASE("naive returns the whole set") {
    auto q = support::two_pairs();
    auto cuts = naive(q);
    REQUIRE(cuts.size() == 1);
    CHECK(cuts[0] == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("basic heuristic") {
    SUBCASE("single infeasible job") {
        auto q = jobs({{0, 10, 20}});
        AppOracle oracle(1);
        CHECK(basic_heuristic(q, oracle, 1) == std::vector<int>{0});
    }
    SUBCASE("the only clash") {
        auto q = jobs({{0, 30, 30}, {0, 30, 30}});
        AppOracle oracle(1);
        CHECK(basic_heuristic(q, oracle, 9) == std::vector<int>{0, 1});
    }
    SUBCASE("result is infeasible and minimal in its last job") {
        auto q = two_clashes();
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            AppOracle oracle(1);
            CutRng replay(seed);
            std::vector<int> pool{0, 1, 2, 3, 4, 5};
            auto cut = basic_heuristic(q, oracle, seed);
            CHECK(oracle::infeasible(pick(q, cut), 1));
            // Replaying the draws recovers the order in which jobs were added.
            std::vector<int> added;
            while (added.size() < cut.size()) {
                const auto i = replay.uniform_index(pool.size());
                added.push_back(pool[i]);
                pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
            }
            added.pop_back();
            CHECK_FALSE(oracle::infeasible(pick(q, added), 1));
        }
    }
    SUBCASE("different seeds find different cuts") {
        auto q = two_clashes();
        std::set<std::vector<int>> seen;
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            AppOracle oracle(1);
            seen.insert(basic_heuristic(q, oracle, seed));
        }
        CHECK(seen.size() >= 2);
    }
}

TEST_CASE("binary search heuristic keeps its invariants") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 40; ++round) {
        auto q = support::random_jobs(rng, 6, 120, 60, 40);
        if (!oracle::infeasible(q, 1)) continue;
        AppOracle app(1);
        int boundaries = 0;
        auto cut = binary_search_heuristic(q, app, static_cast<std::uint64_t>(round),
                                           [&](const std::vector<int>& a, const std::vector<int>& b) {
                                               ++boundaries;
                                               std::vector<int> ab = a;
                                               ab.insert(ab.end(), b.begin(), b.end());
                                               CHECK_FALSE(oracle::infeasible(pick(q, a), 1));
                                               CHECK(oracle::infeasible(pick(q, ab), 1));
                                           });
        CHECK(boundaries >= 1);
        CHECK(oracle::infeasible(pick(q, cut), 1));
    }
}

TEST_CASE("binary search heuristic edge cases") {
    AppOracle app(1);
    CHECK(binary_search_heuristic(jobs({{0, 30, 30}, {0, 30, 30}}), app, 4) == std::vector<int>{0, 1});
    auto q = jobs({{0, 40, 20}, {50, 60, 20}, {100, 140, 20}});
    auto cut = binary_search_heuristic(q, app, 8);
    CHECK(std::find(cut.begin(), cut.end(), 1) != cut.end());
    CHECK(oracle::infeasible(pick(q, cut), 1));
}

TEST_CASE("binary search asks fewer questions than the basic heuristic") {
    auto q = one_clash();
    long basic_calls = 0, bsh_calls = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        AppOracle a(1), b(1);
        basic_heuristic(q, a, seed);
        binary_search_heuristic(q, b, seed);
        basic_calls += a.calls();
        bsh_calls += b.calls();
    }
    CHECK(bsh_calls <= basic_calls);
}

TEST_CASE("min_cut") {
    auto cut = min_cut(support::two_pairs(), 1);
    CHECK_FALSE(cut.fallback_required);
    CHECK(cut.cuts == JobSubsets{{0, 1}, {2, 3}});

    auto fallback = min_cut(support::preemption_only(), 1);
    CHECK(fallback.fallback_required);
    CHECK(fallback.cuts.empty());

    CHECK(min_cut(jobs({{0, 10, 20}, {30, 60, 10}}), 1).cuts == JobSubsets{{0}});
    CHECK_THROWS_AS(min_cut(support::two_pairs(), 2), Unsupported);
}

TEST_CASE("generate dispatches, falls back and verifies") {
    AppOracle app(1);
    CutStrategy s;
    s.kind = CutProcedure::MinCut;
    auto out = generate(s, support::preemption_only(), app);
    CHECK(out.fell_back);
    CHECK(out.used == CutProcedure::BinarySearchHeuristic);
    CHECK(out.cuts == JobSubsets{{0, 1}});

    s.kind = CutProcedure::BasicHeuristic;
    s.cuts_per_call = 15;
    out = generate(s, two_clashes(), app);
    CHECK(out.cuts.size() >= 2);
    CHECK(std::set<std::vector<int>>(out.cuts.begin(), out.cuts.end()).size() == out.cuts.size());
    for (const auto& c : out.cuts) CHECK(oracle::infeasible(pick(two_clashes(), c), 1));

    s.kind = CutProcedure::Naive;
    CHECK_THROWS_AS(generate(s, jobs({{0, 60, 30}}), app), ContractError);
}

TEST_CASE("heuristics are deterministic per seed") {
    auto q = two_clashes();
    AppOracle a(1), b(1);
    CHECK(basic_heuristic(q, a, 77) == basic_heuristic(q, b, 77));
    CHECK(binary_search_heuristic(q, a, 77) == binary_search_heuristic(q, b, 77));
}

TEST_CASE("cuts refer to unit, MO and types") {
    auto q = jobs({{0, 30, 30}, {0, 30, 30}});
    q[1].types = {1, 0};
    auto cut = to_cut(q, {1, 0});
    REQUIRE(cut.members.size() == 2);
    CHECK(cut.members[0].unit == 0);
    CHECK(cut.members[1].unit == 1);
    CHECK(cut.members[1].types == std::vector<int>{0, 1});
}
