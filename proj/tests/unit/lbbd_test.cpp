#include <doctest.h>

#include "mslcp/error.hpp"
#include "mslcp/lbbd.hpp"
#include "oracles/oracles.hpp"
#include "support/builders.hpp"

using namespace mslcp;

namespace {

RunOptions with(CutProcedure kind, int per_call = 1) {
    RunOptions o;
    o.strategy.kind = kind;
    o.strategy.cuts_per_call = per_call;
    o.max_iterations = 50;
    return o;
}

void check_history(const RunResult& r) {
    for (std::size_t i = 1; i < r.history.size(); ++i) {
        CHECK(r.history[i].master_objective >= r.history[i - 1].master_objective - 1e-9);
        CHECK(r.history[i].cumulative_cuts >= r.history[i - 1].cumulative_cuts);
        CHECK(r.history[i].iteration == static_cast<int>(i) + 1);
    }
}

}  // namespace

TEST_CASE("toy3 with min-cut reaches the capacitated optimum") {
    auto inst = support::load_fixture("toy3.json");
    auto r = run(inst, with(CutProcedure::MinCut));
    REQUIRE(r.status == RunStatus::Optimal);
    CHECK(r.history.size() <= 3);
    CHECK(r.history.back().violated_shifts == 0);
    check_history(r);
    auto best = oracle::brute_capacitated(inst);
    REQUIRE(best.feasible);
    CHECK(r.final_solution->night_count == best.night);
    CHECK(r.final_solution->total_count == best.total);
    for (const auto& cut : r.cuts) CHECK(is_satisfied(cut, *r.final_solution));
    CHECK(oracle::check_solution(inst, r.final_solution->x, r.cuts) == "");
}

TEST_CASE("all strategies agree on toy3") {
    auto inst = support::load_fixture("toy3.json");
    auto reference = run(inst, with(CutProcedure::MinCut));
    for (auto [kind, per_call] : {std::pair{CutProcedure::Naive, 1}, std::pair{CutProcedure::BasicHeuristic, 15},
                                  std::pair{CutProcedure::BinarySearchHeuristic, 15}}) {
        auto r = run(inst, with(kind, per_call));
        REQUIRE(r.status == RunStatus::Optimal);
        CHECK(r.final_solution->night_count == reference.final_solution->night_count);
        CHECK(r.final_solution->total_count == reference.final_solution->total_count);
        check_history(r);
    }
}

TEST_CASE("the shipped shift is repaired in one iteration") {
    auto inst = support::load_fixture("zl_13_04.json");
    auto r = run(inst, with(CutProcedure::MinCut));
    REQUIRE(r.status == RunStatus::Optimal);
    REQUIRE(r.history.size() == 2);
    CHECK(r.history[0].violated_shifts == 1);
    CHECK(r.history[1].violated_shifts == 0);
    const ShiftKey shift{0, Window::Day, 0};
    CHECK(r.schedules.at(shift).teams_used == 1);
    CHECK(r.jobs.at(shift).size() == 4);
}

TEST_CASE("an instance without conflicts finishes at once") {
    auto inst = support::instance(24.0, {"L"}, {support::type(0, "A", 30, 48.0)},
                                  {support::unit("u", {{0, 9.0, 11.0}}, {0.0}),
                                   support::unit("v", {{0, 12.0, 14.0}}, {0.0})});
    auto r = run(inst, with(CutProcedure::MinCut));
    CHECK(r.status == RunStatus::Optimal);
    CHECK(r.history.size() == 1);
    CHECK(r.cuts.empty());
}

TEST_CASE("iteration limit stops with the last solution") {
    auto inst = support::load_fixture("zl_13_04.json");
    auto o = with(CutProcedure::Naive);
    o.max_iterations = 1;
    int seen = 0;
    o.on_iteration = [&](const IterationRecord&) { ++seen; };
    auto r = run(inst, o);
    CHECK(r.status == RunStatus::IterationLimit);
    CHECK(seen == 1);
    REQUIRE(r.final_solution);
    CHECK(r.history.size() == 1);
}

TEST_CASE("nonpositive time limits are rejected") {
    auto inst = support::load_fixture("zl_13_04.json");
    auto o = with(CutProcedure::MinCut);
    o.time_limit = std::chrono::duration<double>(0.0);
    CHECK_THROWS_AS(run(inst, o), InputError);
}

TEST_CASE("count_violations") {
    auto inst = support::load_fixture("zl_13_04.json");
    ShiftScope day;
    CHECK(count_violations(MasterSolution{}, inst, day) == 0);
    MasterSolution first;
    for (int i = 0; i < 5; ++i) first.x.push_back({i, 1, 0});
    complete_solution(first, inst);
    CHECK(count_violations(first, inst, day) == 1);
    ShiftScope none{ShiftScope::Kind::Explicit, {}};
    CHECK(count_violations(first, inst, none) == 0);
    int recount = 0;
    for (const auto& [key, jobs] : oracle::jobs_of(inst, first.x))
        if (key.window == Window::Day && oracle::infeasible(jobs, 1)) ++recount;
    CHECK(recount == 1);
}

TEST_CASE("scope membership") {
    ShiftScope day;
    CHECK(day.contains({0, Window::Day, 3}));
    CHECK_FALSE(day.contains({0, Window::Night, 3}));
    ShiftScope all{ShiftScope::Kind::All, {}};
    CHECK(all.contains({0, Window::Night, 3}));
    ShiftScope one{ShiftScope::Kind::Explicit, {{1, Window::Night, 0}}};
    CHECK(one.contains({1, Window::Night, 0}));
    CHECK_FALSE(one.contains({1, Window::Day, 0}));
}

TEST_CASE("cut seeds differ per iteration and shift") {
    CHECK(cut_seed(0, 1, 0) != cut_seed(0, 2, 0));
    CHECK(cut_seed(0, 1, 0) != cut_seed(0, 1, 1));
    CHECK(cut_seed(5, 0, 0) == 5);
}
