#include <doctest.h>

#include "mslcp/error.hpp"
#include "mslcp/shift.hpp"
#include "support/builders.hpp"

using namespace mslcp;
using support::instance;
using support::type;
using support::unit;

namespace {

Instance two_types(std::vector<support::MoSpec> mos) {
    return instance(72.0, {"L", "M"}, {type(0, "A", 30, 24.0), type(1, "B", 60, 48.0)},
                    {unit("u", std::move(mos), {0.0, 0.0})});
}

}  // namespace

TEST_CASE("assign_shift") {
    auto inst = two_types({{0, 2.0, 5.0}, {1, 33.0, 35.5}, {0, 40.0, 45.5}, {0, 50.0, 53.0}});
    CHECK(assign_shift(inst.mo(0, 1), inst) == ShiftKey{0, Window::Night, -1});
    CHECK(assign_shift(inst.mo(0, 2), inst) == ShiftKey{1, Window::Day, 1});
    CHECK(assign_shift(inst.mo(0, 3), inst) == ShiftKey{0, Window::Night, 1});
    CHECK(assign_shift(inst.mo(0, 4), inst) == ShiftKey{0, Window::Night, 1});
}

TEST_CASE("shift bounds") {
    auto inst = two_types({{0, 2.0, 5.0}});
    auto day = shift_bounds({0, Window::Day, 2}, inst);
    CHECK(day.start_min == 2 * 1440 + 7 * 60);
    CHECK(day.end_min == 2 * 1440 + 19 * 60);
    auto night = shift_bounds({0, Window::Night, -1}, inst);
    CHECK(night.start_min == -5 * 60);
    CHECK(night.end_min == 7 * 60);
}

TEST_CASE("release and deadline rules") {
    auto inst = two_types({{0, 9.0, 11.0}, {0, 17.0, 23.0}, {0, 18.0, 19.0 + 20.0 / 60.0}, {0, 23.5, 30.5},
                           {0, 30.0, 31.25}});

    SUBCASE("daytime MO keeps its own bounds") {
        auto j = make_job(inst, inst.mo(0, 1), {0});
        CHECK(j.release_min == 540);
        CHECK(j.deadline_min == 660);
        CHECK(j.duration_min == 30);
    }
    SUBCASE("night MO starting before the shift is clamped to 19:00") {
        auto j = make_job(inst, inst.mo(0, 2), {1, 0});
        CHECK(j.release_min == 1140);
        CHECK(j.deadline_min == 1380);
        CHECK(j.duration_min == 90);
        CHECK(j.types == std::vector<int>{0, 1});
    }
    SUBCASE("too little of the MO inside the shift") {
        auto j = make_job(inst, inst.mo(0, 3), {0});
        CHECK(j.deadline_min == 1160);
        CHECK(j.release_min == 1160 - 30);
    }
    SUBCASE("night MO crossing midnight") {
        auto j = make_job(inst, inst.mo(0, 4), {0});
        CHECK(j.shift == ShiftKey{0, Window::Night, 0});
        CHECK(j.release_min == 1410);
        CHECK(j.deadline_min == 1830);
    }
    SUBCASE("daytime MO starting in the night keeps its start") {
        auto j = make_job(inst, inst.mo(0, 5), {0});
        CHECK(j.shift == ShiftKey{0, Window::Day, 1});
        CHECK(j.release_min == 1800);
        CHECK(j.deadline_min == 1875);
    }
}

TEST_CASE("a job that does not fit its window is a bug") {
    auto inst = two_types({{0, 9.0, 9.5}});
    CHECK_THROWS_AS(make_job(inst, inst.mo(0, 1), {1}), InternalError);
    CHECK_THROWS_AS(make_job(inst, inst.mo(0, 1), {}), ContractError);
}

TEST_CASE("build_jobs groups one job per used MO") {
    auto inst = two_types({{0, 9.0, 11.0}, {0, 17.0, 23.0}, {1, 33.0, 36.0}});
    MasterSolution sol;
    sol.x = {{0, 1, 0}, {0, 2, 0}, {0, 2, 1}};
    auto jobs = build_jobs(sol, inst);
    REQUIRE(jobs.size() == 2);
    CHECK(jobs.at({0, Window::Day, 0}).size() == 1);
    const auto& night = jobs.at({0, Window::Night, 0});
    REQUIRE(night.size() == 1);
    CHECK(night[0].duration_min == 90);
    CHECK(jobs.count({1, Window::Day, 1}) == 0);
    CHECK(build_jobs(MasterSolution{}, inst).empty());
}

TEST_CASE("shift keys print and parse") {
    auto inst = two_types({{0, 9.0, 11.0}});
    for (ShiftKey key : {ShiftKey{0, Window::Day, 0}, ShiftKey{1, Window::Night, -1}, ShiftKey{1, Window::Day, 6}})
        CHECK(parse_shift_key(to_string(key, inst), inst) == key);
    CHECK(to_string(ShiftKey{1, Window::Night, 2}, inst) == "M/night/2");
    CHECK_THROWS_AS(parse_shift_key("Q/day/0", inst), InputError);
    CHECK_THROWS_AS(parse_shift_key("L/noon/0", inst), InputError);
    CHECK_THROWS_AS(parse_shift_key("L/day/x", inst), InputError);
}
