#include <doctest.h>

#include "mslcp/error.hpp"
#include "mslcp/instance.hpp"
#include "mslcp/instance_io.hpp"
#include "support/builders.hpp"

using namespace mslcp;
using support::instance;
using support::type;
using support::unit;

namespace {

Instance single_unit(std::vector<support::MoSpec> mos, double age = 0.0) {
    return instance(72.0, {"L"}, {type(0, "A", 30, 24.0)}, {unit("u", std::move(mos), {age})});
}

}  // namespace

TEST_CASE("to_minutes rounds to the nearest minute") {
    CHECK(to_minutes(1.5) == 90);
    CHECK(to_minutes(10.0 + 29.6 / 60.0) == 630);
    CHECK(to_minutes(10.0 + 29.4 / 60.0) == 629);
    CHECK(to_minutes(0.0) == 0);
}

TEST_CASE("daytime is decided by the end time of day") {
    Policy p;
    CHECK(is_daytime_end(10.5, p));
    CHECK(is_daytime_end(31.0, p));
    CHECK_FALSE(is_daytime_end(19.0, p));
    CHECK_FALSE(is_daytime_end(6.99, p));
    CHECK(is_daytime_end(7.0, p));
    for (double t = 0.0; t < 48.0; t += 0.25) CHECK(is_daytime_end(t, p) == is_daytime_end(t + 24.0, p));
}

TEST_CASE("successor window after an MO") {
    auto inst = single_unit({{0, 8.0, 10.0}, {0, 12.0, 13.0}, {0, 30.0, 31.0}, {0, 36.0, 37.0}});
    CHECK(successor_window(inst, 0, 1, 0) == std::vector<int>{2, 3});
    CHECK(successor_window(inst, 0, 4, 0).empty());
}

TEST_CASE("opening window uses the initial age") {
    auto inst = single_unit({{0, 5.0, 6.0}, {0, 23.0, 23.5}, {0, 25.0, 26.0}});
    CHECK(successor_window(inst, 0, 0, 0) == std::vector<int>{1, 2});
    inst.units[0].initial_age_hr[0] = 2.0;
    CHECK(successor_window(inst, 0, 0, 0) == std::vector<int>{1, 2, 3});
}

TEST_CASE("successor window matches a direct scan") {
    auto inst = single_unit({{0, 1.0, 3.0}, {0, 2.0, 4.0}, {0, 4.0, 9.0}, {0, 26.0, 27.0}, {0, 27.5, 40.0}});
    const auto& mos = inst.units[0].mos;
    for (const auto& from : mos) {
        std::vector<int> expected;
        for (const auto& p : mos)
            if (from.end_hr < p.start_hr && p.start_hr <= from.end_hr + 24.0) expected.push_back(p.index);
        CHECK(successor_window(inst, 0, from.index, 0) == expected);
    }
}

TEST_CASE("successor window rejects unknown units and types") {
    auto inst = single_unit({{0, 1.0, 3.0}});
    CHECK_THROWS_AS(successor_window(inst, 3, 0, 0), InputError);
    CHECK_THROWS_AS(successor_window(inst, 0, 0, 2), InputError);
}

TEST_CASE("validate") {
    auto good = single_unit({{0, 1.0, 3.0}, {0, 2.0, 4.0}});
    CHECK(validate(good).empty());  // overlapping MOs are fine

    auto backwards = single_unit({{0, 5.0, 5.0}});
    auto v = validate(backwards);
    REQUIRE(v.size() == 1);
    CHECK(v[0].entity == "MO (0, 1)");

    auto aged = single_unit({{0, 1.0, 3.0}}, -1.0);
    v = validate(aged);
    REQUIRE(v.size() == 1);
    CHECK(v[0].entity == "(0, 0)");
}

TEST_CASE("instance documents round trip") {
    auto inst = support::load_fixture("toy3.json");
    CHECK(validate(inst).empty());
    auto again = parse_instance(dump_instance(inst));
    CHECK(again == inst);
    CHECK(content_hash(again) == content_hash(inst));
    again.units[0].mos[0].end_hr += 0.25;
    CHECK(content_hash(again) != content_hash(inst));
}

TEST_CASE("parser rejects unknown fields and bad references") {
    auto text = dump_instance(support::load_fixture("zl_13_04.json"));
    CHECK_THROWS_AS(parse_instance(text.substr(0, text.size() - 3)), InputError);
    auto extra = text;
    extra.insert(1, "\"colour\": 3,");
    CHECK_THROWS_AS(parse_instance(extra), InputError);
    auto bad_loc = text;
    bad_loc.replace(bad_loc.find("\"location\": \"Ut\""), 16, "\"location\": \"Xx\"");
    CHECK_THROWS_AS(parse_instance(bad_loc), InputError);
}
