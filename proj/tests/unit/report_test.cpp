#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mslcp/error.hpp"
#include "mslcp/generator.hpp"
#include "mslcp/report.hpp"
#include "support/builders.hpp"

using namespace mslcp;

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> fields(const std::string& row) {
    std::vector<std::string> out;
    std::istringstream in(row);
    for (std::string f; std::getline(in, f, ',');) out.push_back(f);
    return out;
}

}  // namespace

TEST_CASE("durations") {
    CHECK(parse_duration("2h").count() == doctest::Approx(7200));
    CHECK(parse_duration("30m").count() == doctest::Approx(1800));
    CHECK(parse_duration("5min").count() == doctest::Approx(300));
    CHECK(parse_duration("45s").count() == doctest::Approx(45));
    CHECK(parse_duration("1500ms").count() == doctest::Approx(1.5));
    CHECK(parse_duration("12.5").count() == doctest::Approx(12.5));
    CHECK_THROWS_AS(parse_duration("0s"), InputError);
    CHECK_THROWS_AS(parse_duration("-3m"), InputError);
    CHECK_THROWS_AS(parse_duration("3 weeks"), InputError);
    CHECK_THROWS_AS(parse_duration("soon"), InputError);
}

TEST_CASE("clock format") {
    CHECK(format_clock(0) == "d0 00:00");
    CHECK(format_clock(1130) == "d0 18:50");
    CHECK(format_clock(1440 + 425) == "d1 07:05");
    CHECK(format_clock(-60) == "d-1 23:00");
}

TEST_CASE("convergence rows parse back") {
    IterationRecord rec;
    rec.iteration = 3;
    rec.master_objective = 2.0041;
    rec.night_count = 2;
    rec.total_count = 41;
    rec.violated_shifts = 4;
    rec.cuts_added = 5;
    rec.cumulative_cuts = 9;
    rec.times = {0.25, 0.001, 0.002, 0.0};
    rec.elapsed_s = 1.5;
    auto header = fields(convergence_header());
    auto row = fields(convergence_row(rec));
    REQUIRE(row.size() == header.size());
    CHECK(row[0] == "1");
    CHECK(row[1] == "3");
    CHECK(std::stod(row[2]) == doctest::Approx(2.0041));
    CHECK(row[5] == "4");
    CHECK(row[7] == "9");
    CHECK(std::stod(row[12]) == doctest::Approx(0.253));
}

TEST_CASE("convergence log writes the header and every row") {
    const auto path = std::filesystem::temp_directory_path() / "mslcp_convergence_test.csv";
    {
        ConvergenceLog log(path);
        IterationRecord rec;
        rec.iteration = 1;
        log.append(rec);
        std::ifstream in(path);
        std::stringstream text;
        text << in.rdbuf();
        CHECK(lines(text.str()).size() == 2);
    }
    std::filesystem::remove(path);
}

TEST_CASE("gantt has one line per job and stays inside the windows") {
    auto inst = support::load_fixture("zl_13_04.json");
    RunOptions o;
    auto r = run(inst, o);
    REQUIRE(r.status == RunStatus::Optimal);
    for (const auto& [key, jobs] : r.jobs) {
        const auto& sched = r.schedules.at(key);
        auto rows = lines(render_gantt(jobs, sched, inst));
        REQUIRE(rows.size() == jobs.size());
        int lo = jobs.front().release_min;
        for (const auto& j : jobs) lo = std::min(lo, j.release_min);
        const int origin = lo / kGanttMinutesPerChar * kGanttMinutesPerChar;
        for (std::size_t q = 0; q < jobs.size(); ++q) {
            const auto& row = rows[q];
            const auto open = row.find('|');
            const auto close = row.find('|', open + 1);
            REQUIRE(close != std::string::npos);
            for (std::size_t c = open + 1; c < close; ++c) {
                if (row[c] == ' ') continue;
                const int from = origin + static_cast<int>(c - open - 1) * kGanttMinutesPerChar;
                CHECK(from + kGanttMinutesPerChar > jobs[q].release_min);
                CHECK(from < jobs[q].deadline_min);
            }
        }
    }
    auto all = lines(render_gantt(r, inst));
    CHECK(all.size() == r.jobs.size() + 5);
    CHECK(all.front().rfind("# Zl/day/0: 4 jobs, 1 teams", 0) == 0);
}

TEST_CASE("json documents") {
    auto inst = support::load_fixture("zl_13_04.json");
    RunOptions o;
    auto r = run(inst, o);
    auto schedules = nlohmann::json::parse(schedules_document(r, inst));
    CHECK(schedules["format_version"] == 1);
    CHECK(schedules["shifts"].size() == 2);
    auto summary = nlohmann::json::parse(summary_document({&inst, &r, o.strategy, o.scope, "all-shifts", 0.5}));
    CHECK(summary["status"] == "OPTIMAL");
    CHECK(summary["initial_violations"] == 1);
    CHECK(summary["violations"] == 0);
    CHECK(summary["final"]["night_count"] == 1);
    auto error = nlohmann::json::parse(error_document("input", "bad"));
    CHECK(error["error"] == "input");
}

TEST_CASE("generator is reproducible") {
    GeneratorSpec spec;
    auto a = generate_instance(spec);
    auto b = generate_instance(spec);
    CHECK(a == b);
    CHECK(validate(a).empty());
    CHECK(a == support::load_fixture("toy3.json"));
    spec.seed = 8;
    CHECK_FALSE(generate_instance(spec) == a);
}

TEST_CASE("generator honours the requested pressure") {
    GeneratorSpec spec;
    spec.units = 8;
    spec.locations = 4;
    spec.days = 3;
    spec.conflict_pressure = 0.5;
    auto inst = generate_instance(spec);
    CHECK(validate(inst).empty());
    CHECK(measure_conflict_pressure(inst) == doctest::Approx(0.5).epsilon(0.2));
    spec.units = 1;
    CHECK_THROWS_AS(generate_instance(spec), InputError);
    spec.units = 8;
    spec.conflict_pressure = 1.5;
    CHECK_THROWS_AS(generate_instance(spec), InputError);
}
