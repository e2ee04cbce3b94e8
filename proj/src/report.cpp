#include "mslcp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "mslcp/error.hpp"

namespace mslcp {

namespace {

using nlohmann::ordered_json;

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

char team_char(int team) {
    if (team < 9) return static_cast<char>('1' + team);
    if (team < 35) return static_cast<char>('a' + team - 9);
    return '#';
}

std::string unit_label(const Instance& inst, int unit) {
    const auto& name = inst.units[static_cast<std::size_t>(unit)].name;
    return name.empty() ? "unit" + std::to_string(unit) : name;
}

std::string type_label(const Instance& inst, int type) {
    const auto& name = inst.types[static_cast<std::size_t>(type)].name;
    return name.empty() ? "type" + std::to_string(type) : name;
}

std::string job_label(const Job& job, const Instance& inst) {
    std::string out = unit_label(inst, job.unit) + " mo" + std::to_string(job.mo_index) + " ";
    for (std::size_t i = 0; i < job.types.size(); ++i) {
        if (i) out += '+';
        out += type_label(inst, job.types[i]);
    }
    return out;
}

ordered_json shift_json(const ShiftKey& key, const Instance& inst) {
    return {{"location", inst.locations[static_cast<std::size_t>(key.location)]},
            {"window", key.window == Window::Day ? "day" : "night"},
            {"reference_day", key.reference_day}};
}

}  // namespace

std::chrono::duration<double> parse_duration(std::string_view text) {
    const std::string s(text);
    char* end = nullptr;
    const double value = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw InputError("not a duration: " + s);
    const std::string_view unit(end);
    double seconds = 0.0;
    if (unit.empty() || unit == "s")
        seconds = value;
    else if (unit == "ms")
        seconds = value / 1000.0;
    else if (unit == "m" || unit == "min")
        seconds = value * 60.0;
    else if (unit == "h")
        seconds = value * 3600.0;
    else
        throw InputError("unknown duration unit in " + s);
    if (!(seconds > 0.0) || !std::isfinite(seconds)) throw InputError("duration must be positive: " + s);
    return std::chrono::duration<double>(seconds);
}

std::string format_clock(int minutes) {
    const int day = minutes >= 0 ? minutes / 1440 : -((-minutes + 1439) / 1440);
    const int rest = minutes - day * 1440;
    char buf[32];
    std::snprintf(buf, sizeof buf, "d%d %02d:%02d", day, rest / 60, rest % 60);
    return buf;
}

std::string convergence_header() {
    return "format_version,iteration,master_objective,night_count,total_count,violated_shifts,cuts_added,"
           "cumulative_cuts,master_s,app_s,cutgen_s,other_s,total_s,elapsed_s,fallbacks";
}

std::string convergence_row(const IterationRecord& rec) {
    std::ostringstream out;
    out << kReportFormatVersion << ',' << rec.iteration << ',' << fixed(rec.master_objective, 6) << ','
        << rec.night_count << ',' << rec.total_count << ',' << rec.violated_shifts << ',' << rec.cuts_added << ','
        << rec.cumulative_cuts << ',' << fixed(rec.times.master_s, 3) << ',' << fixed(rec.times.app_s, 3) << ','
        << fixed(rec.times.cutgen_s, 3) << ',' << fixed(rec.times.other_s, 3) << ',' << fixed(rec.times.total(), 3)
        << ',' << fixed(rec.elapsed_s, 3) << ',' << rec.fallbacks;
    return out.str();
}

ConvergenceLog::ConvergenceLog(const std::filesystem::path& path) : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw InputError("cannot write " + path.string());
    out_ << convergence_header() << '\n' << std::flush;
}

void ConvergenceLog::append(const IterationRecord& rec) {
    out_ << convergence_row(rec) << '\n' << std::flush;
}

std::string render_gantt(std::span<const Job> jobs, const ShiftSchedule& schedule, const Instance& inst) {
    if (jobs.empty()) return {};
    std::vector<int> team(jobs.size(), -1);
    std::vector<int> start(jobs.size(), 0);
    std::vector<int> end(jobs.size(), 0);
    for (std::size_t t = 0; t < schedule.teams.size(); ++t)
        for (const auto& sj : schedule.teams[t]) {
            const auto q = static_cast<std::size_t>(sj.job);
            team.at(q) = static_cast<int>(t);
            start[q] = sj.start_min;
            end[q] = sj.end_min;
        }

    int lo = jobs.front().release_min;
    int hi = jobs.front().deadline_min;
    std::size_t width = 0;
    std::vector<std::string> labels;
    for (const auto& j : jobs) {
        lo = std::min(lo, j.release_min);
        hi = std::max(hi, j.deadline_min);
        labels.push_back(job_label(j, inst));
        width = std::max(width, labels.back().size());
    }
    const int step = kGanttMinutesPerChar;
    const int origin = static_cast<int>(std::floor(static_cast<double>(lo) / step)) * step;
    const int columns = (hi - origin + step - 1) / step;
    // Column c covers [origin + c*step, origin + (c+1)*step).
    auto hits = [&](int c, int from, int to) {
        const int a = origin + c * step;
        return from < a + step && a < to;
    };

    std::string out;
    for (std::size_t q = 0; q < jobs.size(); ++q) {
        std::string row = labels[q];
        row.resize(width, ' ');
        row += " |";
        for (int c = 0; c < columns; ++c) {
            if (team[q] >= 0 && hits(c, start[q], end[q]))
                row += team_char(team[q]);
            else if (hits(c, jobs[q].release_min, jobs[q].deadline_min))
                row += '.';
            else
                row += ' ';
        }
        row += "| ";
        if (team[q] >= 0)
            row += format_clock(start[q]) + " - " + format_clock(end[q]) + " team " + std::to_string(team[q] + 1);
        else
            row += "unscheduled";
        out += row + '\n';
    }
    return out;
}

std::string render_gantt(const RunResult& result, const Instance& inst) {
    std::string out;
    for (const auto& [key, jobs] : result.jobs) {
        const auto it = result.schedules.find(key);
        if (it == result.schedules.end()) continue;
        out += "# " + to_string(key, inst) + ": " + std::to_string(jobs.size()) + " jobs, " +
               std::to_string(it->second.teams_used) + " teams, 1 char = " + std::to_string(kGanttMinutesPerChar) +
               " min\n";
        out += render_gantt(jobs, it->second, inst);
    }
    return out;
}

std::string schedules_document(const RunResult& result, const Instance& inst) {
    ordered_json doc;
    doc["format_version"] = kReportFormatVersion;
    doc["shifts"] = ordered_json::array();
    for (const auto& [key, jobs] : result.jobs) {
        const auto it = result.schedules.find(key);
        if (it == result.schedules.end()) continue;
        ordered_json shift;
        shift["shift"] = shift_json(key, inst);
        shift["teams_used"] = it->second.teams_used;
        shift["teams"] = ordered_json::array();
        for (const auto& team : it->second.teams) {
            ordered_json row = ordered_json::array();
            for (const auto& sj : team) {
                const Job& j = jobs[static_cast<std::size_t>(sj.job)];
                ordered_json types = ordered_json::array();
                for (int k : j.types) types.push_back(type_label(inst, k));
                row.push_back({{"unit", unit_label(inst, j.unit)},
                               {"mo_index", j.mo_index},
                               {"types", types},
                               {"release_min", j.release_min},
                               {"deadline_min", j.deadline_min},
                               {"start_min", sj.start_min},
                               {"end_min", sj.end_min}});
            }
            shift["teams"].push_back(row);
        }
        doc["shifts"].push_back(shift);
    }
    return doc.dump(2) + "\n";
}

std::string summary_document(const RunSummaryInput& in) {
    const Instance& inst = *in.inst;
    const RunResult& r = *in.result;
    ordered_json doc;
    doc["format_version"] = kReportFormatVersion;
    doc["status"] = to_string(r.status);
    doc["scenario"] = in.scenario;
    doc["strategy"] = describe(in.strategy);
    doc["seed"] = in.strategy.seed;
    switch (in.scope.kind) {
        case ShiftScope::Kind::AllDay: doc["scope"] = "all-day"; break;
        case ShiftScope::Kind::All: doc["scope"] = "all"; break;
        case ShiftScope::Kind::Explicit: {
            ordered_json shifts = ordered_json::array();
            for (const auto& key : in.scope.shifts) shifts.push_back(to_string(key, inst));
            doc["scope"] = shifts;
            break;
        }
    }
    doc["iterations"] = r.history.size();
    doc["initial_violations"] = r.history.empty() ? 0 : r.history.front().violated_shifts;
    if (r.final_solution) {
        doc["final"] = {{"night_count", r.final_solution->night_count},
                        {"total_count", r.final_solution->total_count},
                        {"objective", r.final_solution->objective}};
        doc["violations"] = count_violations(*r.final_solution, inst, in.scope);
    } else {
        doc["final"] = nullptr;
        doc["violations"] = nullptr;
    }
    doc["cuts"] = r.cuts.size();
    PhaseTimes total;
    int fallbacks = 0;
    for (const auto& rec : r.history) {
        total.master_s += rec.times.master_s;
        total.app_s += rec.times.app_s;
        total.cutgen_s += rec.times.cutgen_s;
        total.other_s += rec.times.other_s;
        fallbacks += rec.fallbacks;
    }
    doc["fallbacks"] = fallbacks;
    auto ms = [](double s) { return std::round(s * 1000.0) / 1000.0; };
    doc["phases_s"] = {{"master", ms(total.master_s)},
                       {"app", ms(total.app_s)},
                       {"cutgen", ms(total.cutgen_s)},
                       {"other", ms(total.other_s)},
                       {"total", ms(total.total())}};
    doc["elapsed_s"] = ms(in.elapsed_s);
    doc["instance"] = {{"units", inst.units.size()},
                       {"locations", inst.locations.size()},
                       {"mos", inst.mo_count()},
                       {"content_hash", std::to_string(content_hash(inst))}};
    return doc.dump(2) + "\n";
}

std::string error_document(std::string_view kind, std::string_view message) {
    ordered_json doc;
    doc["format_version"] = kReportFormatVersion;
    doc["error"] = std::string(kind);
    doc["message"] = std::string(message);
    return doc.dump(2) + "\n";
}

}  // namespace mslcp
