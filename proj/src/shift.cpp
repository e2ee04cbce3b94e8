#include "mslcp/shift.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "mslcp/error.hpp"

namespace mslcp {

std::string to_string(const ShiftKey& key, const Instance& inst) {
    std::string loc = key.location >= 0 && key.location < static_cast<int>(inst.locations.size())
                          ? inst.locations[static_cast<std::size_t>(key.location)]
                          : std::to_string(key.location);
    return loc + (key.window == Window::Day ? "/day/" : "/night/") + std::to_string(key.reference_day);
}

ShiftKey parse_shift_key(std::string_view text, const Instance& inst) {
    const auto last = text.rfind('/');
    const auto mid = last == std::string_view::npos ? last : text.rfind('/', last == 0 ? 0 : last - 1);
    if (last == std::string_view::npos || mid == std::string_view::npos || mid == last)
        throw InputError("shift must look like <location>/<day|night>/<day>: " + std::string(text));
    ShiftKey key;
    key.location = inst.location_index(text.substr(0, mid));
    if (key.location < 0) throw InputError("unknown location in shift " + std::string(text));
    const auto window = text.substr(mid + 1, last - mid - 1);
    if (window == "day")
        key.window = Window::Day;
    else if (window == "night")
        key.window = Window::Night;
    else
        throw InputError("shift window must be day or night: " + std::string(text));
    const auto day = text.substr(last + 1);
    const auto [ptr, ec] = std::from_chars(day.data(), day.data() + day.size(), key.reference_day);
    if (ec != std::errc() || ptr != day.data() + day.size() || day.empty())
        throw InputError("bad reference day in shift " + std::string(text));
    return key;
}

ShiftKey assign_shift(const MaintenanceOpportunity& mo, const Instance& inst) {
    const int end_day = static_cast<int>(std::floor(mo.end_hr / 24.0));
    if (is_daytime(mo, inst)) return {mo.location, Window::Day, end_day};
    // Night MOs belong to the last night shift they were in.
    const bool after_night_start = time_of_day(mo.end_hr) >= inst.policy.night_start;
    return {mo.location, Window::Night, after_night_start ? end_day : end_day - 1};
}

ShiftBounds shift_bounds(const ShiftKey& key, const Instance& inst) {
    const double base = 24.0 * key.reference_day;
    if (key.window == Window::Day)
        return {to_minutes(base + inst.policy.day_start), to_minutes(base + inst.policy.night_start)};
    return {to_minutes(base + inst.policy.night_start), to_minutes(base + 24.0 + inst.policy.day_start)};
}

Job make_job(const Instance& inst, const MaintenanceOpportunity& mo, std::vector<int> types) {
    if (types.empty()) throw ContractError("a job needs at least one activity");
    std::sort(types.begin(), types.end());

    Job job;
    job.unit = mo.unit;
    job.mo_index = mo.index;
    for (int k : types) job.duration_min += inst.types.at(static_cast<std::size_t>(k)).duration_min;
    job.types = std::move(types);
    job.shift = assign_shift(mo, inst);

    const int s = to_minutes(mo.start_hr);
    const int e = to_minutes(mo.end_hr);
    const int v = job.duration_min;
    if (job.shift.window == Window::Day) {
        job.release_min = s;
        job.deadline_min = e;
    } else {
        const auto bounds = shift_bounds(job.shift, inst);
        if (s >= bounds.start_min)
            job.release_min = s;
        else
            job.release_min = e - bounds.start_min < v ? e - v : bounds.start_min;
        if (e <= bounds.end_min)
            job.deadline_min = e;
        else
            job.deadline_min = bounds.end_min - s < v ? s + v : bounds.end_min;
    }
    if (job.deadline_min - job.release_min < job.duration_min)
        throw InternalError("job of unit " + std::to_string(job.unit) + " at MO " + std::to_string(job.mo_index) +
                            " has a window shorter than its duration");
    return job;
}

ShiftJobs build_jobs(const MasterSolution& solution, const Instance& inst) {
    std::map<std::pair<int, int>, std::vector<int>> per_mo;
    for (const auto& a : solution.x) per_mo[{a.unit, a.mo_index}].push_back(a.type);

    ShiftJobs out;
    for (auto& [key, types] : per_mo) {
        Job job = make_job(inst, inst.mo(key.first, key.second), std::move(types));
        out[job.shift].push_back(std::move(job));
    }
    return out;
}

CutMember to_cut_member(const Job& job) {
    return {job.unit, job.mo_index, job.types};
}

}  // namespace mslcp
