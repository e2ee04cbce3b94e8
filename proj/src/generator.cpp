#include "mslcp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "mslcp/app.hpp"
#include "mslcp/cuts.hpp"
#include "mslcp/error.hpp"
#include "mslcp/master.hpp"
#include "mslcp/shift.hpp"

namespace mslcp {

namespace {

constexpr int kGrid = 15;
constexpr int kDayFrom = 7 * 60;         // earliest start of a daytime window
constexpr int kDayTo = 18 * 60 + 45;     // latest end of a daytime window
constexpr int kCentre = 12 * 60;         // contained in every daytime window
constexpr int kSlack = 60;

int round_up(int minutes) { return (minutes + kGrid - 1) / kGrid * kGrid; }
int round_down(int minutes) { return minutes / kGrid * kGrid; }

double hours(int day, int minute_of_day) { return 24.0 * day + minute_of_day / 60.0; }

// Uniform integer in [lo, hi] on the grid.
int grid_between(CutRng& rng, int lo, int hi) {
    if (hi <= lo) return lo;
    return lo + kGrid * static_cast<int>(rng.uniform_index(static_cast<std::size_t>((hi - lo) / kGrid + 1)));
}

}  // namespace

std::vector<MaintenanceType> GeneratorSpec::default_types() {
    return {{0, "A", 30, 24.0}, {1, "B", 60, 48.0}};
}

Instance generate_instance(const GeneratorSpec& spec) {
    if (spec.units < 1 || spec.locations < 1 || spec.days < 1)
        throw InputError("units, locations and days must be positive");
    if (!(spec.conflict_pressure >= 0.0 && spec.conflict_pressure <= 1.0))
        throw InputError("conflict pressure must lie in [0, 1]");
    if (spec.types.empty()) throw InputError("at least one maintenance type is required");
    if (spec.policy.day_start * 60 > kCentre || spec.policy.night_start * 60 <= kDayTo)
        throw InputError("generated daytime windows need day_start <= 12 and night_start > 18:45");

    int min_v = spec.types.front().duration_min;
    for (const auto& t : spec.types) min_v = std::min(min_v, t.duration_min);
    if (min_v < 1) throw InputError("type durations must be positive");
    const int conflict_len = std::max(round_up(min_v), round_down(2 * min_v - 1));
    if (conflict_len >= 2 * min_v) throw InputError("shortest type is too short for an engineered conflict");

    CutRng rng(spec.seed);
    Instance inst;
    inst.horizon_hr = 24.0 * spec.days;
    for (int l = 0; l < spec.locations; ++l) inst.locations.push_back("L" + std::to_string(l));
    inst.types = spec.types;
    for (std::size_t k = 0; k < inst.types.size(); ++k) inst.types[k].id = static_cast<int>(k);
    inst.policy = spec.policy;
    inst.units.resize(static_cast<std::size_t>(spec.units));
    for (int i = 0; i < spec.units; ++i) {
        auto& u = inst.units[static_cast<std::size_t>(i)];
        u.name = "U" + std::to_string(i);
        u.initial_age_hr.assign(inst.types.size(), 0.0);
    }

    const int shifts = spec.locations * spec.days;
    const int conflicts = std::min(shifts, static_cast<int>(std::lround(spec.conflict_pressure * shifts)));
    std::vector<std::vector<int>> conflict_locations(static_cast<std::size_t>(spec.days));
    {
        std::vector<int> offset(static_cast<std::size_t>(spec.days));
        for (auto& o : offset) o = static_cast<int>(rng.uniform_index(static_cast<std::size_t>(spec.locations)));
        for (int c = 0; c < conflicts; ++c) {
            const int d = c % spec.days;
            const int l = (offset[static_cast<std::size_t>(d)] + c / spec.days) % spec.locations;
            conflict_locations[static_cast<std::size_t>(d)].push_back(l);
        }
    }

    const int slot = round_up(std::accumulate(inst.types.begin(), inst.types.end(), 0,
                                              [](int acc, const MaintenanceType& t) { return acc + t.duration_min; }));
    const int hot_from = kCentre - round_down(conflict_len * 2 / 3);
    const int hot_to = hot_from + conflict_len;
    const int left_slots = (hot_from - kDayFrom) / slot;
    const int right_slots = (kDayTo - hot_to) / slot;

    for (int d = 0; d < spec.days; ++d) {
        const auto& hot = conflict_locations[static_cast<std::size_t>(d)];

        std::vector<int> pool(static_cast<std::size_t>(spec.units));
        for (int i = 0; i < spec.units; ++i) pool[static_cast<std::size_t>(i)] = i;
        std::vector<int> order;
        while (!pool.empty()) {
            const auto idx = rng.uniform_index(pool.size());
            order.push_back(pool[idx]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
        }

        if (spec.units < 2 * static_cast<int>(hot.size()))
            throw InputError("not enough units for " + std::to_string(hot.size()) + " conflict shifts on day " +
                             std::to_string(d));
        // A third unit joins a conflict only if every calm location keeps one.
        int spare = spec.units - 2 * static_cast<int>(hot.size()) - (spec.locations - static_cast<int>(hot.size()));
        std::size_t next = 0;
        std::vector<std::vector<int>> group(static_cast<std::size_t>(spec.locations));
        std::vector<std::vector<int>> calm(static_cast<std::size_t>(spec.locations));
        for (int l : hot) {
            int take = 2;
            if (spare > 0 && rng.uniform_index(4) == 0) {
                take = 3;
                --spare;
            }
            for (int t = 0; t < take; ++t) group[static_cast<std::size_t>(l)].push_back(order[next++]);
        }
        // Remaining units go to the location with the fewest units so far.
        for (; next < order.size(); ++next) {
            int best = 0;
            for (int l = 1; l < spec.locations; ++l) {
                const auto size = [&](int x) {
                    return group[static_cast<std::size_t>(x)].size() + calm[static_cast<std::size_t>(x)].size();
                };
                if (size(l) < size(best)) best = l;
            }
            calm[static_cast<std::size_t>(best)].push_back(order[next]);
        }

        std::vector<int> location_of(static_cast<std::size_t>(spec.units), -1);
        auto add_day_mo = [&](int unit, int l, int from, int to) {
            inst.units[static_cast<std::size_t>(unit)].mos.push_back({unit, 0, l, hours(d, from), hours(d, to)});
            location_of[static_cast<std::size_t>(unit)] = l;
        };
        for (int l = 0; l < spec.locations; ++l) {
            for (int i : group[static_cast<std::size_t>(l)]) add_day_mo(i, l, hot_from, hot_to);
            const auto& ms = calm[static_cast<std::size_t>(l)];
            if (static_cast<int>(ms.size()) > left_slots + right_slots)
                throw InputError("too many units share a location on day " + std::to_string(d));
            int used_left = 0;
            int used_right = 0;
            for (int i : ms) {
                const bool left = used_right >= right_slots ||
                                  (used_left < left_slots && rng.uniform_index(2) == 0);
                if (left) {
                    const int from = hot_from - slot * ++used_left;
                    add_day_mo(i, l, from - grid_between(rng, 0, std::min(kSlack, from - kDayFrom)),
                               kCentre + grid_between(rng, 0, kSlack));
                } else {
                    const int to = hot_to + slot * ++used_right;
                    add_day_mo(i, l, kCentre - grid_between(rng, 0, kSlack),
                               to + grid_between(rng, 0, std::min(kSlack, kDayTo - to)));
                }
            }
        }

        for (int i = 0; i < spec.units; ++i) {
            const int start = grid_between(rng, 20 * 60, 23 * 60);
            const int end = grid_between(rng, 29 * 60, 30 * 60 + 30);
            const double end_hr = std::min(hours(d, end), inst.horizon_hr);
            inst.units[static_cast<std::size_t>(i)].mos.push_back(
                {i, 0, location_of[static_cast<std::size_t>(i)], hours(d, start), end_hr});
        }
    }

    renumber(inst);
    const auto problems = validate(inst);
    if (!problems.empty())
        throw InternalError("generated instance is invalid: " + problems.front().entity + ": " + problems.front().message);
    return inst;
}

double measure_conflict_pressure(const Instance& inst) {
    std::set<ShiftKey> day_shifts;
    for (const auto& u : inst.units)
        for (const auto& m : u.mos)
            if (is_daytime(m, inst)) day_shifts.insert(assign_shift(m, inst));
    if (day_shifts.empty()) return 0.0;

    const MasterResult master = solve_master(inst, {});
    if (master.status != MasterStatus::Optimal) throw InputError("master problem without cuts is not solvable");
    int hot = 0;
    for (const auto& [key, jobs] : build_jobs(*master.solution, inst))
        if (key.window == Window::Day && !schedule_with(jobs, 1)) ++hot;
    return static_cast<double>(hot) / static_cast<double>(day_shifts.size());
}

}  // namespace mslcp
