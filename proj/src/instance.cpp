#include "mslcp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "mslcp/error.hpp"

namespace mslcp {

namespace {

void hash_combine(std::size_t& seed, std::size_t value) {
    seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

template <class T>
void hash_value(std::size_t& seed, const T& value) {
    hash_combine(seed, std::hash<T>{}(value));
}

std::string unit_label(const Instance& inst, int unit) {
    const auto& name = inst.units[static_cast<std::size_t>(unit)].name;
    return name.empty() ? "unit " + std::to_string(unit) : "unit " + name;
}

}  // namespace

const MaintenanceOpportunity& Instance::mo(int unit, int index) const {
    if (unit < 0 || unit >= static_cast<int>(units.size()))
        throw InputError("unknown unit " + std::to_string(unit));
    const auto& mos = units[static_cast<std::size_t>(unit)].mos;
    if (index < 1 || index > static_cast<int>(mos.size()))
        throw InputError("unknown MO " + std::to_string(index) + " of unit " + std::to_string(unit));
    return mos[static_cast<std::size_t>(index - 1)];
}

int Instance::location_index(std::string_view name) const {
    for (std::size_t l = 0; l < locations.size(); ++l)
        if (locations[l] == name) return static_cast<int>(l);
    return -1;
}

std::size_t Instance::mo_count() const {
    std::size_t n = 0;
    for (const auto& u : units) n += u.mos.size();
    return n;
}

int Instance::min_type_duration() const {
    int best = std::numeric_limits<int>::max();
    for (const auto& t : types) best = std::min(best, t.duration_min);
    return types.empty() ? 0 : best;
}

void renumber(Instance& inst) {
    for (std::size_t i = 0; i < inst.units.size(); ++i) {
        auto& mos = inst.units[i].mos;
        for (std::size_t j = 0; j < mos.size(); ++j) {
            mos[j].unit = static_cast<int>(i);
            mos[j].index = static_cast<int>(j + 1);
        }
    }
}

std::size_t content_hash(const Instance& inst) {
    std::size_t seed = 0;
    hash_value(seed, inst.horizon_hr);
    for (const auto& l : inst.locations) hash_value(seed, l);
    for (const auto& t : inst.types) {
        hash_value(seed, t.id);
        hash_value(seed, t.name);
        hash_value(seed, t.duration_min);
        hash_value(seed, t.interval_hr);
    }
    for (const auto& u : inst.units) {
        hash_value(seed, u.name);
        for (double b : u.initial_age_hr) hash_value(seed, b);
        for (const auto& m : u.mos) {
            hash_value(seed, m.location);
            hash_value(seed, m.start_hr);
            hash_value(seed, m.end_hr);
        }
    }
    hash_value(seed, inst.policy.day_start);
    hash_value(seed, inst.policy.night_start);
    hash_value(seed, inst.policy.max_day_locations);
    hash_value(seed, inst.policy.teams_per_shift);
    hash_value(seed, inst.policy.epsilon);
    return seed;
}

int to_minutes(double hours) {
    return static_cast<int>(std::llround(hours * 60.0));
}

double time_of_day(double hours) {
    double r = std::fmod(hours, 24.0);
    if (r < 0) r += 24.0;
    return r;
}

bool is_daytime_end(double end_hr, const Policy& policy) {
    const double tod = time_of_day(end_hr);
    return policy.day_start <= tod && tod < policy.night_start;
}

bool is_daytime(const MaintenanceOpportunity& mo, const Instance& inst) {
    return is_daytime_end(mo.end_hr, inst.policy);
}

std::vector<int> successor_window(const Instance& inst, int unit, int mo_index, int type) {
    if (unit < 0 || unit >= static_cast<int>(inst.units.size()))
        throw InputError("unknown unit " + std::to_string(unit));
    if (type < 0 || type >= static_cast<int>(inst.types.size()))
        throw InputError("unknown maintenance type " + std::to_string(type));
    const auto& u = inst.units[static_cast<std::size_t>(unit)];
    const double interval = inst.types[static_cast<std::size_t>(type)].interval_hr;

    std::vector<int> window;
    if (mo_index == 0) {
        const double age = static_cast<std::size_t>(type) < u.initial_age_hr.size()
                               ? u.initial_age_hr[static_cast<std::size_t>(type)]
                               : 0.0;
        for (const auto& p : u.mos)
            if (p.start_hr <= interval + age) window.push_back(p.index);
        return window;
    }
    const auto& from = inst.mo(unit, mo_index);
    for (const auto& p : u.mos)
        if (from.end_hr < p.start_hr && p.start_hr <= from.end_hr + interval) window.push_back(p.index);
    return window;
}

std::vector<Violation> validate(const Instance& inst) {
    std::vector<Violation> out;
    auto add = [&](std::string entity, std::string message) {
        out.push_back({std::move(entity), std::move(message)});
    };

    if (!(inst.horizon_hr > 0)) add("horizon", "horizon_hr must be positive");

    std::set<std::string> names;
    for (const auto& l : inst.locations)
        if (!names.insert(l).second) add("location " + l, "duplicate location name");

    std::set<int> type_ids;
    for (const auto& t : inst.types) {
        const std::string who = "type " + std::to_string(t.id);
        if (!type_ids.insert(t.id).second) add(who, "duplicate type id");
        if (t.duration_min < 1) add(who, "duration_min must be >= 1");
        if (!(t.interval_hr > 0)) add(who, "interval_hr must be > 0");
    }
    if (inst.types.empty()) add("types", "at least one maintenance type is required");

    const int n_loc = static_cast<int>(inst.locations.size());
    for (std::size_t i = 0; i < inst.units.size(); ++i) {
        const auto& u = inst.units[i];
        const int unit = static_cast<int>(i);
        if (u.initial_age_hr.size() != inst.types.size())
            add(unit_label(inst, unit), "initial_age_hr needs one entry per type");
        for (std::size_t k = 0; k < u.initial_age_hr.size(); ++k)
            if (!(u.initial_age_hr[k] >= 0))
                add("(" + std::to_string(unit) + ", " + std::to_string(k) + ")", "initial age must be >= 0");

        for (std::size_t j = 0; j < u.mos.size(); ++j) {
            const auto& m = u.mos[j];
            const std::string who = "MO (" + std::to_string(unit) + ", " + std::to_string(j + 1) + ")";
            if (m.unit != unit || m.index != static_cast<int>(j + 1))
                add(who, "unit/index back-reference does not match position");
            if (m.location < 0 || m.location >= n_loc) add(who, "unknown location");
            if (!(m.start_hr < m.end_hr)) add(who, "start_hr must be < end_hr");
            if (m.start_hr < 0) add(who, "start_hr must be >= 0");
            if (m.end_hr > inst.horizon_hr) add(who, "end_hr exceeds the horizon");
            if (j > 0 && u.mos[j - 1].start_hr > m.start_hr) add(who, "MOs must be sorted by start_hr");
        }
    }

    const auto& p = inst.policy;
    if (!(p.day_start < p.night_start)) add("policy", "day_start must be < night_start");
    if (p.day_start < 0 || p.night_start > 24) add("policy", "day/night thresholds must lie in [0, 24]");
    if (p.max_day_locations < 0) add("policy", "max_day_locations must be >= 0");
    if (p.teams_per_shift < 1) add("policy", "teams_per_shift must be >= 1");
    if (!(p.epsilon >= 0)) add("policy", "epsilon must be >= 0");
    return out;
}

}  // namespace mslcp
