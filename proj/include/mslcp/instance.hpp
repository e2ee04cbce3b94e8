#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mslcp {

// A recurring maintenance activity class: fixed duration, maximum interval
// between two consecutive occurrences.
struct MaintenanceType {
    int id = 0;
    std::string name;
    int duration_min = 0;
    double interval_hr = 0.0;

    bool operator==(const MaintenanceType&) const = default;
};

// A standstill of one unit at a location during which maintenance may be
// scheduled. `index` is 1-based within the unit and follows start order.
struct MaintenanceOpportunity {
    int unit = 0;
    int index = 0;
    int location = 0;
    double start_hr = 0.0;
    double end_hr = 0.0;

    bool operator==(const MaintenanceOpportunity&) const = default;
};

struct Unit {
    std::string name;
    std::vector<MaintenanceOpportunity> mos;
    // Hours since the last activity of each type at the start of the horizon,
    // one entry per instance type.
    std::vector<double> initial_age_hr;

    bool operator==(const Unit&) const = default;
};

struct Policy {
    double day_start = 7.0;
    double night_start = 19.0;
    int max_day_locations = 5;
    int teams_per_shift = 1;
    double epsilon = 0.001;

    bool operator==(const Policy&) const = default;
};

// Problem data of one maintenance scheduling and location choice instance.
// Units, locations and types are referenced by their position in the
// respective vectors. Treated as immutable once built.
struct Instance {
    double horizon_hr = 168.0;
    std::vector<std::string> locations;
    std::vector<MaintenanceType> types;
    std::vector<Unit> units;
    Policy policy;

    bool operator==(const Instance&) const = default;

    const MaintenanceOpportunity& mo(int unit, int index) const;
    int location_index(std::string_view name) const;
    std::size_t mo_count() const;
    int min_type_duration() const;
};

// Fills the unit/index back-references of every MO from its position.
void renumber(Instance& inst);

std::size_t content_hash(const Instance& inst);

// Hours are converted to whole minutes by rounding to the nearest minute.
int to_minutes(double hours);

// Positive remainder of `hours` modulo 24.
double time_of_day(double hours);

bool is_daytime_end(double end_hr, const Policy& policy);
bool is_daytime(const MaintenanceOpportunity& mo, const Instance& inst);

// Indices p of the unit's MOs that may hold the next activity of `type`
// after MO `mo_index`: e_j < s_p <= e_j + o_k. For mo_index == 0 this is the
// opening window s_p <= o_k + b_ik.
std::vector<int> successor_window(const Instance& inst, int unit, int mo_index, int type);

struct Violation {
    std::string entity;
    std::string message;
};

std::vector<Violation> validate(const Instance& inst);

}  // namespace mslcp
