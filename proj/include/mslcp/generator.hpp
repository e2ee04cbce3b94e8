#pragma once

#include <cstdint>
#include <vector>

#include "mslcp/instance.hpp"

namespace mslcp {

// Synthetic instance shape. Every unit has one daytime MO per day and one
// nighttime MO per night. A share `conflict_pressure` of the (location, day)
// daytime shifts is engineered to hold two or three units with the same
// short window, too short for two activities; all other daytime shifts get
// disjoint windows. Times lie on a 15-minute grid.
struct GeneratorSpec {
    int units = 3;
    int locations = 2;
    int days = 2;
    std::vector<MaintenanceType> types = default_types();
    double conflict_pressure = 0.25;
    std::uint64_t seed = 7;
    Policy policy;

    static std::vector<MaintenanceType> default_types();
};

// Throws InputError for invalid or unsatisfiable specs.
Instance generate_instance(const GeneratorSpec& spec);

// Share of daytime shifts whose jobs need two or more teams in the master
// solution without cuts.
double measure_conflict_pressure(const Instance& inst);

}  // namespace mslcp
