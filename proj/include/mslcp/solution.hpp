#pragma once

#include <compare>
#include <string>
#include <vector>

namespace mslcp {

// x_ijk = 1: an activity of `type` is performed on `unit` during MO `mo_index`.
struct Assignment {
    int unit = 0;
    int mo_index = 0;
    int type = 0;

    auto operator<=>(const Assignment&) const = default;
};

struct MasterSolution {
    std::vector<Assignment> x;  // sorted
    std::vector<int> y_day;     // locations opened for daytime maintenance
    std::vector<int> y_night;   // locations with nighttime activity
    int night_count = 0;
    int total_count = 0;
    double objective = 0.0;  // night_count + epsilon * total_count
    double lower_bound = 0.0;

    bool operator==(const MasterSolution&) const = default;
};

// One job of a cut: the activity types of `types` on `unit` at MO `mo_index`.
struct CutMember {
    int unit = 0;
    int mo_index = 0;
    std::vector<int> types;  // sorted, nonempty

    auto operator<=>(const CutMember&) const = default;
};

// A set of jobs that cannot all be performed as given. Translated into the
// master as sum over members and their types of (1 - x_ijk) >= 1.
struct CutConstraint {
    std::vector<CutMember> members;  // sorted, nonempty

    auto operator<=>(const CutConstraint&) const = default;
};

// Sorts members and type lists so that equal sets compare equal.
CutConstraint canonical(CutConstraint cut);

bool is_satisfied(const CutConstraint& cut, const MasterSolution& sol);

std::string to_string(const CutConstraint& cut);

}  // namespace mslcp
