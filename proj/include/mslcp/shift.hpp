#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mslcp/instance.hpp"
#include "mslcp/solution.hpp"

namespace mslcp {

enum class Window { Day, Night };

// A maintenance shift: location, day or night window, and the calendar day
// on which the shift starts. Day d covers [24d, 24(d+1)) hours. Night MOs
// ending before the first night start belong to reference day -1.
struct ShiftKey {
    int location = 0;
    Window window = Window::Day;
    int reference_day = 0;

    auto operator<=>(const ShiftKey&) const = default;
};

std::string to_string(const ShiftKey& key, const Instance& inst);

// Inverse of to_string: "<location>/<day|night>/<reference day>". Throws
// InputError on malformed text or unknown locations.
ShiftKey parse_shift_key(std::string_view text, const Instance& inst);

// The activities on one unit during one MO, performed back to back.
// Times are minutes from the start of the horizon.
struct Job {
    int unit = 0;
    int mo_index = 0;
    std::vector<int> types;
    int release_min = 0;
    int deadline_min = 0;
    int duration_min = 0;
    ShiftKey shift;

    bool operator==(const Job&) const = default;
};

using ShiftJobs = std::map<ShiftKey, std::vector<Job>>;

ShiftKey assign_shift(const MaintenanceOpportunity& mo, const Instance& inst);

struct ShiftBounds {
    int start_min = 0;
    int end_min = 0;
};

ShiftBounds shift_bounds(const ShiftKey& key, const Instance& inst);

// Release and deadline of a job on `mo` with the given (nonempty) types.
// Throws InternalError if the resulting window is shorter than the job.
Job make_job(const Instance& inst, const MaintenanceOpportunity& mo, std::vector<int> types);

// Groups the solution's activities into one job per used MO, keyed by shift.
// Shifts without jobs are absent. Jobs within a shift are ordered by
// (unit, mo_index).
ShiftJobs build_jobs(const MasterSolution& solution, const Instance& inst);

CutMember to_cut_member(const Job& job);

}  // namespace mslcp
