#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mslcp/instance.hpp"
#include "mslcp/shift.hpp"

namespace mslcp {

struct ScheduledJob {
    int job = 0;  // index into the job list the schedule was built for
    int start_min = 0;
    int end_min = 0;

    bool operator==(const ScheduledJob&) const = default;
};

// Per team, the jobs it performs in start order.
struct ShiftSchedule {
    int teams_used = 0;
    std::vector<std::vector<ScheduledJob>> teams;

    bool operator==(const ShiftSchedule&) const = default;
};

// Number of moments per team that always suffices for a shift:
// min(ceil(shift length / shortest type duration), |Q|).
int moment_bound(int job_count, int shift_length_min, int min_duration_min);
int moment_bound(std::span<const Job> jobs, const Instance& inst);

// Throws InputError for jobs with a nonpositive duration or a window shorter
// than the duration.
void check_jobs(std::span<const Job> jobs);

// Feasibility of a non-preemptive schedule on `teams` identical teams.
// Fills `schedule` when feasible and it is non-null.
bool schedule_with(std::span<const Job> jobs, int teams, ShiftSchedule* schedule = nullptr);

// Minimum number of teams (at most max_teams) and a schedule using it;
// nullopt when more than max_teams would be needed. Teams are ordered by
// their first start, each team's jobs by start.
std::optional<ShiftSchedule> min_teams(std::span<const Job> jobs, int max_teams);

// Checks every ShiftSchedule invariant against the jobs; returns a
// description of the first violation, or an empty string.
std::string check_schedule(std::span<const Job> jobs, const ShiftSchedule& schedule);

}  // namespace mslcp
