#pragma once

// Test-only reference implementations. They work from the instance data and
// the problem definition directly and share no algorithmic code with the
// library; only the plain data types are reused.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mslcp/instance.hpp"
#include "mslcp/shift.hpp"
#include "mslcp/solution.hpp"

namespace oracle {

using mslcp::CutConstraint;
using mslcp::Instance;
using mslcp::Job;
using mslcp::MasterSolution;

// --- activity planning ----------------------------------------------------

// Tries every partition of the jobs into teams and every order within each
// team, starting each job as early as possible. Returns the smallest team
// count up to max_teams, or nullopt.
std::optional<int> min_teams(const std::vector<Job>& jobs, int max_teams);

bool infeasible(const std::vector<Job>& jobs, int teams);

// Preemptive single-team relaxation solved with Edmonds-Karp on an
// adjacency matrix: max units of work that fit into minute slots.
int preemptive_max_flow(const std::vector<Job>& jobs);

// --- master problem -------------------------------------------------------

bool daytime(double end_hr, const Instance& inst);

// Empty when x satisfies location limit, durations, openings, coverage and
// every cut; otherwise the first violated rule.
std::string check_solution(const Instance& inst, const std::vector<mslcp::Assignment>& x,
                           const std::vector<CutConstraint>& cuts);

struct Optimum {
    bool feasible = false;
    int night = 0;
    int total = 0;
    double objective = 0.0;
    std::vector<mslcp::Assignment> x;
};

// Enumerates every location opening y (within the limit) and every x.
Optimum brute_master(const Instance& inst, const std::vector<CutConstraint>& cuts);

// Jobs of x per shift by the release and deadline rules.
std::map<mslcp::ShiftKey, std::vector<Job>> jobs_of(const Instance& inst, const std::vector<mslcp::Assignment>& x);

// Best x whose daytime shifts (or all shifts) fit into teams_per_shift.
Optimum brute_capacitated(const Instance& inst, bool night_shifts_too = false);

}  // namespace oracle
