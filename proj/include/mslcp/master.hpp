#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "mslcp/instance.hpp"
#include "mslcp/solution.hpp"

namespace mslcp {

enum class MasterStatus { Optimal, Infeasible, TimeBudgetExceeded };

const char* to_string(MasterStatus s);

struct MasterOptions {
    std::optional<std::chrono::duration<double>> time_budget;
    long node_limit = 0;  // 0: unlimited
};

struct MasterResult {
    MasterStatus status = MasterStatus::Infeasible;
    std::optional<MasterSolution> solution;  // best found; always set when Optimal
    double lower_bound = 0.0;
    long nodes = 0;
};

// Exact minimization of night activities plus epsilon times all activities
// subject to the location limit, MO durations, location openings, interval
// coverage and every cut.
//
// Best-first branch and bound. Every constraint except coverage is handled
// as a no-good ("not all of these literals are 1"): MO type combinations
// that do not fit, groups of max_day_locations + 1 day locations (added
// lazily when the relaxation opens too many), and the cuts. The relaxation
// drops the no-goods and solves each (unit, type) coverage problem as a
// cheapest chain of MOs. Bounds come from a Lagrangian relaxation of the
// duration and cut no-goods (greedy ascent, then subgradient steps warm
// started from the parent). A violated no-good is split on the member m
// whose exclusion is cheapest into "m = 0" and "no-good without m", the
// latter also fixing m = 1 on units whose MOs are pairwise disjoint.
MasterResult solve_master(const Instance& inst, const std::vector<CutConstraint>& cuts,
                          const MasterOptions& options = {});

// Root bound of the search above, raised to the root bound without cuts.
// Never exceeds the optimum.
double master_lower_bound(const Instance& inst, const std::vector<CutConstraint>& cuts);

// Recomputes night_count, total_count, objective, y_day and y_night of a
// solution from its x.
void complete_solution(MasterSolution& sol, const Instance& inst);

}  // namespace mslcp
