#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mslcp/app.hpp"
#include "mslcp/cuts.hpp"
#include "mslcp/instance.hpp"
#include "mslcp/master.hpp"
#include "mslcp/shift.hpp"
#include "mslcp/solution.hpp"

namespace mslcp {

// Shifts whose team capacity is enforced.
struct ShiftScope {
    enum class Kind { AllDay, All, Explicit };
    Kind kind = Kind::AllDay;
    std::vector<ShiftKey> shifts;  // Explicit only

    bool contains(const ShiftKey& key) const;
};

struct PhaseTimes {
    double master_s = 0.0;
    double app_s = 0.0;
    double cutgen_s = 0.0;
    double other_s = 0.0;

    double total() const { return master_s + app_s + cutgen_s + other_s; }
};

struct IterationRecord {
    int iteration = 0;  // 1-based
    double master_objective = 0.0;
    int night_count = 0;
    int total_count = 0;
    int violated_shifts = 0;
    int cuts_added = 0;
    int cumulative_cuts = 0;
    PhaseTimes times;
    double elapsed_s = 0.0;  // since the start of the run
    int fallbacks = 0;       // shifts where min-cut handed over to its fallback
    std::vector<ShiftKey> violated;
};

enum class RunStatus { Optimal, TimeLimit, IterationLimit };

const char* to_string(RunStatus s);

struct RunResult {
    RunStatus status = RunStatus::Optimal;
    // Master solution of the last iteration; empty only if the first master
    // solve ran out of its budget without an incumbent.
    std::optional<MasterSolution> final_solution;
    ShiftJobs jobs;  // jobs of final_solution
    std::map<ShiftKey, ShiftSchedule> schedules;  // minimum-team schedule of every shift
    std::vector<IterationRecord> history;
    std::vector<CutConstraint> cuts;  // in insertion order
};

struct RunOptions {
    ShiftScope scope;
    CutStrategy strategy;
    std::optional<std::chrono::duration<double>> time_limit;
    // Per master solve; exceeding it ends the run with TimeLimit.
    std::optional<std::chrono::duration<double>> master_budget;
    int max_iterations = 0;  // 0: unlimited
    std::function<void(const IterationRecord&)> on_iteration;
};

// The master became infeasible under the accumulated cuts.
class MasterInfeasible : public std::runtime_error {
public:
    MasterInfeasible(const std::string& what, std::vector<CutConstraint> cuts)
        : std::runtime_error(what), cuts(std::move(cuts)) {}
    std::vector<CutConstraint> cuts;
};

RunResult run(const Instance& inst, const RunOptions& options);

// In-scope shifts of `solution` needing more than teams_per_shift teams.
int count_violations(const MasterSolution& solution, const Instance& inst, const ShiftScope& scope);

// Seed handed to cut generation for one violated shift.
std::uint64_t cut_seed(std::uint64_t base, int iteration, int shift_ordinal);

}  // namespace mslcp
