#include "mslcp/lbbd.hpp"

#include <algorithm>
#include <set>

#include "mslcp/error.hpp"

namespace mslcp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
}

}  // namespace

bool ShiftScope::contains(const ShiftKey& key) const {
    switch (kind) {
        case Kind::AllDay: return key.window == Window::Day;
        case Kind::All: return true;
        case Kind::Explicit: return std::find(shifts.begin(), shifts.end(), key) != shifts.end();
    }
    return false;
}

const char* to_string(RunStatus s) {
    switch (s) {
        case RunStatus::Optimal: return "OPTIMAL";
        case RunStatus::TimeLimit: return "TIME_LIMIT";
        case RunStatus::IterationLimit: return "ITERATION_LIMIT";
    }
    return "?";
}

std::uint64_t cut_seed(std::uint64_t base, int iteration, int shift_ordinal) {
    return base + 1000003ULL * static_cast<std::uint64_t>(iteration) + 7919ULL * static_cast<std::uint64_t>(shift_ordinal);
}

int count_violations(const MasterSolution& solution, const Instance& inst, const ShiftScope& scope) {
    int n = 0;
    for (const auto& [key, jobs] : build_jobs(solution, inst))
        if (scope.contains(key) && !schedule_with(jobs, inst.policy.teams_per_shift)) ++n;
    return n;
}

RunResult run(const Instance& inst, const RunOptions& options) {
    if (options.time_limit && options.time_limit->count() <= 0) throw InputError("time limit must be positive");
    const auto started = Clock::now();
    const int teams = inst.policy.teams_per_shift;

    RunResult result;
    std::set<CutConstraint> known;
    std::optional<double> previous_objective;
    result.status = RunStatus::TimeLimit;

    for (int kappa = 1;; ++kappa) {
        if (options.time_limit && seconds_since(started) >= options.time_limit->count()) break;
        if (options.max_iterations > 0 && kappa > options.max_iterations) {
            result.status = RunStatus::IterationLimit;
            break;
        }
        const auto iter_start = Clock::now();
        IterationRecord rec;
        rec.iteration = kappa;

        MasterOptions mopts;
        mopts.time_budget = options.master_budget;
        const auto master_start = Clock::now();
        MasterResult master = solve_master(inst, result.cuts, mopts);
        rec.times.master_s = seconds_since(master_start);
        if (master.status == MasterStatus::Infeasible)
            throw MasterInfeasible("master problem is infeasible under " + std::to_string(result.cuts.size()) + " cuts",
                                   result.cuts);
        if (master.status == MasterStatus::TimeBudgetExceeded) {
            if (!result.final_solution) result.final_solution = master.solution;
            break;
        }
        const MasterSolution& sol = *master.solution;
        if (previous_objective && sol.objective < *previous_objective - 1e-9)
            throw InternalError("master objective decreased between iterations");
        previous_objective = sol.objective;
        rec.master_objective = sol.objective;
        rec.night_count = sol.night_count;
        rec.total_count = sol.total_count;

        const ShiftJobs shifts = build_jobs(sol, inst);
        AppOracle oracle(teams);
        int ordinal = 0;
        for (const auto& [key, jobs] : shifts) {
            const int this_ordinal = ordinal++;
            if (!options.scope.contains(key)) continue;
            const auto app_start = Clock::now();
            const bool infeasible = oracle.infeasible(jobs);
            rec.times.app_s += seconds_since(app_start);
            if (!infeasible) continue;

            ++rec.violated_shifts;
            rec.violated.push_back(key);
            CutStrategy strategy = options.strategy;
            strategy.seed = cut_seed(options.strategy.seed, kappa, this_ordinal);
            const auto cut_start = Clock::now();
            const GeneratedCuts generated = generate(strategy, jobs, oracle, false);
            rec.times.cutgen_s += seconds_since(cut_start);
            if (generated.fell_back) ++rec.fallbacks;
            for (const auto& subset : generated.cuts) {
                CutConstraint cut = to_cut(jobs, subset);
                if (known.insert(cut).second) {
                    result.cuts.push_back(std::move(cut));
                    ++rec.cuts_added;
                }
            }
        }
        if (rec.violated_shifts > 0 && rec.cuts_added == 0)
            throw InternalError("violated shifts produced no new cut in iteration " + std::to_string(kappa));

        rec.cumulative_cuts = static_cast<int>(result.cuts.size());
        rec.elapsed_s = seconds_since(started);
        rec.times.other_s =
            std::max(0.0, seconds_since(iter_start) - rec.times.master_s - rec.times.app_s - rec.times.cutgen_s);
        result.final_solution = sol;
        result.history.push_back(rec);
        if (options.on_iteration) options.on_iteration(result.history.back());
        if (rec.cuts_added == 0) {
            result.status = RunStatus::Optimal;
            break;
        }
    }

    if (result.final_solution) {
        result.jobs = build_jobs(*result.final_solution, inst);
        for (const auto& [key, jobs] : result.jobs) {
            auto schedule = min_teams(jobs, static_cast<int>(jobs.size()));
            if (!schedule) throw InternalError("no schedule with one team per job for shift " + to_string(key, inst));
            result.schedules[key] = std::move(*schedule);
        }
    }
    return result;
}

}  // namespace mslcp
