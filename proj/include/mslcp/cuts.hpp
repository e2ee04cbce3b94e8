#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mslcp/shift.hpp"
#include "mslcp/solution.hpp"

namespace mslcp {

enum class CutProcedure { Naive, BasicHeuristic, BinarySearchHeuristic, MinCut };

std::string to_string(CutProcedure p);
// Accepts naive, basic, bsh, binary, mincut, min-cut and the to_string forms.
std::optional<CutProcedure> parse_procedure(std::string_view text);

struct CutStrategy {
    CutProcedure kind = CutProcedure::MinCut;
    int cuts_per_call = 1;  // heuristics only
    std::uint64_t seed = 0;
    // Used when the min-cut procedure cannot certify the infeasibility.
    CutProcedure fallback = CutProcedure::BinarySearchHeuristic;
    int fallback_cuts = 1;
};

std::string describe(const CutStrategy& s);

// Uniform choices for the heuristics: std::mt19937_64, and an index in
// [0, n) drawn by rejecting raw values below 2^64 mod n, then taking the
// remainder. Reimplementations that follow both rules replay our runs.
class CutRng {
public:
    explicit CutRng(std::uint64_t seed) : engine_(seed) {}
    std::size_t uniform_index(std::size_t n);

private:
    std::mt19937_64 engine_;
};

// Counts APP queries; a subset is infeasible when it needs more than
// `teams` teams or holds a job longer than its window.
class AppOracle {
public:
    explicit AppOracle(int teams) : teams_(teams) {}

    bool infeasible(std::span<const Job> jobs, const std::vector<int>& subset);
    bool infeasible(std::span<const Job> jobs);
    int teams() const { return teams_; }
    long calls() const { return calls_; }

private:
    int teams_;
    long calls_ = 0;
};

// Job index subsets of the input; each sorted ascending.
using JobSubsets = std::vector<std::vector<int>>;

JobSubsets naive(std::span<const Job> jobs);

// Moves uniformly drawn jobs into an initially empty set until it is
// infeasible and returns that set.
std::vector<int> basic_heuristic(std::span<const Job> jobs, AppOracle& oracle, std::uint64_t seed);

// Called with (A, B) at every loop-iteration boundary, including before the
// first iteration and after the last.
using BinarySearchObserver = std::function<void(const std::vector<int>& a, const std::vector<int>& b)>;

std::vector<int> binary_search_heuristic(std::span<const Job> jobs, AppOracle& oracle, std::uint64_t seed,
                                         const BinarySearchObserver& observer = {});

struct MinCutOutcome {
    bool fallback_required = false;  // flow relaxation is feasible
    JobSubsets cuts;
};

// Throws Unsupported unless teams == 1.
MinCutOutcome min_cut(std::span<const Job> jobs, int teams);

struct GeneratedCuts {
    JobSubsets cuts;  // distinct
    CutProcedure used = CutProcedure::Naive;
    bool fell_back = false;
};

// Dispatches to the procedure of `strategy`. Heuristics run cuts_per_call
// times with seeds seed, seed + 1, ...; duplicates are dropped. Throws
// ContractError when `verify` is set and the jobs are not infeasible.
GeneratedCuts generate(const CutStrategy& strategy, std::span<const Job> jobs, AppOracle& oracle, bool verify = true);

CutConstraint to_cut(std::span<const Job> jobs, const std::vector<int>& subset);

}  // namespace mslcp
