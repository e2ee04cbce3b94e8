#include "mslcp/cuts.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "mslcp/app.hpp"
#include "mslcp/error.hpp"
#include "mslcp/rapp.hpp"

namespace mslcp {

namespace {

std::vector<Job> gather(std::span<const Job> jobs, const std::vector<int>& subset) {
    std::vector<Job> out;
    out.reserve(subset.size());
    for (int q : subset) out.push_back(jobs[static_cast<std::size_t>(q)]);
    return out;
}

std::vector<int> all_indices(std::size_t n) {
    std::vector<int> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i);
    return v;
}

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

int take_random(std::vector<int>& pool, CutRng& rng) {
    const auto i = rng.uniform_index(pool.size());
    const int q = pool[i];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
    return q;
}

JobSubsets run_heuristic(CutProcedure kind, int count, std::uint64_t seed, std::span<const Job> jobs,
                         AppOracle& oracle) {
    JobSubsets out;
    std::set<std::vector<int>> seen;
    for (int c = 0; c < std::max(1, count); ++c) {
        const auto s = seed + static_cast<std::uint64_t>(c);
        auto cut = kind == CutProcedure::BasicHeuristic ? basic_heuristic(jobs, oracle, s)
                                                        : binary_search_heuristic(jobs, oracle, s);
        if (seen.insert(cut).second) out.push_back(std::move(cut));
    }
    return out;
}

}  // namespace

std::string to_string(CutProcedure p) {
    switch (p) {
        case CutProcedure::Naive: return "naive";
        case CutProcedure::BasicHeuristic: return "basic";
        case CutProcedure::BinarySearchHeuristic: return "bsh";
        case CutProcedure::MinCut: return "mincut";
    }
    return "?";
}

std::optional<CutProcedure> parse_procedure(std::string_view text) {
    std::string t;
    for (char c : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (t == "naive") return CutProcedure::Naive;
    if (t == "basic") return CutProcedure::BasicHeuristic;
    if (t == "bsh" || t == "binary") return CutProcedure::BinarySearchHeuristic;
    if (t == "mincut" || t == "min-cut") return CutProcedure::MinCut;
    return std::nullopt;
}

std::string describe(const CutStrategy& s) {
    const bool heuristic =
        s.kind == CutProcedure::BasicHeuristic || s.kind == CutProcedure::BinarySearchHeuristic;
    return heuristic ? to_string(s.kind) + "(" + std::to_string(s.cuts_per_call) + ")" : to_string(s.kind);
}

std::size_t CutRng::uniform_index(std::size_t n) {
    if (n == 0) throw ContractError("uniform_index over an empty range");
    const std::uint64_t m = n;
    const std::uint64_t threshold = (0 - m) % m;
    for (;;) {
        const std::uint64_t r = engine_();
        if (r >= threshold) return static_cast<std::size_t>(r % m);
    }
}

bool AppOracle::infeasible(std::span<const Job> jobs, const std::vector<int>& subset) {
    const auto part = gather(jobs, subset);
    return infeasible(part);
}

bool AppOracle::infeasible(std::span<const Job> jobs) {
    ++calls_;
    // A job that does not fit its own window cannot be scheduled at all.
    for (const auto& j : jobs)
        if (j.duration_min > 0 && j.deadline_min - j.release_min < j.duration_min) return true;
    return !schedule_with(jobs, teams_);
}

JobSubsets naive(std::span<const Job> jobs) {
    return {all_indices(jobs.size())};
}

std::vector<int> basic_heuristic(std::span<const Job> jobs, AppOracle& oracle, std::uint64_t seed) {
    CutRng rng(seed);
    std::vector<int> pool = all_indices(jobs.size());
    std::vector<int> picked;
    while (!pool.empty()) {
        picked.push_back(take_random(pool, rng));
        if (oracle.infeasible(jobs, sorted(picked))) return sorted(picked);
    }
    throw ContractError("basic_heuristic: the full job set is feasible");
}

std::vector<int> binary_search_heuristic(std::span<const Job> jobs, AppOracle& oracle, std::uint64_t seed,
                                         const BinarySearchObserver& observer) {
    CutRng rng(seed);
    std::vector<int> a;
    std::vector<int> b = all_indices(jobs.size());
    if (b.empty()) throw ContractError("binary_search_heuristic: no jobs");
    if (observer) observer(a, b);
    while (b.size() > 1) {
        std::vector<int> left;
        const std::size_t h = (b.size() + 1) / 2;
        for (std::size_t i = 0; i < h; ++i) left.push_back(take_random(b, rng));
        std::vector<int> probe = a;
        probe.insert(probe.end(), left.begin(), left.end());
        if (oracle.infeasible(jobs, sorted(probe))) {
            b = sorted(std::move(left));
        } else {
            a = sorted(std::move(probe));
        }
        if (observer) observer(a, b);
    }
    a.insert(a.end(), b.begin(), b.end());
    return sorted(std::move(a));
}

MinCutOutcome min_cut(std::span<const Job> jobs, int teams) {
    const auto cert = solve_rapp(jobs, teams);
    MinCutOutcome out;
    out.fallback_required = cert.feasible;
    out.cuts = cert.cuts;
    return out;
}

GeneratedCuts generate(const CutStrategy& strategy, std::span<const Job> jobs, AppOracle& oracle, bool verify) {
    if (jobs.empty()) throw ContractError("cut generation needs at least one job");
    if (verify && !oracle.infeasible(jobs)) throw ContractError("cut generation called on a feasible job set");

    GeneratedCuts out;
    out.used = strategy.kind;
    switch (strategy.kind) {
        case CutProcedure::Naive:
            out.cuts = naive(jobs);
            return out;
        case CutProcedure::BasicHeuristic:
        case CutProcedure::BinarySearchHeuristic:
            out.cuts = run_heuristic(strategy.kind, strategy.cuts_per_call, strategy.seed, jobs, oracle);
            return out;
        case CutProcedure::MinCut: {
            bool fall_back = false;
            try {
                auto r = min_cut(jobs, oracle.teams());
                fall_back = r.fallback_required;
                out.cuts = std::move(r.cuts);
            } catch (const Unsupported&) {
                fall_back = true;
            }
            if (!fall_back) return out;
            if (strategy.fallback == CutProcedure::MinCut)
                throw ContractError("the min-cut procedure cannot be its own fallback");
            CutStrategy next = strategy;
            next.kind = strategy.fallback;
            next.cuts_per_call = strategy.fallback_cuts;
            out = generate(next, jobs, oracle, false);
            out.fell_back = true;
            return out;
        }
    }
    throw InternalError("unknown cut procedure");
}

CutConstraint to_cut(std::span<const Job> jobs, const std::vector<int>& subset) {
    CutConstraint cut;
    for (int q : subset) cut.members.push_back(to_cut_member(jobs[static_cast<std::size_t>(q)]));
    return canonical(std::move(cut));
}

}  // namespace mslcp
