#include "mslcp/app.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

#include "mslcp/error.hpp"

namespace mslcp {

namespace {

// Depth-first search over job sequences. Each step puts the chosen job on
// the team that frees up first, as early as its release allows; this list
// scheduling over all sequences is complete for identical teams. Only jobs
// that can start before the earliest possible completion of any pending job
// are tried next (active-schedule dominance), in deadline order.
class TeamSearch {
public:
    TeamSearch(std::span<const Job> jobs, int teams) : jobs_(jobs), teams_(teams) {
        order_.resize(jobs.size());
        std::iota(order_.begin(), order_.end(), 0);
        std::sort(order_.begin(), order_.end(), [&](int a, int b) {
            const auto& ja = jobs_[static_cast<std::size_t>(a)];
            const auto& jb = jobs_[static_cast<std::size_t>(b)];
            if (ja.deadline_min != jb.deadline_min) return ja.deadline_min < jb.deadline_min;
            if (ja.release_min != jb.release_min) return ja.release_min < jb.release_min;
            return a < b;
        });
        scheduled_.assign(jobs.size(), false);
        int earliest = std::numeric_limits<int>::max();
        for (const auto& j : jobs) earliest = std::min(earliest, j.release_min);
        if (jobs.empty()) earliest = 0;
        for (int t = 0; t < teams; ++t) free_.push_back({earliest, t});
    }

    bool run() { return dfs(0); }

    ShiftSchedule schedule() const {
        std::vector<std::vector<ScheduledJob>> by_team(static_cast<std::size_t>(teams_));
        for (const auto& p : placements_) by_team[static_cast<std::size_t>(p.team)].push_back(p.job);
        std::vector<std::vector<ScheduledJob>> used;
        for (auto& t : by_team) {
            if (t.empty()) continue;
            std::sort(t.begin(), t.end(), [](const ScheduledJob& a, const ScheduledJob& b) {
                return a.start_min != b.start_min ? a.start_min < b.start_min : a.job < b.job;
            });
            used.push_back(std::move(t));
        }
        std::sort(used.begin(), used.end(), [](const auto& a, const auto& b) {
            const auto& fa = a.front();
            const auto& fb = b.front();
            return fa.start_min != fb.start_min ? fa.start_min < fb.start_min : fa.job < fb.job;
        });
        ShiftSchedule out;
        out.teams_used = static_cast<int>(used.size());
        out.teams = std::move(used);
        return out;
    }

private:
    struct TeamState {
        int free_at;
        int team;
        auto operator<=>(const TeamState&) const = default;
    };
    struct Placement {
        ScheduledJob job;
        int team;
    };

    const Job& job(int i) const { return jobs_[static_cast<std::size_t>(i)]; }

    std::string state_key(int min_release) const {
        std::string key(scheduled_.size(), '0');
        for (std::size_t i = 0; i < scheduled_.size(); ++i)
            if (scheduled_[i]) key[i] = '1';
        for (const auto& t : free_) {
            const int f = std::max(t.free_at, min_release);
            key.append(reinterpret_cast<const char*>(&f), sizeof f);
        }
        return key;
    }

    bool dfs(std::size_t placed) {
        if (placed == jobs_.size()) return true;

        const int fmin = free_.front().free_at;
        int ect = std::numeric_limits<int>::max();
        int min_release = std::numeric_limits<int>::max();
        int max_deadline = std::numeric_limits<int>::min();
        long long work = 0;
        for (int q : order_) {
            if (scheduled_[static_cast<std::size_t>(q)]) continue;
            const auto& j = job(q);
            const int est = std::max(fmin, j.release_min);
            if (est + j.duration_min > j.deadline_min) return false;
            ect = std::min(ect, est + j.duration_min);
            min_release = std::min(min_release, j.release_min);
            max_deadline = std::max(max_deadline, j.deadline_min);
            work += j.duration_min;
        }
        long long capacity = 0;
        for (const auto& t : free_) capacity += std::max(0, max_deadline - std::max(t.free_at, min_release));
        if (work > capacity) return false;

        const std::string key = state_key(min_release);
        if (failed_.count(key)) return false;

        for (int q : order_) {
            if (scheduled_[static_cast<std::size_t>(q)]) continue;
            const auto& j = job(q);
            const int start = std::max(fmin, j.release_min);
            if (start >= ect) continue;

            const TeamState saved = free_.front();
            scheduled_[static_cast<std::size_t>(q)] = true;
            placements_.push_back({{q, start, start + j.duration_min}, saved.team});
            free_.front().free_at = start + j.duration_min;
            std::sort(free_.begin(), free_.end());

            if (dfs(placed + 1)) return true;

            placements_.pop_back();
            auto it = std::find_if(free_.begin(), free_.end(), [&](const TeamState& t) { return t.team == saved.team; });
            *it = saved;
            std::sort(free_.begin(), free_.end());
            scheduled_[static_cast<std::size_t>(q)] = false;
        }
        failed_.insert(key);
        return false;
    }

    std::span<const Job> jobs_;
    int teams_;
    std::vector<int> order_;
    std::vector<bool> scheduled_;
    std::vector<TeamState> free_;
    std::vector<Placement> placements_;
    std::unordered_set<std::string> failed_;
};

// Largest number of jobs whose compulsory parts [t - v, r + v) overlap.
int compulsory_overlap(std::span<const Job> jobs) {
    std::vector<std::pair<int, int>> events;
    for (const auto& j : jobs) {
        const int lo = j.deadline_min - j.duration_min;
        const int hi = j.release_min + j.duration_min;
        if (lo < hi) {
            events.push_back({lo, +1});
            events.push_back({hi, -1});
        }
    }
    std::sort(events.begin(), events.end());
    int cur = 0, best = 0;
    for (const auto& [_, d] : events) {
        cur += d;
        best = std::max(best, cur);
    }
    return best;
}

}  // namespace

int moment_bound(int job_count, int shift_length_min, int min_duration_min) {
    if (min_duration_min <= 0) throw InputError("moment_bound needs a positive shortest duration");
    const int by_time = (shift_length_min + min_duration_min - 1) / min_duration_min;
    return std::min(by_time, job_count);
}

int moment_bound(std::span<const Job> jobs, const Instance& inst) {
    const int shift_len = to_minutes(inst.policy.night_start - inst.policy.day_start);
    return moment_bound(static_cast<int>(jobs.size()), shift_len, inst.min_type_duration());
}

void check_jobs(std::span<const Job> jobs) {
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& j = jobs[i];
        if (j.duration_min <= 0) throw InputError("job " + std::to_string(i) + " has a nonpositive duration");
        if (j.deadline_min - j.release_min < j.duration_min)
            throw InputError("job " + std::to_string(i) + " has a window shorter than its duration");
    }
}

bool schedule_with(std::span<const Job> jobs, int teams, ShiftSchedule* schedule) {
    check_jobs(jobs);
    if (jobs.empty()) {
        if (schedule) *schedule = ShiftSchedule{};
        return true;
    }
    if (teams < 1) return false;
    TeamSearch search(jobs, std::min<int>(teams, static_cast<int>(jobs.size())));
    if (!search.run()) return false;
    if (schedule) *schedule = search.schedule();
    return true;
}

std::optional<ShiftSchedule> min_teams(std::span<const Job> jobs, int max_teams) {
    check_jobs(jobs);
    if (jobs.empty()) return ShiftSchedule{};
    const int upper = std::min<int>(max_teams, static_cast<int>(jobs.size()));
    for (int n = std::max(1, compulsory_overlap(jobs)); n <= upper; ++n) {
        ShiftSchedule s;
        if (schedule_with(jobs, n, &s)) return s;
    }
    return std::nullopt;
}

std::string check_schedule(std::span<const Job> jobs, const ShiftSchedule& schedule) {
    if (schedule.teams_used != static_cast<int>(schedule.teams.size())) return "teams_used does not match team count";
    std::vector<int> seen(jobs.size(), 0);
    for (std::size_t t = 0; t < schedule.teams.size(); ++t) {
        const auto& team = schedule.teams[t];
        if (team.empty()) return "team " + std::to_string(t) + " is empty";
        for (std::size_t i = 0; i < team.size(); ++i) {
            const auto& s = team[i];
            if (s.job < 0 || s.job >= static_cast<int>(jobs.size())) return "unknown job id";
            const auto& j = jobs[static_cast<std::size_t>(s.job)];
            ++seen[static_cast<std::size_t>(s.job)];
            if (s.end_min != s.start_min + j.duration_min) return "job " + std::to_string(s.job) + " is preempted";
            if (s.start_min < j.release_min) return "job " + std::to_string(s.job) + " starts before release";
            if (s.end_min > j.deadline_min) return "job " + std::to_string(s.job) + " ends after deadline";
            if (i > 0 && team[i - 1].end_min > s.start_min)
                return "team " + std::to_string(t) + " has overlapping jobs";
        }
    }
    for (std::size_t q = 0; q < seen.size(); ++q)
        if (seen[q] != 1) return "job " + std::to_string(q) + " is scheduled " + std::to_string(seen[q]) + " times";
    return {};
}

}  // namespace mslcp
