#include "mslcp/master.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>

#include "mslcp/error.hpp"

namespace mslcp {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kRootRounds = 1000;  // subgradient steps at the root
constexpr int kNodeRounds = 40;

struct Cost {
    long night = 0;
    long total = 0;
    bool inf = false;
};

Cost operator+(const Cost& a, const Cost& b) {
    if (a.inf || b.inf) return {0, 0, true};
    return {a.night + b.night, a.total + b.total, false};
}

enum class NoGoodKind { Locations, Duration, Cut };

struct NoGood {
    std::vector<int> lits;  // sorted
    NoGoodKind kind;
};

// Search state below the root: excluded literals, activities fixed to 1
// and no-goods that were shortened (an empty override means the no-good is
// dropped).
struct State {
    std::vector<char> excluded;
    std::vector<char> forced;  // x literals only
    std::map<int, std::vector<int>> overrides;
};

struct Delta {
    int exclude = -1;
    int force = -1;
    int nogood = -1;
    std::vector<int> lits;
};

struct Node {
    int parent = -1;
    Delta delta;
    int depth = 0;
    std::shared_ptr<const std::vector<double>> lambda;
};

struct Eval {
    bool infeasible = false;
    Cost cost;
    double lb = 0.0;
    std::vector<std::vector<int>> chains;  // chosen var ids per pair
    std::vector<Cost> pair_cost;
    std::vector<char> chosen;  // per literal
    std::vector<int> violated;
    // Feasible chains met while bounding, and their cost.
    std::optional<std::vector<std::vector<int>>> found;
    Cost found_cost;
    std::vector<double> lambda;  // multipliers per no-good, for the children
};

class Model {
public:
    Model(const Instance& inst, const std::vector<CutConstraint>& cuts) : inst_(inst) {
        k_ = static_cast<int>(inst.types.size());
        if (k_ > 20) throw Unsupported("more than 20 maintenance types");
        l_ = static_cast<int>(inst.locations.size());
        eps_ = inst.policy.epsilon;
        tol_ = eps_ > 0 ? std::min(1e-9, eps_ * 1e-3) : 1e-9;

        const int n_units = static_cast<int>(inst.units.size());
        unit_offset_.resize(static_cast<std::size_t>(n_units));
        for (int i = 0; i < n_units; ++i) {
            unit_offset_[static_cast<std::size_t>(i)] = nx_;
            nx_ += static_cast<int>(inst.units[static_cast<std::size_t>(i)].mos.size()) * k_;
        }
        vars_.resize(static_cast<std::size_t>(nx_));
        succ_.resize(static_cast<std::size_t>(nx_));
        terminal_.resize(static_cast<std::size_t>(nx_));
        static_excluded_.assign(static_cast<std::size_t>(nx_ + l_), 0);
        pair_vars_.resize(static_cast<std::size_t>(n_units * k_));
        open_.resize(static_cast<std::size_t>(n_units * k_));
        day_pairs_.resize(static_cast<std::size_t>(l_));

        disjoint_mos_.assign(static_cast<std::size_t>(n_units), 1);
        for (int i = 0; i < n_units; ++i) {
            const auto& u = inst.units[static_cast<std::size_t>(i)];
            for (std::size_t j = 1; j < u.mos.size(); ++j)
                if (!(u.mos[j - 1].end_hr < u.mos[j].start_hr)) disjoint_mos_[static_cast<std::size_t>(i)] = 0;
            for (const auto& m : u.mos) {
                for (int k = 0; k < k_; ++k) {
                    const int v = var_id(i, m.index, k);
                    auto& info = vars_[static_cast<std::size_t>(v)];
                    info = {i, m.index, k, i * k_ + k, is_daytime(m, inst), m.location};
                    pair_vars_[static_cast<std::size_t>(info.pair)].push_back(v);
                    const double o = inst.types[static_cast<std::size_t>(k)].interval_hr;
                    terminal_[static_cast<std::size_t>(v)] = m.end_hr + o > inst.horizon_hr;
                    for (int p : successor_window(inst, i, m.index, k))
                        succ_[static_cast<std::size_t>(v)].push_back(var_id(i, p, k));
                }
            }
            for (int k = 0; k < k_; ++k)
                for (int p : successor_window(inst, i, 0, k))
                    open_[static_cast<std::size_t>(i * k_ + k)].push_back(var_id(i, p, k));
        }
        for (int v = 0; v < nx_; ++v) {
            const auto& info = vars_[static_cast<std::size_t>(v)];
            if (info.day) day_pairs_[static_cast<std::size_t>(info.location)].insert(info.pair);
        }

        base_cost_.resize(static_cast<std::size_t>(nx_));
        for (int v = 0; v < nx_; ++v) base_cost_[static_cast<std::size_t>(v)] = value(var_cost(v));

        add_duration_nogoods();
        for (const auto& cut : cuts) add_cut(cut);
    }

    int var_id(int unit, int mo_index, int type) const {
        return unit_offset_[static_cast<std::size_t>(unit)] + (mo_index - 1) * k_ + type;
    }
    int y_lit(int location) const { return nx_ + location; }
    int literal_count() const { return nx_ + l_; }
    double value(const Cost& c) const { return c.inf ? kInf : static_cast<double>(c.night) + eps_ * static_cast<double>(c.total); }
    double tol() const { return tol_; }

    // Objective values are multiples of epsilon when 1 / epsilon is an
    // integer.
    double round_up(double lb) const {
        if (lb == kInf || eps_ <= 0) return lb;
        const double inv = 1.0 / eps_;
        if (std::abs(inv - std::round(inv)) > 1e-9 * inv) return lb;
        return std::max(lb, std::ceil(lb * std::round(inv) - 1e-6) / std::round(inv) - tol_);
    }

    State root_state() const {
        return {std::vector<char>(static_cast<std::size_t>(literal_count()), 0),
                std::vector<char>(static_cast<std::size_t>(nx_), 0), {}};
    }

    // `warm` seeds the multipliers; `rounds` caps the subgradient steps.
    Eval evaluate(const State& st, const std::vector<double>* warm = nullptr, double incumbent = kInf,
                  int rounds = 0) {
        for (;;) {
            Eval ev = relax(st);
            if (ev.infeasible) return ev;
            if (!check_location_limit(ev)) continue;  // a new global exclusion appeared
            find_violated(st, ev);
            if (ev.violated.empty()) {
                ev.lb = value(ev.cost);
                return ev;
            }
            ev.lb = value(ev.cost) + bonus(st, ev);
            if (ev.lb == kInf) {
                ev.infeasible = true;
                return ev;
            }
            ascend(st, ev, warm, incumbent, rounds);
            ev.lb = round_up(ev.lb);
            return ev;
        }
    }

    // Children of a node whose evaluation has violated no-goods; empty when
    // the first violated no-good cannot be repaired.
    std::vector<Delta> branch(const State& st, const Eval& ev) {
        // The violated no-good that is dearest to repair.
        int g = -1;
        std::vector<int> finite;
        int best = -1;
        double dearest = -1.0;
        for (int cand : ev.violated) {
            std::vector<int> cand_finite;
            int cand_best = -1;
            double cand_repair = kInf;
            for (int lit : current_lits(st, cand)) {
                const double r = repair(st, ev, lit);
                if (r == kInf) continue;
                cand_finite.push_back(lit);
                if (r < cand_repair - tol_) {
                    cand_repair = r;
                    cand_best = lit;
                }
            }
            if (cand_best < 0) return {};
            if (cand_repair > dearest + tol_) {
                dearest = cand_repair;
                g = cand;
                finite = std::move(cand_finite);
                best = cand_best;
            }
        }
        std::vector<Delta> out;
        if (best < 0) return out;
        out.push_back({best, -1, -1, {}});
        std::vector<int> rest;
        for (int lit : finite)
            if (lit != best) rest.push_back(lit);
        const int force = best < nx_ && disjoint_mos_[static_cast<std::size_t>(vars_[static_cast<std::size_t>(best)].unit)]
                              ? best
                              : -1;
        if (rest.size() == 1) {
            out.push_back({rest.front(), force, g, {}});
        } else if (rest.size() > 1) {
            out.push_back({-1, force, g, rest});
        }
        return out;
    }

    MasterSolution to_solution(const std::vector<std::vector<int>>& chains) const {
        MasterSolution sol;
        for (const auto& chain : chains)
            for (int v : chain) {
                const auto& info = vars_[static_cast<std::size_t>(v)];
                sol.x.push_back({info.unit, info.mo, info.type});
            }
        std::sort(sol.x.begin(), sol.x.end());
        complete_solution(sol, inst_);
        return sol;
    }

private:
    struct VarInfo {
        int unit = 0;
        int mo = 0;
        int type = 0;
        int pair = 0;
        bool day = false;
        int location = 0;
    };

    void add_duration_nogoods() {
        for (const auto& u : inst_.units) {
            for (const auto& m : u.mos) {
                const int cap = to_minutes(m.end_hr) - to_minutes(m.start_hr);
                std::vector<unsigned> over;
                for (unsigned mask = 1; mask < (1u << k_); ++mask) {
                    int need = 0;
                    for (int k = 0; k < k_; ++k)
                        if (mask & (1u << k)) need += inst_.types[static_cast<std::size_t>(k)].duration_min;
                    if (need > cap) over.push_back(mask);
                }
                for (unsigned mask : over) {
                    const bool minimal = std::none_of(over.begin(), over.end(), [&](unsigned other) {
                        return other != mask && (other & mask) == other;
                    });
                    if (!minimal) continue;
                    std::vector<int> lits;
                    for (int k = 0; k < k_; ++k)
                        if (mask & (1u << k)) lits.push_back(var_id(m.unit, m.index, k));
                    add_nogood(std::move(lits), NoGoodKind::Duration);
                }
            }
        }
    }

    void add_cut(const CutConstraint& cut) {
        std::vector<int> lits;
        for (const auto& member : cut.members) {
            inst_.mo(member.unit, member.mo_index);  // throws on unknown MOs
            for (int k : member.types) {
                if (k < 0 || k >= k_) throw InputError("cut refers to unknown type " + std::to_string(k));
                lits.push_back(var_id(member.unit, member.mo_index, k));
            }
        }
        if (lits.empty()) throw InputError("empty cut");
        add_nogood(std::move(lits), NoGoodKind::Cut);
    }

    void add_nogood(std::vector<int> lits, NoGoodKind kind) {
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        if (std::any_of(lits.begin(), lits.end(), [&](int l) { return static_excluded_[static_cast<std::size_t>(l)]; }))
            return;
        if (lits.size() == 1) {
            static_excluded_[static_cast<std::size_t>(lits.front())] = 1;
            return;
        }
        if (!seen_.insert(lits).second) return;
        const int id = static_cast<int>(nogoods_.size());
        nogoods_.push_back({std::move(lits), kind});
        (kind == NoGoodKind::Locations ? order_locations_ : kind == NoGoodKind::Duration ? order_duration_ : order_cuts_)
            .push_back(id);
    }

    bool lit_out(const State& st, int lit) const {
        return st.excluded[static_cast<std::size_t>(lit)] || static_excluded_[static_cast<std::size_t>(lit)];
    }

    bool available(const State& st, int v, int extra) const {
        if (v == extra || lit_out(st, v)) return false;
        const auto& info = vars_[static_cast<std::size_t>(v)];
        if (!info.day) return true;
        const int y = y_lit(info.location);
        return y != extra && !lit_out(st, y);
    }

    Cost var_cost(int v) const { return {vars_[static_cast<std::size_t>(v)].day ? 0L : 1L, 1L, false}; }

    // Cheapest chain covering pair p, honouring exclusions plus `extra`.
    Cost chain(const State& st, int p, int extra, std::vector<int>* out) const {
        std::vector<int> local;
        std::vector<int>& vs = out ? *out : local;
        if (chain_priced(st, p, extra, base_cost_, &vs) == kInf) return {0, 0, true};
        Cost c;
        for (int v : vs) c = c + var_cost(v);
        return c;
    }

    Eval relax(const State& st) const {
        Eval ev;
        const std::size_t pairs = pair_vars_.size();
        ev.chains.resize(pairs);
        ev.pair_cost.resize(pairs);
        ev.chosen.assign(static_cast<std::size_t>(literal_count()), 0);
        for (std::size_t p = 0; p < pairs; ++p) {
            ev.pair_cost[p] = chain(st, static_cast<int>(p), -1, &ev.chains[p]);
            if (ev.pair_cost[p].inf) {
                ev.infeasible = true;
                ev.lb = kInf;
                return ev;
            }
            ev.cost = ev.cost + ev.pair_cost[p];
            for (int v : ev.chains[p]) {
                ev.chosen[static_cast<std::size_t>(v)] = 1;
                const auto& info = vars_[static_cast<std::size_t>(v)];
                if (info.day) ev.chosen[static_cast<std::size_t>(y_lit(info.location))] = 1;
            }
        }
        return ev;
    }

    // Adds a no-good over the first max_day_locations + 1 open day
    // locations when there are too many. Returns false if that turned into a
    // global exclusion, which invalidates the relaxation.
    bool check_location_limit(const Eval& ev) {
        std::vector<int> open;
        for (int l = 0; l < l_; ++l)
            if (ev.chosen[static_cast<std::size_t>(y_lit(l))]) open.push_back(y_lit(l));
        const int limit = inst_.policy.max_day_locations;
        if (static_cast<int>(open.size()) <= limit) return true;
        open.resize(static_cast<std::size_t>(limit + 1));
        const bool singleton = open.size() == 1;
        add_nogood(open, NoGoodKind::Locations);
        return !singleton;
    }

    const std::vector<int>& current_lits(const State& st, int g) const {
        const auto it = st.overrides.find(g);
        return it != st.overrides.end() ? it->second : nogoods_[static_cast<std::size_t>(g)].lits;
    }

    void find_violated(const State& st, Eval& ev) const {
        for (const auto* order : {&order_locations_, &order_duration_, &order_cuts_}) {
            for (int g : *order) {
                const auto& lits = current_lits(st, g);
                if (lits.empty()) continue;
                if (std::all_of(lits.begin(), lits.end(), [&](int l) { return ev.chosen[static_cast<std::size_t>(l)]; }))
                    ev.violated.push_back(g);
            }
        }
    }

    // Pairs whose cost can change when `lit` is excluded.
    std::vector<int> touched(const Eval& ev, int lit) const {
        if (lit < nx_) return {vars_[static_cast<std::size_t>(lit)].pair};
        std::vector<int> out;
        const int loc = lit - nx_;
        for (int p : day_pairs_[static_cast<std::size_t>(loc)]) {
            const auto& ch = ev.chains[static_cast<std::size_t>(p)];
            if (std::any_of(ch.begin(), ch.end(), [&](int v) {
                    const auto& info = vars_[static_cast<std::size_t>(v)];
                    return info.day && info.location == loc;
                }))
                out.push_back(p);
        }
        return out;
    }

    double repair(const State& st, const Eval& ev, int lit) const {
        double delta = 0.0;
        for (int p : touched(ev, lit)) {
            const Cost c = chain(st, p, lit, nullptr);
            if (c.inf) return kInf;
            delta += value(c) - value(ev.pair_cost[static_cast<std::size_t>(p)]);
        }
        return delta;
    }

    double bonus(const State& st, const Eval& ev) const {
        std::vector<char> used(pair_vars_.size(), 0);
        double total = 0.0;
        for (int g : ev.violated) {
            const auto& lits = current_lits(st, g);
            std::vector<int> pairs;
            for (int lit : lits)
                for (int p : touched(ev, lit)) pairs.push_back(p);
            if (std::any_of(pairs.begin(), pairs.end(), [&](int p) { return used[static_cast<std::size_t>(p)]; }))
                continue;
            double best = kInf;
            for (int lit : lits) best = std::min(best, repair(st, ev, lit));
            if (best == kInf) return kInf;
            total += best;
            for (int p : pairs) used[static_cast<std::size_t>(p)] = 1;
        }
        return total;
    }

    // Cheapest chain of pair p under per-variable costs `cost`. The chain
    // passes through every forced activity; forced activities after its
    // terminal end stand alone. Forcing is only used on units whose MOs are
    // pairwise disjoint, where this is exact.
    double chain_priced(const State& st, int p, int extra, const std::vector<double>& cost,
                        std::vector<int>* out) const {
        const auto& vs = pair_vars_[static_cast<std::size_t>(p)];
        if (out) out->clear();
        if (vs.empty()) return 0.0;
        const int base = vs.front();
        const std::size_t m = vs.size();
        const auto pos = [&](int v) { return static_cast<std::size_t>((v - base) / k_); };

        std::vector<std::size_t> next_forced(m + 1, m);  // shifted by one: [0] is before the first
        std::vector<double> tail(m + 1, 0.0);
        for (std::size_t idx = m; idx-- > 0;) {
            const int v = vs[idx];
            next_forced[idx] = next_forced[idx + 1];
            tail[idx] = tail[idx + 1];
            if (st.forced[static_cast<std::size_t>(v)]) {
                if (!available(st, v, extra)) return kInf;
                next_forced[idx] = idx;
                tail[idx] += cost[static_cast<std::size_t>(v)];
            }
        }
        // next_forced[idx + 1] / tail[idx + 1]: forced positions after idx.

        std::vector<double> g(m, kInf);
        std::vector<int> next(m, -1);
        for (std::size_t idx = m; idx-- > 0;) {
            const int v = vs[idx];
            if (!available(st, v, extra)) continue;
            double best = tail[idx + 1];
            if (!terminal_[static_cast<std::size_t>(v)]) {
                best = kInf;
                for (int s : succ_[static_cast<std::size_t>(v)]) {
                    if (pos(s) > next_forced[idx + 1]) continue;
                    const double cand = g[pos(s)];
                    if (cand < best - 1e-12) {
                        best = cand;
                        next[idx] = s;
                    }
                }
            }
            if (best < kInf) g[idx] = cost[static_cast<std::size_t>(v)] + best;
        }
        double best = kInf;
        int start = -1;
        for (int v : open_[static_cast<std::size_t>(p)]) {
            if (pos(v) > next_forced[0]) continue;
            const double cand = g[pos(v)];
            if (cand < best - 1e-12) {
                best = cand;
                start = v;
            }
        }
        if (out && start >= 0) {
            int last = start;
            for (int v = start; v >= 0; v = next[pos(v)]) {
                out->push_back(v);
                last = v;
            }
            for (std::size_t idx = pos(last) + 1; idx < m; ++idx)
                if (st.forced[static_cast<std::size_t>(vs[idx])]) out->push_back(vs[idx]);
        }
        return best;
    }

    // True when chains (one per pair) satisfy every no-good of the node and
    // the location limit.
    bool satisfies(const State& st, const std::vector<char>& chosen_x) const {
        std::vector<char> open(static_cast<std::size_t>(l_), 0);
        for (int v = 0; v < nx_; ++v)
            if (chosen_x[static_cast<std::size_t>(v)] && vars_[static_cast<std::size_t>(v)].day)
                open[static_cast<std::size_t>(vars_[static_cast<std::size_t>(v)].location)] = 1;
        if (std::count(open.begin(), open.end(), 1) > inst_.policy.max_day_locations) return false;
        auto is_one = [&](int lit) {
            return lit < nx_ ? chosen_x[static_cast<std::size_t>(lit)] != 0 : open[static_cast<std::size_t>(lit - nx_)] != 0;
        };
        for (std::size_t g = 0; g < nogoods_.size(); ++g) {
            const auto& lits = current_lits(st, static_cast<int>(g));
            if (!lits.empty() && std::all_of(lits.begin(), lits.end(), is_one)) return false;
        }
        return true;
    }

    // Lagrangian bound over the MO-duration and cut no-goods. A greedy
    // ascent raises the multiplier of each no-good violated by the priced
    // relaxation by the cheapest way to drop one of its literals; projected
    // subgradient steps with a Polyak step size follow. Tightens ev.lb,
    // marks nodes whose no-goods cannot be repaired, and records priced
    // solutions that happen to be feasible.
    void ascend(const State& st, Eval& ev, const std::vector<double>* warm, double incumbent, int rounds) const {
        constexpr int kGreedyRounds = 30;
        std::vector<int> active;
        for (const auto* order : {&order_duration_, &order_cuts_}) {
            for (int g : *order) {
                const auto& lits = current_lits(st, g);
                if (lits.empty()) continue;
                if (std::any_of(lits.begin(), lits.end(), [&](int lit) { return !available(st, lit, -1); })) continue;
                active.push_back(g);
            }
        }
        if (active.empty()) return;

        std::vector<double> lambda(nogoods_.size(), 0.0);
        if (warm)
            for (int g : active)
                if (static_cast<std::size_t>(g) < warm->size()) lambda[static_cast<std::size_t>(g)] = (*warm)[static_cast<std::size_t>(g)];
        std::vector<double> cost;
        auto price = [&] {
            cost = base_cost_;
            for (int g : active)
                for (int lit : current_lits(st, g)) cost[static_cast<std::size_t>(lit)] += lambda[static_cast<std::size_t>(g)];
        };
        price();

        const std::size_t pairs = pair_vars_.size();
        std::vector<double> pv(pairs);
        std::vector<std::vector<int>> ch(pairs);
        std::vector<char> chosen(static_cast<std::size_t>(nx_), 0);
        auto resolve = [&](std::size_t p) {
            for (int v : ch[p]) chosen[static_cast<std::size_t>(v)] = 0;
            pv[p] = chain_priced(st, static_cast<int>(p), -1, cost, &ch[p]);
            for (int v : ch[p]) chosen[static_cast<std::size_t>(v)] = 1;
        };
        auto resolve_all = [&] {
            for (std::size_t p = 0; p < pairs; ++p) resolve(p);
        };
        auto dual_value = [&] {
            double l = 0.0;
            for (double x : pv) l += x;
            for (int g : active)
                l -= lambda[static_cast<std::size_t>(g)] * static_cast<double>(current_lits(st, g).size() - 1);
            return l;
        };
        auto all_chosen = [&](int g) {
            const auto& lits = current_lits(st, g);
            return std::all_of(lits.begin(), lits.end(), [&](int lit) { return chosen[static_cast<std::size_t>(lit)]; });
        };
        auto record = [&] {
            if (ev.found || !satisfies(st, chosen)) return;
            Cost c;
            for (const auto& chain : ch)
                for (int v : chain) c = c + var_cost(v);
            ev.found = ch;
            ev.found_cost = c;
        };
        resolve_all();

        for (int round = 0; round < kGreedyRounds; ++round) {
            bool moved = false;
            for (int g : active) {
                if (!all_chosen(g)) continue;
                const auto& lits = current_lits(st, g);
                double delta = kInf;
                for (int lit : lits) {
                    const auto p = static_cast<std::size_t>(vars_[static_cast<std::size_t>(lit)].pair);
                    delta = std::min(delta, chain_priced(st, static_cast<int>(p), lit, cost, nullptr) - pv[p]);
                }
                if (delta == kInf) {
                    ev.infeasible = true;
                    ev.lb = kInf;
                    return;
                }
                if (delta <= 1e-12) continue;
                lambda[static_cast<std::size_t>(g)] += delta;
                std::set<std::size_t> touched_pairs;
                for (int lit : lits) {
                    cost[static_cast<std::size_t>(lit)] += delta;
                    touched_pairs.insert(static_cast<std::size_t>(vars_[static_cast<std::size_t>(lit)].pair));
                }
                for (auto p : touched_pairs) resolve(p);
                moved = true;
            }
            ev.lb = std::max(ev.lb, dual_value() - tol_);
            record();
            if (!moved) break;
        }

        double best = dual_value();
        std::vector<double> best_lambda = lambda;
        double theta = 2.0;
        int stale = 0;
        std::vector<double> sub(nogoods_.size(), 0.0);
        for (int it = 0; it < rounds && ev.lb < incumbent - tol_; ++it) {
            double norm = 0.0;
            for (int g : active) {
                const auto& lits = current_lits(st, g);
                double x = -static_cast<double>(lits.size() - 1);
                for (int lit : lits) x += chosen[static_cast<std::size_t>(lit)];
                if (x < 0 && lambda[static_cast<std::size_t>(g)] <= 0.0) x = 0.0;
                sub[static_cast<std::size_t>(g)] = x;
                norm += x * x;
            }
            if (norm == 0.0) break;
            const double target = incumbent < kInf ? incumbent : best + 1.0;
            const double step = theta * std::max(target - dual_value(), 1e-3) / norm;
            for (int g : active) {
                auto& l = lambda[static_cast<std::size_t>(g)];
                l = std::max(0.0, l + step * sub[static_cast<std::size_t>(g)]);
            }
            price();
            resolve_all();
            const double l = dual_value();
            if (l > best + 1e-9) {
                best = l;
                best_lambda = lambda;
                stale = 0;
            } else if (++stale >= 20) {
                theta /= 2;
                stale = 0;
                if (theta < 1e-3) break;
            }
            ev.lb = std::max(ev.lb, best - tol_);
            record();
        }
        ev.lambda = std::move(best_lambda);
    }

    const Instance& inst_;
    int k_ = 0;
    int l_ = 0;
    int nx_ = 0;
    double eps_ = 0.0;
    double tol_ = 1e-9;
    std::vector<int> unit_offset_;
    std::vector<VarInfo> vars_;
    std::vector<std::vector<int>> succ_;
    std::vector<char> terminal_;
    std::vector<std::vector<int>> pair_vars_;
    std::vector<std::vector<int>> open_;
    std::vector<std::set<int>> day_pairs_;
    std::vector<char> static_excluded_;
    std::vector<char> disjoint_mos_;  // per unit
    std::vector<double> base_cost_;
    std::vector<NoGood> nogoods_;
    std::set<std::vector<int>> seen_;
    std::vector<int> order_locations_;
    std::vector<int> order_duration_;
    std::vector<int> order_cuts_;
};

void apply(State& st, const Delta& d) {
    if (d.exclude >= 0) st.excluded[static_cast<std::size_t>(d.exclude)] = 1;
    if (d.force >= 0) st.forced[static_cast<std::size_t>(d.force)] = 1;
    if (d.nogood >= 0) st.overrides[d.nogood] = d.lits;
}

}  // namespace

const char* to_string(MasterStatus s) {
    switch (s) {
        case MasterStatus::Optimal: return "OPTIMAL";
        case MasterStatus::Infeasible: return "INFEASIBLE";
        case MasterStatus::TimeBudgetExceeded: return "TIME_BUDGET_EXCEEDED";
    }
    return "?";
}

void complete_solution(MasterSolution& sol, const Instance& inst) {
    std::set<int> day, night;
    sol.night_count = 0;
    sol.total_count = static_cast<int>(sol.x.size());
    for (const auto& a : sol.x) {
        const auto& m = inst.mo(a.unit, a.mo_index);
        if (is_daytime(m, inst)) {
            day.insert(m.location);
        } else {
            night.insert(m.location);
            ++sol.night_count;
        }
    }
    sol.y_day.assign(day.begin(), day.end());
    sol.y_night.assign(night.begin(), night.end());
    sol.objective = sol.night_count + inst.policy.epsilon * sol.total_count;
}

MasterResult solve_master(const Instance& inst, const std::vector<CutConstraint>& cuts, const MasterOptions& options) {
    const auto started = Clock::now();
    Model model(inst, cuts);

    MasterResult result;
    std::vector<Node> nodes;
    struct Entry {
        double lb;
        int depth;
        int id;
    };
    auto worse = [](const Entry& a, const Entry& b) {
        if (a.lb != b.lb) return a.lb > b.lb;
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.id > b.id;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);

    double incumbent = kInf;
    auto consider = [&](Eval ev, int parent, const Delta& delta, int depth) {
        ++result.nodes;
        if (ev.infeasible) return;
        if (ev.violated.empty()) {
            if (ev.lb < incumbent - model.tol()) {
                incumbent = ev.lb;
                result.solution = model.to_solution(ev.chains);
            }
            return;
        }
        if (ev.found && model.value(ev.found_cost) < incumbent - model.tol()) {
            incumbent = model.value(ev.found_cost);
            result.solution = model.to_solution(*ev.found);
        }
        if (ev.lb >= incumbent - model.tol()) return;
        nodes.push_back({parent, delta, depth, std::make_shared<const std::vector<double>>(std::move(ev.lambda))});
        open.push({ev.lb, depth, static_cast<int>(nodes.size()) - 1});
    };
    auto state_of = [&](int id) {
        std::vector<const Delta*> path;
        for (int n = id; n >= 0; n = nodes[static_cast<std::size_t>(n)].parent)
            path.push_back(&nodes[static_cast<std::size_t>(n)].delta);
        State st = model.root_state();
        for (auto it = path.rbegin(); it != path.rend(); ++it) apply(st, **it);
        return st;
    };

    Eval root = model.evaluate(model.root_state(), nullptr, kInf, kRootRounds);
    if (root.infeasible) {
        result.status = MasterStatus::Infeasible;
        result.lower_bound = kInf;
        return result;
    }
    consider(std::move(root), -1, Delta{}, 0);

    while (!open.empty()) {
        const Entry top = open.top();
        if (top.lb >= incumbent - model.tol()) break;
        const bool out_of_time =
            options.time_budget && std::chrono::duration<double>(Clock::now() - started) >= *options.time_budget;
        const bool out_of_nodes = options.node_limit > 0 && result.nodes >= options.node_limit;
        if (out_of_time || out_of_nodes) {
            result.status = MasterStatus::TimeBudgetExceeded;
            result.lower_bound = std::min(top.lb, incumbent);
            return result;
        }
        open.pop();

        const State st = state_of(top.id);
        const auto lambda = nodes[static_cast<std::size_t>(top.id)].lambda;
        Eval ev = model.evaluate(st, lambda.get(), incumbent, 0);
        if (ev.infeasible || ev.violated.empty()) {
            consider(std::move(ev), top.id, Delta{}, top.depth);
            continue;
        }
        for (const Delta& d : model.branch(st, ev)) {
            State child = st;
            apply(child, d);
            consider(model.evaluate(child, lambda.get(), incumbent, kNodeRounds), top.id, d, top.depth + 1);
        }
    }

    if (!result.solution) {
        result.status = MasterStatus::Infeasible;
        result.lower_bound = kInf;
        return result;
    }
    result.status = MasterStatus::Optimal;
    result.lower_bound = result.solution->objective;
    result.solution->lower_bound = result.lower_bound;
    return result;
}

double master_lower_bound(const Instance& inst, const std::vector<CutConstraint>& cuts) {
    const auto root_bound = [&](const std::vector<CutConstraint>& cs) {
        Model model(inst, cs);
        return model.evaluate(model.root_state(), nullptr, kInf, kRootRounds).lb;
    };
    const double bound = root_bound(cuts);
    return cuts.empty() ? bound : std::max(bound, root_bound({}));
}

}  // namespace mslcp
