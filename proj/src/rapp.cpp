#include "mslcp/rapp.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>

#include "mslcp/app.hpp"
#include "mslcp/error.hpp"

namespace mslcp {

namespace {

// Paired residual arcs: arc 2e is edge e forward, arc 2e+1 its reverse.
struct Dinic {
    explicit Dinic(const FlowNetwork& net) : n(net.node_count()), adj(static_cast<std::size_t>(n)) {
        for (std::size_t e = 0; e < net.edges.size(); ++e) {
            const auto& edge = net.edges[e];
            add_arc(edge.from, edge.to, edge.capacity);
            add_arc(edge.to, edge.from, 0);
        }
    }

    void add_arc(int from, int to, int cap) {
        adj[static_cast<std::size_t>(from)].push_back(static_cast<int>(head.size()));
        head.push_back(to);
        cap_left.push_back(cap);
    }

    bool bfs(int s, int t) {
        level.assign(static_cast<std::size_t>(n), -1);
        level[static_cast<std::size_t>(s)] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int a : adj[static_cast<std::size_t>(u)]) {
                const int v = head[static_cast<std::size_t>(a)];
                if (cap_left[static_cast<std::size_t>(a)] > 0 && level[static_cast<std::size_t>(v)] < 0) {
                    level[static_cast<std::size_t>(v)] = level[static_cast<std::size_t>(u)] + 1;
                    q.push(v);
                }
            }
        }
        return level[static_cast<std::size_t>(t)] >= 0;
    }

    int dfs(int u, int t, int pushed) {
        if (u == t) return pushed;
        auto& it = next[static_cast<std::size_t>(u)];
        const auto& arcs = adj[static_cast<std::size_t>(u)];
        for (; it < arcs.size(); ++it) {
            const int a = arcs[it];
            const int v = head[static_cast<std::size_t>(a)];
            if (cap_left[static_cast<std::size_t>(a)] <= 0 ||
                level[static_cast<std::size_t>(v)] != level[static_cast<std::size_t>(u)] + 1)
                continue;
            const int got = dfs(v, t, std::min(pushed, cap_left[static_cast<std::size_t>(a)]));
            if (got > 0) {
                cap_left[static_cast<std::size_t>(a)] -= got;
                cap_left[static_cast<std::size_t>(a ^ 1)] += got;
                return got;
            }
        }
        return 0;
    }

    int run(int s, int t) {
        int total = 0;
        while (bfs(s, t)) {
            next.assign(static_cast<std::size_t>(n), 0);
            while (int f = dfs(s, t, std::numeric_limits<int>::max())) total += f;
        }
        return total;
    }

    int n;
    std::vector<std::vector<int>> adj;
    std::vector<int> head;
    std::vector<int> cap_left;
    std::vector<int> level;
    std::vector<std::size_t> next;
};

std::string node_name(const FlowNetwork& net, int v) {
    if (v == FlowNetwork::kSource) return "s";
    if (v == FlowNetwork::kSink) return "t";
    if (net.is_job(v)) return "q" + std::to_string(v - 2);
    return "p" + std::to_string(net.instants[static_cast<std::size_t>(v - 2 - net.job_count)]);
}

bool touches_terminal(const FlowEdge& e) {
    return e.from == FlowNetwork::kSource || e.from == FlowNetwork::kSink || e.to == FlowNetwork::kSource ||
           e.to == FlowNetwork::kSink;
}

void check_durations(std::span<const Job> jobs) {
    for (std::size_t i = 0; i < jobs.size(); ++i)
        if (jobs[i].duration_min <= 0) throw InputError("job " + std::to_string(i) + " has a nonpositive duration");
}

}  // namespace

FlowNetwork build_network(std::span<const Job> jobs) {
    check_durations(jobs);
    FlowNetwork net;
    net.job_count = static_cast<int>(jobs.size());
    for (const auto& j : jobs)
        for (int x = j.release_min; x + 1 <= j.deadline_min; ++x) net.instants.push_back(x);
    std::sort(net.instants.begin(), net.instants.end());
    net.instants.erase(std::unique(net.instants.begin(), net.instants.end()), net.instants.end());

    auto instant_of = [&](int minute) {
        const auto it = std::lower_bound(net.instants.begin(), net.instants.end(), minute);
        return static_cast<int>(it - net.instants.begin());
    };
    for (int q = 0; q < net.job_count; ++q)
        net.edges.push_back({FlowNetwork::kSource, net.job_node(q), jobs[static_cast<std::size_t>(q)].duration_min, 0});
    for (int q = 0; q < net.job_count; ++q) {
        const auto& j = jobs[static_cast<std::size_t>(q)];
        for (int x = j.release_min; x + 1 <= j.deadline_min; ++x)
            net.edges.push_back({net.job_node(q), net.instant_node(instant_of(x)), 1, 0});
    }
    for (int i = 0; i < static_cast<int>(net.instants.size()); ++i)
        net.edges.push_back({net.instant_node(i), FlowNetwork::kSink, 1, 0});
    return net;
}

int max_flow(FlowNetwork& net) {
    Dinic d(net);
    const int value = d.run(FlowNetwork::kSource, FlowNetwork::kSink);
    for (std::size_t e = 0; e < net.edges.size(); ++e) net.edges[e].flow = d.cap_left[2 * e + 1];
    return value;
}

std::vector<FlowEdge> residual_edges(const FlowNetwork& net) {
    std::vector<FlowEdge> out;
    for (const auto& e : net.edges) {
        if (e.capacity - e.flow > 0) out.push_back({e.from, e.to, e.capacity - e.flow, 0});
        if (e.flow > 0) out.push_back({e.to, e.from, e.flow, 0});
    }
    return out;
}

std::vector<std::vector<int>> extract_cuts(const FlowNetwork& net) {
    const auto residual = residual_edges(net);
    std::vector<std::vector<int>> h(static_cast<std::size_t>(net.node_count()));
    std::vector<int> starts;
    for (const auto& e : residual) {
        if (e.from == FlowNetwork::kSource && net.is_job(e.to)) starts.push_back(e.to);
        if (!touches_terminal(e)) h[static_cast<std::size_t>(e.from)].push_back(e.to);
    }
    if (starts.empty()) throw ContractError("extract_cuts: the flow saturates every job");
    std::sort(starts.begin(), starts.end());

    std::vector<std::vector<int>> cuts;
    for (int start : starts) {
        std::vector<char> seen(static_cast<std::size_t>(net.node_count()), 0);
        std::vector<int> stack{start};
        seen[static_cast<std::size_t>(start)] = 1;
        std::vector<int> cut;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            if (net.is_job(u)) cut.push_back(u - 2);
            for (int v : h[static_cast<std::size_t>(u)]) {
                if (seen[static_cast<std::size_t>(v)]) continue;
                seen[static_cast<std::size_t>(v)] = 1;
                stack.push_back(v);
            }
        }
        std::sort(cut.begin(), cut.end());
        cuts.push_back(std::move(cut));
    }
    return cuts;
}

std::vector<std::vector<int>> remove_redundant(std::vector<std::vector<int>> cuts) {
    for (auto& c : cuts) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::stable_sort(cuts.begin(), cuts.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<std::vector<int>> kept;
    for (auto& c : cuts) {
        const bool redundant = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
            return std::includes(c.begin(), c.end(), k.begin(), k.end());
        });
        if (!redundant) kept.push_back(std::move(c));
    }
    return kept;
}

RappCertificate solve_rapp(std::span<const Job> jobs, int teams) {
    if (teams != 1) throw Unsupported("the flow relaxation is defined for one team only");
    check_durations(jobs);
    RappCertificate cert;
    for (const auto& j : jobs) cert.total_duration += j.duration_min;

    std::vector<std::vector<int>> self_infeasible;
    for (int q = 0; q < static_cast<int>(jobs.size()); ++q) {
        const auto& j = jobs[static_cast<std::size_t>(q)];
        if (j.duration_min > j.deadline_min - j.release_min) self_infeasible.push_back({q});
    }

    FlowNetwork net = build_network(jobs);
    cert.max_flow = max_flow(net);
    cert.feasible = cert.max_flow == cert.total_duration;
    if (cert.feasible) return cert;

    auto raw = extract_cuts(net);
    raw.insert(raw.begin(), self_infeasible.begin(), self_infeasible.end());
    cert.cuts = remove_redundant(std::move(raw));
    return cert;
}

std::string to_dot(const FlowNetwork& net, DotView view) {
    std::ostringstream out;
    out << "digraph " << (view == DotView::Network ? "G" : view == DotView::Residual ? "R" : "H") << " {\n";
    out << "  rankdir=LR;\n";
    auto emit = [&](const FlowEdge& e, const std::string& label) {
        out << "  " << node_name(net, e.from) << " -> " << node_name(net, e.to) << " [label=\"" << label << "\"];\n";
    };
    if (view == DotView::Network) {
        for (const auto& e : net.edges) emit(e, std::to_string(e.flow) + "/" + std::to_string(e.capacity));
    } else {
        for (const auto& e : residual_edges(net)) {
            if (view == DotView::Reachability && touches_terminal(e)) continue;
            emit(e, std::to_string(e.capacity));
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace mslcp
