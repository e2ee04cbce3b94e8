#pragma once

#include <span>
#include <string>
#include <vector>

#include "mslcp/shift.hpp"

namespace mslcp {

// Flow graph of the preemptive single-team relaxation. Node 0 is the source,
// node 1 the sink, nodes 2..2+|Q|-1 the jobs in input order, then one node per
// minute slot [x, x+1) lying inside at least one job window.
struct FlowEdge {
    int from = 0;
    int to = 0;
    int capacity = 0;
    int flow = 0;
};

struct FlowNetwork {
    static constexpr int kSource = 0;
    static constexpr int kSink = 1;

    int job_count = 0;
    std::vector<int> instants;  // minute of each instant node, ascending
    std::vector<FlowEdge> edges;

    int node_count() const { return 2 + job_count + static_cast<int>(instants.size()); }
    int job_node(int q) const { return 2 + q; }
    int instant_node(int i) const { return 2 + job_count + i; }
    bool is_job(int node) const { return node >= 2 && node < 2 + job_count; }
};

FlowNetwork build_network(std::span<const Job> jobs);

// Dinic's algorithm; stores the flow on the edges and returns its value.
int max_flow(FlowNetwork& net);

// Residual edges with positive capacity as (from, to, capacity).
std::vector<FlowEdge> residual_edges(const FlowNetwork& net);

// For every job q with spare source capacity, {q} plus all jobs reachable
// from q in the residual graph without source and sink. Each cut is a
// sorted list of job indices. Throws ContractError when the flow saturates
// every source edge.
std::vector<std::vector<int>> extract_cuts(const FlowNetwork& net);

// Keeps, in order of cardinality, every cut that is not a superset of one
// already kept. Inputs need not be sorted.
std::vector<std::vector<int>> remove_redundant(std::vector<std::vector<int>> cuts);

struct RappCertificate {
    bool feasible = true;
    int max_flow = 0;
    int total_duration = 0;
    std::vector<std::vector<int>> cuts;  // job indices; empty when feasible
};

// Throws Unsupported for teams != 1. A job longer than its window becomes a
// cut of its own.
RappCertificate solve_rapp(std::span<const Job> jobs, int teams = 1);

enum class DotView { Network, Residual, Reachability };

// Graphviz rendering of G (with flow/capacity labels), R, or H.
std::string to_dot(const FlowNetwork& net, DotView view = DotView::Network);

}  // namespace mslcp
