#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tempnet/common.hpp"
#include "tempnet/paths.hpp"
#include "tempnet/tgraph.hpp"
#include "tempnet/trace.hpp"

namespace tempnet {

enum class CentralityMetric { TemporalBetweenness, TemporalCloseness, StaticBetweenness, StaticCloseness, Random };

std::string_view to_string(CentralityMetric m);

struct CentralityRanking {
    CentralityMetric metric = CentralityMetric::Random;
    Interval interval{};
    std::vector<Rational> exact;  // per node
    std::vector<double> score;    // per node, converted from `exact`
    std::vector<NodeId> order;    // nodes by descending score, ties by ascending id
    std::vector<std::size_t> rank;  // rank[node] = position in `order`

    std::vector<NodeId> top(std::size_t count) const;
};

// Sorts descending with ascending-id tie-break and fills score/order/rank.
CentralityRanking make_ranking(CentralityMetric metric, Interval interval, std::vector<Rational> exact);

struct EfficiencyReport {
    Interval interval{};
    std::size_t node_count = 0;
    std::vector<double> pairwise;  // row-major N*N, E_ij = 1/(W_k + 1), 0 if unreachable, 0 on the diagonal
    Rational average_exact;
    double average = 0.0;

    double at(NodeId i, NodeId j) const { return pairwise[static_cast<std::size_t>(i) * node_count + j]; }
};

// Distances enter as window counts, so E does not depend on the time unit.
EfficiencyReport temporal_efficiency(const TemporalGraph& g, unsigned threads = 1);
EfficiencyReport temporal_efficiency(const TemporalDistances& d, Interval interval);

struct EfficiencyPoint {
    Seconds t = 0;
    double efficiency = 0.0;
};

// E over G^w(t, t + span) for t = t_min, t_min + stride, ... while the slide fits the trace.
// A span longer than the trace yields a single point over the whole trace.
std::vector<EfficiencyPoint> sliding_efficiency(const Trace& trace, Seconds w, Seconds span, Seconds stride,
                                                unsigned threads = 1);

enum class BetweennessDenominator {
    ThroughNode,  // |sigma_jk(i)|, paths through i
    AllPaths,     // |S_jk|
};

std::string_view to_string(BetweennessDenominator d);

struct BetweennessOptions {
    BetweennessDenominator denominator = BetweennessDenominator::ThroughNode;
    unsigned threads = 1;
};

// B_i = (1/T) sum_t B_i(t). Each pair (j,k) contributes the incidence windows of i
// over S_jk divided by the denominator, scaled by 1/((N-1)(N-2)).
CentralityRanking temporal_betweenness(const TemporalGraph& g, const BetweennessOptions& opts = {});

// Per-window B_i(t), indexed [t][i].
std::vector<std::vector<Rational>> temporal_betweenness_per_window(const TemporalGraph& g,
                                                                   const BetweennessOptions& opts = {});

// C_i = 1 - sum_j d_ij / (W (N-1)) with W = w*T; unreachable distances count as W.
CentralityRanking temporal_closeness(const TemporalGraph& g, unsigned threads = 1);
CentralityRanking temporal_closeness(const TemporalDistances& d, Interval interval);

// Directed Freeman betweenness normalized by (N-1)(N-2), and closeness
// 1 - sum_j hops_ij / (N (N-1)) with unreachable hops counted as N.
std::pair<CentralityRanking, CentralityRanking> static_centralities(const StaticGraph& s, Interval interval = {});

// Static BFS hop distances; -1 when unreachable.
std::vector<int> static_hops_from(const StaticGraph& s, NodeId source);

}  // namespace tempnet
