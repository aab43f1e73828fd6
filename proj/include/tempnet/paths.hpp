#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tempnet/common.hpp"
#include "tempnet/tgraph.hpp"

namespace tempnet {

// One hop per window (h = 1): the source may transmit in its start window, any other
// node first relays in the window after the one in which it received.

// All-pairs earliest delivery windows from window 0. Unreachable pairs carry no value.
class TemporalDistances {
public:
    TemporalDistances() = default;
    TemporalDistances(std::size_t n, Seconds window_secs, WindowIndex window_count);

    std::size_t node_count() const { return n_; }
    Seconds window_secs() const { return w_; }
    WindowIndex window_count() const { return t_; }

    bool reachable(NodeId i, NodeId j) const { return at(i, j) != kNone; }
    // Delivery window W_k of the shortest temporal path i -> j.
    std::optional<WindowIndex> window(NodeId i, NodeId j) const {
        const auto v = at(i, j);
        return v == kNone ? std::nullopt : std::optional<WindowIndex>(v);
    }
    // Delivery time w * W_k, relative to the interval start.
    std::optional<Seconds> seconds(NodeId i, NodeId j) const {
        const auto v = window(i, j);
        return v ? std::optional<Seconds>(w_ * *v) : std::nullopt;
    }

    void set_window(NodeId i, NodeId j, WindowIndex t) { at(i, j) = t; }
    friend bool operator==(const TemporalDistances&, const TemporalDistances&) = default;

private:
    static constexpr WindowIndex kNone = -1;
    WindowIndex& at(NodeId i, NodeId j) { return d_[static_cast<std::size_t>(i) * n_ + j]; }
    WindowIndex at(NodeId i, NodeId j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }

    std::size_t n_ = 0;
    Seconds w_ = 1;
    WindowIndex t_ = 0;
    std::vector<WindowIndex> d_;
};

// Earliest-delivery tree from one source; parent[v] delivered to v in window delivery[v].
struct SpanningTree {
    NodeId source = 0;
    WindowIndex start_window = 0;
    std::vector<std::optional<WindowIndex>> delivery;
    std::vector<std::optional<NodeId>> parent;

    // Node sequence source -> target along the tree, empty if unreached.
    std::vector<NodeId> path_to(NodeId target) const;
};

SpanningTree temporal_bfs(const TemporalGraph& g, NodeId source, WindowIndex start_window = 0);

// `threads` = 0 picks hardware concurrency; output is independent of the thread count.
TemporalDistances all_pairs_distances(const TemporalGraph& g, unsigned threads = 1);

// A node sequence with its earliest feasible timing: arrival[m] is the window in which
// nodes[m] received the message (arrival[0] is the start window of the source).
struct TemporalPath {
    std::vector<NodeId> nodes;
    std::vector<WindowIndex> arrival;

    std::size_t hops() const { return nodes.empty() ? 0 : nodes.size() - 1; }
    friend bool operator==(const TemporalPath&, const TemporalPath&) = default;
};

// Shortest temporal paths j -> k. For an intermediate node at position m the incidence
// windows are [arrival[m], arrival[m+1]): the receipt window plus the windows it holds
// the message before forwarding.
struct ShortestPathRecord {
    NodeId from = 0;
    NodeId to = 0;
    std::optional<WindowIndex> delivery;
    std::uint64_t total = 0;                  // |S_jk|
    std::vector<std::uint64_t> through;       // per node, endpoints always 0
    std::vector<std::uint64_t> held_windows;  // per node, incidence windows summed over paths
    std::vector<TemporalPath> paths;          // sorted by node sequence

    // Per-window incidence counts of `node` (U in temporal betweenness), size T.
    std::vector<std::uint64_t> incidences(NodeId node, WindowIndex window_count) const;
};

class PathOverflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kMaxPathsPerPair = 1'000'000;

ShortestPathRecord shortest_path_records(const TemporalGraph& g, NodeId j, NodeId k);

// Per-edge sorted window lists, the lookup structure for path enumeration.
class EdgeTimeline {
public:
    explicit EdgeTimeline(const TemporalGraph& g);

    std::size_t node_count() const { return n_; }
    const std::vector<NodeId>& static_out(NodeId v) const { return static_out_[v]; }
    // First window >= from in which src -> dst exists.
    std::optional<WindowIndex> next(NodeId src, NodeId dst, WindowIndex from) const;
    const std::vector<WindowIndex>& windows(NodeId src, NodeId dst) const {
        return windows_[static_cast<std::size_t>(src) * n_ + dst];
    }

private:
    std::size_t n_;
    std::vector<std::vector<NodeId>> static_out_;
    std::vector<std::vector<WindowIndex>> windows_;
};

// Aggregates of the shortest paths from one source to every target.
struct SourcePathStats {
    NodeId source = 0;
    std::vector<std::uint64_t> total;          // [k]
    std::vector<std::uint64_t> through;        // [k * N + i]
    std::vector<std::uint64_t> held_windows;   // [k * N + i]
};

// Called once per shortest path found; `path` is only valid during the call.
using PathVisitor = std::function<void(const TemporalPath& path)>;

// Enumerates every shortest temporal path from `source` (start window 0) to every other
// node. Throws PathOverflowError when any pair exceeds kMaxPathsPerPair.
SourcePathStats enumerate_shortest_paths(const TemporalGraph& g, const EdgeTimeline& timeline, NodeId source,
                                         const PathVisitor& visitor = {});

}  // namespace tempnet
