#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tempnet/common.hpp"
#include "tempnet/trace.hpp"

namespace tempnet {

struct Edge {
    NodeId src = 0;
    NodeId dst = 0;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Sequence of T directed snapshots over windows [begin + w*t, begin + w*(t+1)), the
// last one truncated at `end`. Immutable after construction.
class TemporalGraph {
public:
    // Rows are stored as bitsets as well when node_count is at most this.
    static constexpr std::size_t kDenseThreshold = 512;

    TemporalGraph() = default;

    // Builds from per-window edge lists; duplicates and self-loops are rejected upstream.
    TemporalGraph(std::size_t node_count, Seconds window_secs, Interval interval,
                  std::vector<std::vector<Edge>> window_edges);

    std::size_t node_count() const { return n_; }
    Seconds window_secs() const { return w_; }
    Interval interval() const { return interval_; }
    WindowIndex window_count() const { return t_; }
    Seconds window_start(WindowIndex t) const { return interval_.begin + w_ * t; }

    // Sorted out-neighbours of `node` in window t.
    std::span<const NodeId> out(WindowIndex t, NodeId node) const {
        const auto base = static_cast<std::size_t>(t) * n_ + node;
        return {targets_.data() + offsets_[base], targets_.data() + offsets_[base + 1]};
    }
    // All edges of window t in (src, dst) order.
    std::vector<Edge> edges(WindowIndex t) const;
    std::size_t edge_count(WindowIndex t) const {
        const auto base = static_cast<std::size_t>(t) * n_;
        return offsets_[base + n_] - offsets_[base];
    }
    std::size_t total_edge_count() const { return targets_.size(); }
    bool has_edge(WindowIndex t, NodeId src, NodeId dst) const;

    bool has_dense() const { return !bits_.empty(); }
    std::size_t words_per_row() const { return words_; }
    // Bitset of out-neighbours; only valid when has_dense().
    const std::uint64_t* dense_row(WindowIndex t, NodeId node) const {
        return bits_.data() + (static_cast<std::size_t>(t) * n_ + node) * words_;
    }

private:
    std::size_t n_ = 0;
    Seconds w_ = 1;
    Interval interval_{};
    WindowIndex t_ = 0;
    std::vector<std::size_t> offsets_;  // CSR over (window, node)
    std::vector<NodeId> targets_;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

struct StaticGraph {
    std::size_t node_count = 0;
    std::vector<std::vector<NodeId>> out;  // sorted

    std::size_t edge_count() const;
    bool has_edge(NodeId src, NodeId dst) const;
};

// Number of windows covering `span` with width w (last window truncated).
WindowIndex window_count_for(Seconds span, Seconds w);

// Edge (i,j) is in window t iff an event i->j overlaps the window. An instantaneous event
// belongs to the window containing t_start; one ending exactly on a boundary stays out of
// the later window. Instantaneous events at the trace's own t_max land in the last window.
TemporalGraph build_temporal(const TraceMeta& meta, std::span<const ContactEvent> events, Seconds w,
                             std::optional<Interval> interval = std::nullopt);
TemporalGraph build_temporal(const Trace& trace, Seconds w, std::optional<Interval> interval = std::nullopt);

StaticGraph aggregate_static(const TemporalGraph& g);

// Weakly connected components per window. labels[t][v] is the smallest node id in v's component.
std::vector<std::vector<NodeId>> components_per_window(const TemporalGraph& g);

}  // namespace tempnet
