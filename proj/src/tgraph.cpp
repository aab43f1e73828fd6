#include "tempnet/tgraph.hpp"

#include <algorithm>
#include <numeric>

namespace tempnet {

namespace {

Seconds floor_div(Seconds a, Seconds b) {
    Seconds q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Seconds ceil_div(Seconds a, Seconds b) { return -floor_div(-a, b); }

struct WindowEdge {
    WindowIndex t;
    NodeId src;
    NodeId dst;
    friend auto operator<=>(const WindowEdge&, const WindowEdge&) = default;
};

}  // namespace

WindowIndex window_count_for(Seconds span, Seconds w) {
    if (w <= 0) throw std::invalid_argument("window size must be positive");
    if (span <= 0) return 0;
    return static_cast<WindowIndex>(ceil_div(span, w));
}

TemporalGraph::TemporalGraph(std::size_t node_count, Seconds window_secs, Interval interval,
                             std::vector<std::vector<Edge>> window_edges)
    : n_(node_count), w_(window_secs), interval_(interval), t_(static_cast<WindowIndex>(window_edges.size())) {
    offsets_.assign(static_cast<std::size_t>(t_) * n_ + 1, 0);
    std::size_t total = 0;
    for (auto& edges : window_edges) {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        total += edges.size();
    }
    targets_.reserve(total);
    std::size_t pos = 0;
    for (WindowIndex t = 0; t < t_; ++t) {
        const auto& edges = window_edges[static_cast<std::size_t>(t)];
        std::size_t e = 0;
        for (NodeId v = 0; v < n_; ++v) {
            offsets_[static_cast<std::size_t>(t) * n_ + v] = pos;
            while (e < edges.size() && edges[e].src == v) {
                if (edges[e].dst >= n_ || edges[e].dst == v) throw std::invalid_argument("invalid edge in snapshot");
                targets_.push_back(edges[e].dst);
                ++e, ++pos;
            }
        }
        if (e != edges.size()) throw std::invalid_argument("edge source out of range");
    }
    offsets_.back() = pos;

    if (n_ > 0 && n_ <= kDenseThreshold) {
        words_ = (n_ + 63) / 64;
        bits_.assign(static_cast<std::size_t>(t_) * n_ * words_, 0);
        for (WindowIndex t = 0; t < t_; ++t)
            for (NodeId v = 0; v < n_; ++v) {
                auto* row = bits_.data() + (static_cast<std::size_t>(t) * n_ + v) * words_;
                for (NodeId u : out(t, v)) row[u / 64] |= std::uint64_t{1} << (u % 64);
            }
    }
}

std::vector<Edge> TemporalGraph::edges(WindowIndex t) const {
    std::vector<Edge> result;
    result.reserve(edge_count(t));
    for (NodeId v = 0; v < n_; ++v)
        for (NodeId u : out(t, v)) result.push_back({v, u});
    return result;
}

bool TemporalGraph::has_edge(WindowIndex t, NodeId src, NodeId dst) const {
    const auto row = out(t, src);
    return std::binary_search(row.begin(), row.end(), dst);
}

std::size_t StaticGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& row : out) total += row.size();
    return total;
}

bool StaticGraph::has_edge(NodeId src, NodeId dst) const {
    const auto& row = out.at(src);
    return std::binary_search(row.begin(), row.end(), dst);
}

TemporalGraph build_temporal(const TraceMeta& meta, std::span<const ContactEvent> events, Seconds w,
                             std::optional<Interval> interval) {
    if (w <= 0) throw std::invalid_argument("window size must be positive");
    const Interval iv = interval.value_or(meta.span());
    if (iv.empty()) throw std::invalid_argument("empty interval");
    if (iv.begin < meta.t_min || iv.end > meta.t_max) throw std::invalid_argument("interval outside trace span");

    const WindowIndex windows = window_count_for(iv.length(), w);
    const bool closed_end = iv.end == meta.t_max;
    std::vector<WindowEdge> hits;
    for (const auto& e : events) {
        if (e.src >= meta.node_count || e.dst >= meta.node_count) throw std::invalid_argument("event node out of range");
        Seconds first = 0, last = 0;
        if (e.t_start == e.t_end) {
            if (e.t_start < iv.begin || e.t_start > iv.end) continue;
            if (e.t_start == iv.end) {
                if (!closed_end) continue;
                first = last = windows - 1;
            } else {
                first = last = floor_div(e.t_start - iv.begin, w);
            }
        } else {
            if (e.t_start >= iv.end || e.t_end <= iv.begin) continue;
            first = std::max<Seconds>(0, floor_div(e.t_start - iv.begin, w));
            last = std::min<Seconds>(windows - 1, ceil_div(e.t_end - iv.begin, w) - 1);
        }
        for (Seconds t = first; t <= last; ++t) hits.push_back({static_cast<WindowIndex>(t), e.src, e.dst});
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());

    std::vector<std::vector<Edge>> window_edges(static_cast<std::size_t>(windows));
    for (const auto& h : hits) window_edges[static_cast<std::size_t>(h.t)].push_back({h.src, h.dst});
    return TemporalGraph(meta.node_count, w, iv, std::move(window_edges));
}

TemporalGraph build_temporal(const Trace& trace, Seconds w, std::optional<Interval> interval) {
    return build_temporal(trace.meta, trace.events, w, interval);
}

StaticGraph aggregate_static(const TemporalGraph& g) {
    StaticGraph s;
    s.node_count = g.node_count();
    s.out.resize(g.node_count());
    for (WindowIndex t = 0; t < g.window_count(); ++t)
        for (NodeId v = 0; v < g.node_count(); ++v) {
            const auto row = g.out(t, v);
            s.out[v].insert(s.out[v].end(), row.begin(), row.end());
        }
    for (auto& row : s.out) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return s;
}

std::vector<std::vector<NodeId>> components_per_window(const TemporalGraph& g) {
    const auto n = g.node_count();
    std::vector<std::vector<NodeId>> labels(static_cast<std::size_t>(g.window_count()));
    std::vector<NodeId> parent(n);
    auto find = [&](NodeId v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (WindowIndex t = 0; t < g.window_count(); ++t) {
        std::iota(parent.begin(), parent.end(), NodeId{0});
        for (NodeId v = 0; v < n; ++v)
            for (NodeId u : g.out(t, v)) {
                auto a = find(v), b = find(u);
                // The root is always the smallest id, so it doubles as the label.
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }
        auto& row = labels[static_cast<std::size_t>(t)];
        row.resize(n);
        for (NodeId v = 0; v < n; ++v) row[v] = find(v);
    }
    return labels;
}

}  // namespace tempnet
