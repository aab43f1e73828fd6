#include "tempnet/paths.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "parallel.hpp"

namespace tempnet {

TemporalDistances::TemporalDistances(std::size_t n, Seconds window_secs, WindowIndex window_count)
    : n_(n), w_(window_secs), t_(window_count), d_(n * n, kNone) {
    for (NodeId i = 0; i < n; ++i) set_window(i, i, 0);
}

std::vector<NodeId> SpanningTree::path_to(NodeId target) const {
    if (target >= delivery.size() || !delivery[target]) return {};
    std::vector<NodeId> path{target};
    while (path.back() != source) path.push_back(*parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

SpanningTree temporal_bfs(const TemporalGraph& g, NodeId source, WindowIndex start_window) {
    const auto n = g.node_count();
    if (source >= n) throw std::invalid_argument("source out of range");
    if (start_window < 0 || start_window >= g.window_count()) throw std::invalid_argument("start window out of range");

    SpanningTree tree;
    tree.source = source;
    tree.start_window = start_window;
    tree.delivery.assign(n, std::nullopt);
    tree.parent.assign(n, std::nullopt);
    tree.delivery[source] = start_window;

    // ready[v]: first window in which v may transmit.
    std::vector<WindowIndex> ready(n, g.window_count());
    ready[source] = start_window;
    std::vector<NodeId> fresh;
    std::size_t reached = 1;
    for (WindowIndex t = start_window; t < g.window_count() && reached < n; ++t) {
        fresh.clear();
        for (NodeId v = 0; v < n; ++v) {
            if (ready[v] > t) continue;
            for (NodeId u : g.out(t, v)) {
                if (tree.delivery[u]) continue;
                tree.delivery[u] = t;
                tree.parent[u] = v;
                fresh.push_back(u);
            }
        }
        for (NodeId u : fresh) ready[u] = t + 1;
        reached += fresh.size();
    }
    return tree;
}

TemporalDistances all_pairs_distances(const TemporalGraph& g, unsigned threads) {
    const auto n = g.node_count();
    TemporalDistances d(n, g.window_secs(), g.window_count());
    if (n == 0) return d;
    const std::size_t words = (n + 63) / 64;

    // Sources are packed 64 per word; each word column evolves independently, so the
    // column range is split across threads. reach[j] holds the sources that reached j.
    detail::parallel_for(words, threads, [&](std::size_t word) {
        std::vector<std::uint64_t> reach(n, 0), before(n, 0);
        for (NodeId s = static_cast<NodeId>(word * 64); s < std::min<std::size_t>(n, (word + 1) * 64); ++s)
            reach[s] |= std::uint64_t{1} << (s % 64);
        for (WindowIndex t = 0; t < g.window_count(); ++t) {
            if (g.edge_count(t) == 0) continue;
            before = reach;
            for (NodeId v = 0; v < n; ++v) {
                const auto src_bits = before[v];
                if (!src_bits) continue;
                for (NodeId u : g.out(t, v)) reach[u] |= src_bits;
            }
            for (NodeId u = 0; u < n; ++u) {
                auto fresh = reach[u] & ~before[u];
                while (fresh) {
                    const int bit = std::countr_zero(fresh);
                    fresh &= fresh - 1;
                    d.set_window(static_cast<NodeId>(word * 64 + bit), u, t);
                }
            }
        }
    });
    return d;
}

std::vector<std::uint64_t> ShortestPathRecord::incidences(NodeId node, WindowIndex window_count) const {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(window_count), 0);
    for (const auto& p : paths)
        for (std::size_t m = 1; m + 1 < p.nodes.size(); ++m)
            if (p.nodes[m] == node)
                for (WindowIndex t = p.arrival[m]; t < p.arrival[m + 1]; ++t) ++counts[static_cast<std::size_t>(t)];
    return counts;
}

EdgeTimeline::EdgeTimeline(const TemporalGraph& g)
    : n_(g.node_count()), static_out_(g.node_count()), windows_(g.node_count() * g.node_count()) {
    for (WindowIndex t = 0; t < g.window_count(); ++t)
        for (NodeId v = 0; v < n_; ++v)
            for (NodeId u : g.out(t, v)) {
                auto& list = windows_[static_cast<std::size_t>(v) * n_ + u];
                if (list.empty()) static_out_[v].push_back(u);
                list.push_back(t);
            }
    for (auto& row : static_out_) std::sort(row.begin(), row.end());
}

std::optional<WindowIndex> EdgeTimeline::next(NodeId src, NodeId dst, WindowIndex from) const {
    const auto& list = windows(src, dst);
    auto it = std::lower_bound(list.begin(), list.end(), from);
    if (it == list.end()) return std::nullopt;
    return *it;
}

namespace {

constexpr WindowIndex kNoBound = -1;

// Latest window in which each node may receive and still deliver to `target` by `deadline`.
void latest_receipt(const TemporalGraph& g, NodeId source, NodeId target, WindowIndex deadline,
                    std::vector<WindowIndex>& bound) {
    std::vector<WindowIndex> late(g.node_count(), kNoBound);
    late[target] = deadline;
    for (WindowIndex t = deadline; t >= 0; --t) {
        if (g.edge_count(t) == 0) continue;
        for (NodeId v = 0; v < g.node_count(); ++v) {
            if (v == source || v == target) continue;
            for (NodeId u : g.out(t, v))
                if (late[u] >= t) {
                    late[v] = std::max(late[v], t - 1);
                    break;
                }
        }
    }
    for (NodeId v = 0; v < g.node_count(); ++v) bound[v] = std::max(bound[v], late[v]);
}

class ShortestPathSearch {
public:
    ShortestPathSearch(const TemporalGraph& g, const EdgeTimeline& timeline, NodeId source,
                       std::optional<NodeId> only_target, const PathVisitor& visitor)
        : g_(g), tl_(timeline), n_(g.node_count()), source_(source), only_(only_target), visitor_(visitor) {
        if (source >= n_) throw std::invalid_argument("source out of range");
        stats_.source = source;
        stats_.total.assign(n_, 0);
        stats_.through.assign(n_ * n_, 0);
        stats_.held_windows.assign(n_ * n_, 0);
        earliest_.assign(n_, kNoBound);
        bound_.assign(n_, kNoBound);
        if (g.window_count() == 0) return;

        const auto tree = temporal_bfs(g, source, 0);
        for (NodeId v = 0; v < n_; ++v)
            if (tree.delivery[v]) earliest_[v] = *tree.delivery[v];
        for (NodeId k = 0; k < n_; ++k) {
            if (k == source || earliest_[k] == kNoBound) continue;
            if (only_ && *only_ != k) continue;
            latest_receipt(g, source, k, earliest_[k], bound_);
        }
    }

    SourcePathStats run() {
        if (g_.window_count() == 0) return std::move(stats_);
        visited_.assign(n_, false);
        visited_[source_] = true;
        path_.nodes = {source_};
        path_.arrival = {0};
        extend(source_, 0);
        return std::move(stats_);
    }

private:
    void extend(NodeId x, WindowIndex ready) {
        for (NodeId y : tl_.static_out(x)) {
            if (visited_[y] || bound_[y] == kNoBound) continue;
            const auto hop = tl_.next(x, y, ready);
            if (!hop || *hop > bound_[y]) continue;
            path_.nodes.push_back(y);
            path_.arrival.push_back(*hop);
            if (*hop == earliest_[y] && (!only_ || *only_ == y)) record(y);
            visited_[y] = true;
            extend(y, *hop + 1);
            visited_[y] = false;
            path_.nodes.pop_back();
            path_.arrival.pop_back();
        }
    }

    void record(NodeId k) {
        if (++stats_.total[k] > kMaxPathsPerPair)
            throw PathOverflowError("more than " + std::to_string(kMaxPathsPerPair) + " shortest temporal paths from " +
                                    std::to_string(source_) + " to " + std::to_string(k));
        const auto row = static_cast<std::size_t>(k) * n_;
        for (std::size_t m = 1; m + 1 < path_.nodes.size(); ++m) {
            const auto i = path_.nodes[m];
            ++stats_.through[row + i];
            stats_.held_windows[row + i] += static_cast<std::uint64_t>(path_.arrival[m + 1] - path_.arrival[m]);
        }
        if (visitor_) visitor_(path_);
    }

    const TemporalGraph& g_;
    const EdgeTimeline& tl_;
    std::size_t n_;
    NodeId source_;
    std::optional<NodeId> only_;
    const PathVisitor& visitor_;
    std::vector<WindowIndex> earliest_, bound_;
    std::vector<bool> visited_;
    TemporalPath path_;
    SourcePathStats stats_;
};

}  // namespace

SourcePathStats enumerate_shortest_paths(const TemporalGraph& g, const EdgeTimeline& timeline, NodeId source,
                                         const PathVisitor& visitor) {
    return ShortestPathSearch(g, timeline, source, std::nullopt, visitor).run();
}

ShortestPathRecord shortest_path_records(const TemporalGraph& g, NodeId j, NodeId k) {
    const auto n = g.node_count();
    if (j >= n || k >= n) throw std::invalid_argument("node out of range");
    if (j == k) throw std::invalid_argument("shortest path records need distinct endpoints");

    ShortestPathRecord rec;
    rec.from = j;
    rec.to = k;
    const EdgeTimeline timeline(g);
    const PathVisitor collect = [&](const TemporalPath& p) { rec.paths.push_back(p); };
    auto stats = ShortestPathSearch(g, timeline, j, k, collect).run();

    rec.total = stats.total[k];
    rec.through.assign(stats.through.begin() + static_cast<std::ptrdiff_t>(k * n),
                       stats.through.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
    rec.held_windows.assign(stats.held_windows.begin() + static_cast<std::ptrdiff_t>(k * n),
                            stats.held_windows.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
    if (!rec.paths.empty()) rec.delivery = rec.paths.front().arrival.back();
    return rec;
}

}  // namespace tempnet
