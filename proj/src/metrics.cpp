#include "tempnet/metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

#include "parallel.hpp"

namespace tempnet {

std::string_view to_string(CentralityMetric m) {
    switch (m) {
        case CentralityMetric::TemporalBetweenness: return "temporal-betweenness";
        case CentralityMetric::TemporalCloseness: return "temporal-closeness";
        case CentralityMetric::StaticBetweenness: return "static-betweenness";
        case CentralityMetric::StaticCloseness: return "static-closeness";
        case CentralityMetric::Random: return "random";
    }
    return "unknown";
}

std::string_view to_string(BetweennessDenominator d) {
    return d == BetweennessDenominator::ThroughNode ? "through-i" : "all";
}

std::vector<NodeId> CentralityRanking::top(std::size_t count) const {
    count = std::min(count, order.size());
    return {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count)};
}

CentralityRanking make_ranking(CentralityMetric metric, Interval interval, std::vector<Rational> exact) {
    CentralityRanking r;
    r.metric = metric;
    r.interval = interval;
    r.exact = std::move(exact);
    const auto n = r.exact.size();
    r.score.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.score[i] = to_double(r.exact[i]);
    r.order.resize(n);
    std::iota(r.order.begin(), r.order.end(), NodeId{0});
    std::stable_sort(r.order.begin(), r.order.end(),
                     [&](NodeId a, NodeId b) { return r.exact[a] > r.exact[b]; });
    r.rank.resize(n);
    for (std::size_t pos = 0; pos < n; ++pos) r.rank[r.order[pos]] = pos;
    return r;
}

EfficiencyReport temporal_efficiency(const TemporalDistances& d, Interval interval) {
    const auto n = d.node_count();
    if (n < 2) throw std::invalid_argument("temporal efficiency needs at least 2 nodes");
    EfficiencyReport rep;
    rep.interval = interval;
    rep.node_count = n;
    rep.pairwise.assign(n * n, 0.0);

    // Pairs grouped by delivery window keep the exact sum to at most T terms.
    std::map<WindowIndex, std::uint64_t> histogram;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j) {
            if (i == j) continue;
            if (const auto wk = d.window(i, j)) {
                rep.pairwise[static_cast<std::size_t>(i) * n + j] = 1.0 / (static_cast<double>(*wk) + 1.0);
                ++histogram[*wk];
            }
        }
    Rational sum = 0;
    for (const auto& [wk, count] : histogram) sum += Rational(count, wk + 1);
    rep.average_exact = sum / Rational(n * (n - 1));
    rep.average = to_double(rep.average_exact);
    return rep;
}

EfficiencyReport temporal_efficiency(const TemporalGraph& g, unsigned threads) {
    if (g.node_count() < 2) throw std::invalid_argument("temporal efficiency needs at least 2 nodes");
    return temporal_efficiency(all_pairs_distances(g, threads), g.interval());
}

std::vector<EfficiencyPoint> sliding_efficiency(const Trace& trace, Seconds w, Seconds span, Seconds stride,
                                                unsigned threads) {
    if (w <= 0) throw std::invalid_argument("window size must be positive");
    if (span < w) throw std::invalid_argument("sliding span must be at least one window");
    if (stride < w) throw std::invalid_argument("sliding stride must be at least one window");
    const auto& meta = trace.meta;

    std::vector<Seconds> starts;
    if (span >= meta.t_max - meta.t_min) {
        starts.push_back(meta.t_min);
        span = meta.t_max - meta.t_min;
    } else {
        for (Seconds t = meta.t_min; t + span <= meta.t_max; t += stride) starts.push_back(t);
    }

    std::vector<EfficiencyPoint> series(starts.size());
    detail::parallel_for(starts.size(), threads, [&](std::size_t idx) {
        const Interval iv{starts[idx], starts[idx] + span};
        const auto g = build_temporal(trace, w, iv);
        series[idx] = {iv.begin, temporal_efficiency(all_pairs_distances(g), iv).average};
    });
    return series;
}

namespace {

void require_betweenness_size(const TemporalGraph& g) {
    if (g.node_count() < 3) throw std::invalid_argument("temporal betweenness needs at least 3 nodes");
}

std::uint64_t denominator_for(const SourcePathStats& stats, std::size_t n, NodeId k, NodeId i,
                              BetweennessDenominator mode) {
    return mode == BetweennessDenominator::ThroughNode ? stats.through[static_cast<std::size_t>(k) * n + i]
                                                       : stats.total[k];
}

}  // namespace

CentralityRanking temporal_betweenness(const TemporalGraph& g, const BetweennessOptions& opts) {
    require_betweenness_size(g);
    const auto n = g.node_count();
    const EdgeTimeline timeline(g);

    // Partial sums per source, merged in source order so the result is thread-count independent.
    std::vector<std::vector<Rational>> partial(n);
    detail::parallel_for(n, opts.threads, [&](std::size_t j) {
        const auto stats = enumerate_shortest_paths(g, timeline, static_cast<NodeId>(j));
        auto& acc = partial[j];
        acc.assign(n, Rational(0));
        for (NodeId k = 0; k < n; ++k) {
            if (k == j || stats.total[k] == 0) continue;
            for (NodeId i = 0; i < n; ++i) {
                const auto held = stats.held_windows[static_cast<std::size_t>(k) * n + i];
                if (held == 0) continue;
                acc[i] += Rational(held, denominator_for(stats, n, k, i, opts.denominator));
            }
        }
    });

    std::vector<Rational> score(n, Rational(0));
    for (const auto& acc : partial)
        for (std::size_t i = 0; i < n; ++i) score[i] += acc[i];
    const Rational scale(static_cast<std::int64_t>(g.window_count()) * static_cast<std::int64_t>((n - 1) * (n - 2)));
    for (auto& s : score) s /= scale;
    return make_ranking(CentralityMetric::TemporalBetweenness, g.interval(), std::move(score));
}

std::vector<std::vector<Rational>> temporal_betweenness_per_window(const TemporalGraph& g,
                                                                   const BetweennessOptions& opts) {
    require_betweenness_size(g);
    const auto n = g.node_count();
    const auto windows = static_cast<std::size_t>(g.window_count());
    const EdgeTimeline timeline(g);
    std::vector<std::vector<Rational>> per_window(windows, std::vector<Rational>(n, Rational(0)));

    for (NodeId j = 0; j < n; ++j) {
        // (k, i, t) -> U(i, t, j, k)
        std::map<std::tuple<NodeId, NodeId, WindowIndex>, std::uint64_t> incidence;
        const PathVisitor visit = [&](const TemporalPath& p) {
            const auto k = p.nodes.back();
            for (std::size_t m = 1; m + 1 < p.nodes.size(); ++m)
                for (WindowIndex t = p.arrival[m]; t < p.arrival[m + 1]; ++t) ++incidence[{k, p.nodes[m], t}];
        };
        const auto stats = enumerate_shortest_paths(g, timeline, j, visit);
        for (const auto& [key, count] : incidence) {
            const auto [k, i, t] = key;
            per_window[static_cast<std::size_t>(t)][i] += Rational(count, denominator_for(stats, n, k, i, opts.denominator));
        }
    }
    const Rational scale(static_cast<std::int64_t>((n - 1) * (n - 2)));
    for (auto& row : per_window)
        for (auto& v : row) v /= scale;
    return per_window;
}

CentralityRanking temporal_closeness(const TemporalDistances& d, Interval interval) {
    const auto n = d.node_count();
    if (n < 2) throw std::invalid_argument("temporal closeness needs at least 2 nodes");
    // Distances and the normalizing span are both taken in windows; the ratio equals the
    // seconds-based one since W = w*T.
    const std::int64_t span = d.window_count();
    const std::int64_t denom = span * static_cast<std::int64_t>(n - 1);
    std::vector<Rational> score(n);
    for (NodeId i = 0; i < n; ++i) {
        std::int64_t sum = 0;
        for (NodeId j = 0; j < n; ++j) {
            if (i == j) continue;
            const auto wk = d.window(i, j);
            sum += wk ? std::min<std::int64_t>(*wk, span) : span;
        }
        score[i] = denom == 0 ? Rational(0) : Rational(denom - sum, denom);
    }
    return make_ranking(CentralityMetric::TemporalCloseness, interval, std::move(score));
}

CentralityRanking temporal_closeness(const TemporalGraph& g, unsigned threads) {
    if (g.node_count() < 2) throw std::invalid_argument("temporal closeness needs at least 2 nodes");
    return temporal_closeness(all_pairs_distances(g, threads), g.interval());
}

std::vector<int> static_hops_from(const StaticGraph& s, NodeId source) {
    std::vector<int> dist(s.node_count, -1);
    std::queue<NodeId> q;
    dist[source] = 0;
    q.push(source);
    while (!q.empty()) {
        const auto v = q.front();
        q.pop();
        for (NodeId u : s.out[v])
            if (dist[u] < 0) {
                dist[u] = dist[v] + 1;
                q.push(u);
            }
    }
    return dist;
}

std::pair<CentralityRanking, CentralityRanking> static_centralities(const StaticGraph& s, Interval interval) {
    using boost::multiprecision::cpp_int;
    const auto n = s.node_count;
    if (n < 3) throw std::invalid_argument("static centralities need at least 3 nodes");

    // Brandes accumulation with exact path counts.
    std::vector<Rational> between(n, Rational(0));
    std::vector<Rational> close(n);
    for (NodeId src = 0; src < n; ++src) {
        std::vector<int> dist(n, -1);
        std::vector<cpp_int> sigma(n, 0);
        std::vector<std::vector<NodeId>> preds(n);
        std::vector<NodeId> stack;
        std::queue<NodeId> q;
        dist[src] = 0;
        sigma[src] = 1;
        q.push(src);
        while (!q.empty()) {
            const auto v = q.front();
            q.pop();
            stack.push_back(v);
            for (NodeId u : s.out[v]) {
                if (dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    q.push(u);
                }
                if (dist[u] == dist[v] + 1) {
                    sigma[u] += sigma[v];
                    preds[u].push_back(v);
                }
            }
        }
        std::vector<Rational> delta(n, Rational(0));
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            const auto w = *it;
            for (NodeId v : preds[w]) delta[v] += Rational(sigma[v], sigma[w]) * (1 + delta[w]);
            if (w != src) between[w] += delta[w];
        }

        std::int64_t sum = 0;
        for (NodeId j = 0; j < n; ++j)
            if (j != src) sum += dist[j] < 0 ? static_cast<std::int64_t>(n) : dist[j];
        const auto denom = static_cast<std::int64_t>(n * (n - 1));
        close[src] = Rational(denom - sum, denom);
    }
    const Rational scale(static_cast<std::int64_t>((n - 1) * (n - 2)));
    for (auto& b : between) b /= scale;
    return {make_ranking(CentralityMetric::StaticBetweenness, interval, std::move(between)),
            make_ranking(CentralityMetric::StaticCloseness, interval, std::move(close))};
}

}  // namespace tempnet
