#include "tempnet/sim.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "parallel.hpp"

namespace tempnet {

std::string_view to_string(Scheme s) { return s == Scheme::Blocking ? "blocking" : "spreading"; }
std::string_view to_string(TieRule t) { return t == TieRule::Patch ? "patch" : "malware"; }

std::optional<Strategy> parse_strategy(std::string_view s) {
    for (auto m : kAllStrategies)
        if (to_string(m) == s) return m;
    return std::nullopt;
}

std::optional<Scheme> parse_scheme(std::string_view s) {
    if (s == "blocking") return Scheme::Blocking;
    if (s == "spreading") return Scheme::Spreading;
    return std::nullopt;
}

std::optional<TieRule> parse_tie(std::string_view s) {
    if (s == "patch") return TieRule::Patch;
    if (s == "malware") return TieRule::Malware;
    return std::nullopt;
}

std::optional<BetweennessDenominator> parse_denominator(std::string_view s) {
    if (s == "through-i") return BetweennessDenominator::ThroughNode;
    if (s == "all") return BetweennessDenominator::AllPaths;
    return std::nullopt;
}

void SimConfig::validate(const TraceMeta& meta) const {
    if (t_m < meta.t_min || t_m > meta.t_max) throw std::invalid_argument("t_m outside trace span");
    if (t_p < meta.t_min || t_p > meta.t_max) throw std::invalid_argument("t_p outside trace span");
    if (std::min(t_m, t_p) >= meta.t_max) throw std::invalid_argument("simulation interval is empty");
    if (n_m > meta.node_count) throw std::invalid_argument("N_m exceeds node count");
    if (n_p > meta.node_count) throw std::invalid_argument("N_p exceeds node count");
    if (runs < 1) throw std::invalid_argument("runs must be at least 1");
    if (h < 1) throw std::invalid_argument("h must be at least 1");
    if (window(meta) <= 0) throw std::invalid_argument("window size must be positive");
}

TemporalGraph simulation_graph(const Trace& trace, const SimConfig& cfg) {
    cfg.validate(trace.meta);
    return build_temporal(trace, cfg.window(trace.meta), Interval{std::min(cfg.t_m, cfg.t_p), trace.meta.t_max});
}

namespace {

std::size_t window_of(const TemporalGraph& g, Seconds t) {
    const auto idx = (t - g.interval().begin) / g.window_secs();
    return static_cast<std::size_t>(std::clamp<Seconds>(idx, 0, g.window_count() - 1));
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

EpidemicRun run_epidemic(const TemporalGraph& g, const SimConfig& cfg, const EpidemicInputs& inputs) {
    const auto n = g.node_count();
    for (auto v : inputs.patch_set)
        if (v >= n) throw std::invalid_argument("patch node out of range");
    for (auto v : inputs.malware_set)
        if (v >= n) throw std::invalid_argument("malware node out of range");
    if (g.window_count() == 0) throw std::invalid_argument("simulation graph has no windows");
    if (cfg.h < 1) throw std::invalid_argument("h must be at least 1");

    EpidemicRun run;
    run.node_count = n;
    run.t_begin = g.interval().begin;
    run.t_end = g.interval().end;
    run.w = g.window_secs();
    run.t_m = cfg.t_m;
    run.t_p = cfg.t_p;
    const auto windows = static_cast<std::size_t>(g.window_count());
    run.infected.reserve(windows);
    run.patched.reserve(windows);
    run.susceptible.reserve(windows);
    if (inputs.record_history) run.history.reserve(windows * n);

    const auto malware_window = window_of(g, cfg.t_m);
    const auto patch_window = window_of(g, cfg.t_p);
    const bool spread_patch = cfg.scheme == Scheme::Spreading;

    std::vector<NodeState> state(n, NodeState::Susceptible);
    std::vector<std::uint8_t> got_malware(n), got_patch(n);
    for (std::size_t t = 0; t < windows; ++t) {
        if (t == malware_window)
            for (auto v : inputs.malware_set)
                if (state[v] != NodeState::Patched) state[v] = NodeState::Infected;
        if (t == patch_window)
            for (auto v : inputs.patch_set) state[v] = NodeState::Patched;

        const auto wt = static_cast<WindowIndex>(t);
        if (g.edge_count(wt) > 0) {
            for (int round = 0; round < cfg.h; ++round) {
                std::fill(got_malware.begin(), got_malware.end(), 0);
                std::fill(got_patch.begin(), got_patch.end(), 0);
                for (NodeId v = 0; v < n; ++v) {
                    if (state[v] == NodeState::Infected)
                        for (NodeId u : g.out(wt, v)) got_malware[u] = 1;
                    else if (state[v] == NodeState::Patched && spread_patch)
                        for (NodeId u : g.out(wt, v)) got_patch[u] = 1;
                }
                bool changed = false;
                for (NodeId u = 0; u < n; ++u) {
                    if (state[u] == NodeState::Patched) continue;
                    if (got_patch[u]) {
                        const bool malware_wins =
                            cfg.tie == TieRule::Malware && state[u] == NodeState::Susceptible && got_malware[u];
                        state[u] = malware_wins ? NodeState::Infected : NodeState::Patched;
                        changed = true;
                    } else if (got_malware[u] && state[u] == NodeState::Susceptible) {
                        state[u] = NodeState::Infected;
                        changed = true;
                    }
                }
                if (!changed) break;
            }
        }

        std::uint32_t inf = 0, pat = 0;
        for (auto s : state) {
            inf += s == NodeState::Infected;
            pat += s == NodeState::Patched;
        }
        run.infected.push_back(inf);
        run.patched.push_back(pat);
        run.susceptible.push_back(static_cast<std::uint32_t>(n) - inf - pat);
        if (inputs.record_history) run.history.insert(run.history.end(), state.begin(), state.end());
    }
    run.final_state = std::move(state);
    return run;
}

EpidemicRun run_epidemic(const Trace& trace, const SimConfig& cfg, std::span<const NodeId> patch_set,
                         std::span<const NodeId> malware_set) {
    const auto g = simulation_graph(trace, cfg);
    return run_epidemic(g, cfg, EpidemicInputs{patch_set, malware_set});
}

RunSummary summarize(const EpidemicRun& run) {
    RunSummary s;
    if (run.node_count == 0 || run.window_count() == 0) return s;
    const double n = static_cast<double>(run.node_count);
    for (std::size_t t = 0; t < run.window_count(); ++t) {
        const double frac = run.infected[t] / n;
        s.auc += frac * static_cast<double>(run.window_length(t)) / kSecondsPerDay;
        s.i_max = std::max(s.i_max, frac);
    }
    const auto first = static_cast<std::size_t>(
        std::clamp<Seconds>((run.t_m - run.t_begin) / run.w, 0, static_cast<Seconds>(run.window_count()) - 1));
    for (std::size_t t = first; t < run.window_count(); ++t)
        if (run.infected[t] == 0) {
            const auto elapsed = std::max<Seconds>(0, run.window_start(t) - run.t_p);
            s.tau_days = static_cast<double>(elapsed) / kSecondsPerDay;
            break;
        }
    return s;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t scenario, std::uint64_t replicate, std::uint64_t stream) {
    std::uint64_t x = splitmix64(base);
    x = splitmix64(x ^ splitmix64(scenario));
    x = splitmix64(x ^ splitmix64(replicate ^ 0xA5A5A5A5A5A5A5A5ull));
    return splitmix64(x ^ stream);
}

std::vector<NodeId> sample_nodes(std::size_t node_count, std::size_t count, std::uint64_t seed) {
    if (count > node_count) throw std::invalid_argument("sample larger than node set");
    std::vector<NodeId> pool(node_count);
    std::iota(pool.begin(), pool.end(), NodeId{0});
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, node_count - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(count);
    return pool;
}

CentralityRanking strategy_ranking(const Trace& trace, const SimConfig& cfg) {
    if (cfg.t_p >= trace.meta.t_max) throw std::invalid_argument("empty patch-selection interval [t_p, t_max]");
    const auto g = build_temporal(trace, cfg.window(trace.meta), Interval{cfg.t_p, trace.meta.t_max});
    switch (cfg.strategy) {
        case Strategy::TemporalCloseness: return temporal_closeness(g, cfg.threads);
        case Strategy::TemporalBetweenness: return temporal_betweenness(g, {cfg.denominator, cfg.threads});
        case Strategy::StaticBetweenness: return static_centralities(aggregate_static(g), g.interval()).first;
        case Strategy::StaticCloseness: return static_centralities(aggregate_static(g), g.interval()).second;
        case Strategy::Random: break;
    }
    throw std::invalid_argument("random strategy has no ranking");
}

std::vector<NodeId> select_patch_nodes(const Trace& trace, const SimConfig& cfg, std::uint64_t seed) {
    if (cfg.n_p > trace.meta.node_count) throw std::invalid_argument("N_p exceeds node count");
    if (cfg.t_p >= trace.meta.t_max) throw std::invalid_argument("empty patch-selection interval [t_p, t_max]");
    if (cfg.n_p == 0) return {};
    if (cfg.strategy == Strategy::Random) return sample_nodes(trace.meta.node_count, cfg.n_p, seed);
    return strategy_ranking(trace, cfg).top(cfg.n_p);
}

ExperimentResult run_experiment(const Trace& trace, const SimConfig& cfg, const ExperimentOptions& opts) {
    cfg.validate(trace.meta);
    const auto n = trace.meta.node_count;

    std::optional<TemporalGraph> own_graph;
    if (!opts.graph) own_graph = simulation_graph(trace, cfg);
    const TemporalGraph& g = opts.graph ? *opts.graph : *own_graph;

    ExperimentResult result;
    const bool random = cfg.strategy == Strategy::Random;
    if (!random && cfg.n_p > 0) {
        if (cfg.t_p >= trace.meta.t_max) throw std::invalid_argument("empty patch-selection interval [t_p, t_max]");
        result.patch_set = opts.ranking ? opts.ranking->top(cfg.n_p) : strategy_ranking(trace, cfg).top(cfg.n_p);
    }

    std::vector<RunSummary> summaries(cfg.runs);
    std::vector<EpidemicRun> runs(opts.keep_runs ? cfg.runs : 0);
    std::vector<double> final_infected(cfg.runs);
    detail::parallel_for(cfg.runs, cfg.threads, [&](std::size_t r) {
        const auto malware = sample_nodes(n, cfg.n_m, derive_seed(cfg.seed, opts.scenario, r, 0));
        std::vector<NodeId> patch =
            random ? sample_nodes(n, cfg.n_p, derive_seed(cfg.seed, opts.scenario, r, 1)) : result.patch_set;
        auto run = run_epidemic(g, cfg, EpidemicInputs{patch, malware});
        run.seed = derive_seed(cfg.seed, opts.scenario, r, 0);
        summaries[r] = summarize(run);
        final_infected[r] = static_cast<double>(run.infected.back()) / static_cast<double>(n);
        if (opts.keep_runs) runs[r] = std::move(run);
    });

    double tau_sum = 0.0;
    std::size_t contained = 0;
    for (std::size_t r = 0; r < cfg.runs; ++r) {
        result.auc_mean += summaries[r].auc;
        result.imax_mean += summaries[r].i_max;
        result.final_infected_mean += final_infected[r];
        if (summaries[r].tau_days) {
            tau_sum += *summaries[r].tau_days;
            ++contained;
        }
    }
    const auto count = static_cast<double>(cfg.runs);
    result.auc_mean /= count;
    result.imax_mean /= count;
    result.final_infected_mean /= count;
    if (contained > 0) result.tau_mean_days = tau_sum / static_cast<double>(contained);
    result.containment_failure_frac = static_cast<double>(cfg.runs - contained) / count;
    result.summaries = std::move(summaries);
    result.runs = std::move(runs);
    return result;
}

}  // namespace tempnet
