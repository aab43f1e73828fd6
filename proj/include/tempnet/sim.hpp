#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempnet/common.hpp"
#include "tempnet/metrics.hpp"
#include "tempnet/tgraph.hpp"
#include "tempnet/trace.hpp"

namespace tempnet {

using Strategy = CentralityMetric;

enum class Scheme { Blocking, Spreading };
// Which message wins when a susceptible node receives both in one window.
enum class TieRule { Patch, Malware };

std::string_view to_string(Scheme s);
std::string_view to_string(TieRule t);
std::optional<Strategy> parse_strategy(std::string_view s);
std::optional<Scheme> parse_scheme(std::string_view s);
std::optional<TieRule> parse_tie(std::string_view s);
std::optional<BetweennessDenominator> parse_denominator(std::string_view s);
inline constexpr Strategy kAllStrategies[] = {Strategy::TemporalCloseness, Strategy::TemporalBetweenness,
                                              Strategy::StaticCloseness, Strategy::StaticBetweenness,
                                              Strategy::Random};

struct SimConfig {
    Seconds t_m = 0;
    Seconds t_p = 0;
    std::size_t n_m = 1;
    std::size_t n_p = 1;
    Strategy strategy = Strategy::TemporalCloseness;
    Scheme scheme = Scheme::Spreading;
    int h = 1;
    std::size_t runs = 100;
    std::uint64_t seed = 0;
    Seconds w = 0;  // 0: use the trace scan interval
    TieRule tie = TieRule::Patch;
    BetweennessDenominator denominator = BetweennessDenominator::ThroughNode;
    unsigned threads = 1;

    Seconds window(const TraceMeta& meta) const { return w > 0 ? w : meta.scan_interval; }
    // Throws std::invalid_argument for values outside the trace or the node set.
    void validate(const TraceMeta& meta) const;
};

enum class NodeState : std::uint8_t { Susceptible, Infected, Patched };

struct EpidemicRun {
    std::size_t node_count = 0;
    Seconds t_begin = 0;  // min(t_m, t_p), start of window 0
    Seconds t_end = 0;
    Seconds w = 1;
    Seconds t_m = 0;
    Seconds t_p = 0;
    std::uint64_t seed = 0;
    // Counts at the end of each window.
    std::vector<std::uint32_t> infected, patched, susceptible;
    std::vector<NodeState> final_state;
    // Per-window node states [t * N + v], filled only when requested.
    std::vector<NodeState> history;

    std::size_t window_count() const { return infected.size(); }
    Seconds window_start(std::size_t t) const { return t_begin + w * static_cast<Seconds>(t); }
    Seconds window_length(std::size_t t) const {
        return std::min(w, t_end - window_start(t));
    }
};

struct RunSummary {
    double auc = 0.0;    // fraction * days
    double i_max = 0.0;  // peak infected fraction
    std::optional<double> tau_days;  // empty: never contained before the trace ends
};

RunSummary summarize(const EpidemicRun& run);

struct EpidemicInputs {
    std::span<const NodeId> patch_set;
    std::span<const NodeId> malware_set;
    bool record_history = false;
};

// Dynamics on a graph whose window 0 starts at min(t_m, t_p). Each window: seed malware
// (window of t_m) then patches (window of t_p); infected nodes send malware and, under the
// spreading scheme, patched nodes send the patch along the window's contacts using states at
// window start; receptions resolve by the tie rule; h > 1 repeats the exchange within the window.
EpidemicRun run_epidemic(const TemporalGraph& g, const SimConfig& cfg, const EpidemicInputs& inputs);
EpidemicRun run_epidemic(const Trace& trace, const SimConfig& cfg, std::span<const NodeId> patch_set,
                         std::span<const NodeId> malware_set);

// Graph the epidemic runs on: G^w(min(t_m, t_p), t_max).
TemporalGraph simulation_graph(const Trace& trace, const SimConfig& cfg);

// Ranking used to choose patch nodes, over [t_p, t_max]. Not defined for the random strategy.
CentralityRanking strategy_ranking(const Trace& trace, const SimConfig& cfg);

// Top n_p nodes by the configured strategy; the random strategy samples uniformly with `seed`.
std::vector<NodeId> select_patch_nodes(const Trace& trace, const SimConfig& cfg, std::uint64_t seed = 0);

// Uniform sample of `count` distinct nodes.
std::vector<NodeId> sample_nodes(std::size_t node_count, std::size_t count, std::uint64_t seed);

// Replicate seed derivation: splitmix64 over (base, scenario, replicate). Stream 0 draws
// malware seeds, stream 1 draws random patch sets.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t scenario, std::uint64_t replicate, std::uint64_t stream = 0);

struct ExperimentResult {
    double auc_mean = 0.0;
    double imax_mean = 0.0;
    std::optional<double> tau_mean_days;  // over contained runs
    double containment_failure_frac = 0.0;
    double final_infected_mean = 0.0;
    std::vector<RunSummary> summaries;
    std::vector<EpidemicRun> runs;  // kept only when requested
    std::vector<NodeId> patch_set;  // centrality strategies only
};

struct ExperimentOptions {
    std::uint64_t scenario = 0;
    bool keep_runs = false;
    // Precomputed ranking for centrality strategies, e.g. shared across a sweep.
    const CentralityRanking* ranking = nullptr;
    const TemporalGraph* graph = nullptr;
};

ExperimentResult run_experiment(const Trace& trace, const SimConfig& cfg, const ExperimentOptions& opts = {});

struct SweepAxes {
    std::vector<Seconds> t_m;
    std::vector<Seconds> delay;  // t_p = t_m + delay
    std::vector<std::size_t> n_m;
    std::vector<std::size_t> n_p;
    std::vector<Strategy> strategies;

    std::size_t cell_count() const { return t_m.size() * delay.size() * n_m.size() * n_p.size() * strategies.size(); }
};

struct SweepCell {
    std::size_t index = 0;
    // Index of t_m. Cells differing only in delay, N_m, N_p or strategy share replicate
    // seeds; sampling is prefix-stable, so larger N_m / N_p draws extend smaller ones.
    std::size_t scenario = 0;
    SimConfig cfg;
    ExperimentResult result;
};

struct SweepResult {
    SweepAxes axes;
    std::vector<SweepCell> cells;  // ordered t_m, delay, n_m, n_p, strategy
};

// Cells run in order; `on_cell` sees each one as soon as it completes. Rankings are
// cached per (strategy, t_p). Per-run series are dropped unless keep_runs.
SweepResult sweep(const Trace& trace, const SimConfig& base, const SweepAxes& axes,
                  const std::function<void(const SweepCell&)>& on_cell = {}, bool keep_runs = false);

}  // namespace tempnet
