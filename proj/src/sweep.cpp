#include <map>
#include <optional>

#include "tempnet/sim.hpp"

namespace tempnet {

SweepResult sweep(const Trace& trace, const SimConfig& base, const SweepAxes& axes,
                  const std::function<void(const SweepCell&)>& on_cell, bool keep_runs) {
    if (axes.cell_count() == 0) throw std::invalid_argument("sweep axes must be non-empty");

    SweepResult result;
    result.axes = axes;
    std::map<std::pair<Strategy, Seconds>, CentralityRanking> rankings;
    // Only the most recent simulation graph is kept; t_m is the outer axis.
    std::optional<std::pair<Seconds, TemporalGraph>> graph;

    std::size_t index = 0;
    for (std::size_t scenario = 0; scenario < axes.t_m.size(); ++scenario)
        for (auto delay : axes.delay)
            for (auto n_m : axes.n_m)
                for (auto n_p : axes.n_p) {
                    for (auto strategy : axes.strategies) {
                        SweepCell cell;
                        cell.index = index++;
                        cell.scenario = scenario;
                        cell.cfg = base;
                        cell.cfg.t_m = axes.t_m[scenario];
                        cell.cfg.t_p = cell.cfg.t_m + delay;
                        cell.cfg.n_m = n_m;
                        cell.cfg.n_p = n_p;
                        cell.cfg.strategy = strategy;
                        cell.cfg.validate(trace.meta);

                        const auto begin = std::min(cell.cfg.t_m, cell.cfg.t_p);
                        if (!graph || graph->first != begin) graph.emplace(begin, simulation_graph(trace, cell.cfg));

                        ExperimentOptions opts;
                        opts.scenario = scenario;
                        opts.keep_runs = keep_runs;
                        opts.graph = &graph->second;
                        if (strategy != Strategy::Random && n_p > 0) {
                            const auto key = std::make_pair(strategy, cell.cfg.t_p);
                            auto rit = rankings.find(key);
                            if (rit == rankings.end())
                                rit = rankings.emplace(key, strategy_ranking(trace, cell.cfg)).first;
                            opts.ranking = &rit->second;
                        }
                        cell.result = run_experiment(trace, cell.cfg, opts);
                        if (on_cell) on_cell(cell);
                        result.cells.push_back(std::move(cell));
                    }
                }
    return result;
}

}  // namespace tempnet
