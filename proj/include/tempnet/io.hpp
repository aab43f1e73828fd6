#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tempnet/metrics.hpp"
#include "tempnet/paths.hpp"
#include "tempnet/sim.hpp"
#include "tempnet/tgraph.hpp"

namespace tempnet {

inline constexpr const char* kVersion = "0.1.0";

// CSV writers. Node columns use the original trace ids. When `meta` is not null it is
// written first as a `# meta: {...}` comment line.
using IdMap = std::span<const std::int64_t>;

void write_snapshots_csv(std::ostream& out, const TemporalGraph& g, IdMap ids, const nlohmann::json& meta = nullptr);
void write_components_csv(std::ostream& out, const std::vector<std::vector<NodeId>>& labels, IdMap ids,
                          const nlohmann::json& meta = nullptr);
void write_distances_csv(std::ostream& out, const TemporalDistances& d, IdMap ids, const nlohmann::json& meta = nullptr);
void write_ranking_csv(std::ostream& out, const CentralityRanking& r, IdMap ids, const nlohmann::json& meta = nullptr);
void write_efficiency_csv(std::ostream& out, const std::vector<EfficiencyPoint>& series,
                          const nlohmann::json& meta = nullptr);
void write_run_series_csv(std::ostream& out, const EpidemicRun& run, const nlohmann::json& meta = nullptr);

// Summary record of one experiment cell. tau_mean_days is null when no run was contained.
nlohmann::json summary_json(const SimConfig& cfg, const ExperimentResult& result, IdMap ids);

// Shortest round-trip decimal form, used for every floating value written to CSV.
std::string format_double(double v);

}  // namespace tempnet
