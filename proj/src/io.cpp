#include "tempnet/io.hpp"

#include <charconv>
#include <ostream>

namespace tempnet {

namespace {

void write_meta(std::ostream& out, const nlohmann::json& meta) {
    if (!meta.is_null()) out << "# meta: " << meta.dump() << '\n';
}

std::int64_t orig(IdMap ids, NodeId v) { return v < ids.size() ? ids[v] : static_cast<std::int64_t>(v); }

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void write_snapshots_csv(std::ostream& out, const TemporalGraph& g, IdMap ids, const nlohmann::json& meta) {
    write_meta(out, meta);
    out << "window,src,dst\n";
    for (WindowIndex t = 0; t < g.window_count(); ++t)
        for (const auto& e : g.edges(t)) out << t << ',' << orig(ids, e.src) << ',' << orig(ids, e.dst) << '\n';
}

void write_components_csv(std::ostream& out, const std::vector<std::vector<NodeId>>& labels, IdMap ids,
                          const nlohmann::json& meta) {
    write_meta(out, meta);
    out << "window,component_id,node\n";
    for (std::size_t t = 0; t < labels.size(); ++t)
        for (NodeId v = 0; v < labels[t].size(); ++v)
            out << t << ',' << orig(ids, labels[t][v]) << ',' << orig(ids, v) << '\n';
}

void write_distances_csv(std::ostream& out, const TemporalDistances& d, IdMap ids, const nlohmann::json& meta) {
    write_meta(out, meta);
    out << "src,dst,delivery_seconds\n";
    for (NodeId i = 0; i < d.node_count(); ++i)
        for (NodeId j = 0; j < d.node_count(); ++j) {
            out << orig(ids, i) << ',' << orig(ids, j) << ',';
            if (const auto s = d.seconds(i, j)) out << *s;
            else out << "inf";
            out << '\n';
        }
}

void write_ranking_csv(std::ostream& out, const CentralityRanking& r, IdMap ids, const nlohmann::json& meta) {
    write_meta(out, meta);
    out << "node,score,rank\n";
    for (std::size_t pos = 0; pos < r.order.size(); ++pos) {
        const auto v = r.order[pos];
        out << orig(ids, v) << ',' << format_double(r.score[v]) << ',' << pos << '\n';
    }
}

void write_efficiency_csv(std::ostream& out, const std::vector<EfficiencyPoint>& series, const nlohmann::json& meta) {
    write_meta(out, meta);
    out << "t,efficiency\n";
    for (const auto& p : series) out << p.t << ',' << format_double(p.efficiency) << '\n';
}

void write_run_series_csv(std::ostream& out, const EpidemicRun& run, const nlohmann::json& meta) {
    write_meta(out, meta);
    out << "t_seconds,infected_frac,patched_frac,susceptible_frac\n";
    const double n = static_cast<double>(run.node_count);
    for (std::size_t t = 0; t < run.window_count(); ++t)
        out << run.window_start(t) << ',' << format_double(run.infected[t] / n) << ','
            << format_double(run.patched[t] / n) << ',' << format_double(run.susceptible[t] / n) << '\n';
}

nlohmann::json summary_json(const SimConfig& cfg, const ExperimentResult& result, IdMap ids) {
    nlohmann::json j;
    j["strategy"] = std::string(to_string(cfg.strategy));
    j["scheme"] = std::string(to_string(cfg.scheme));
    j["t_m"] = cfg.t_m;
    j["t_p"] = cfg.t_p;
    j["n_m"] = cfg.n_m;
    j["n_p"] = cfg.n_p;
    j["h"] = cfg.h;
    j["runs"] = cfg.runs;
    j["seed"] = cfg.seed;
    j["auc_mean"] = result.auc_mean;
    j["imax_mean"] = result.imax_mean;
    j["tau_mean_days"] = result.tau_mean_days ? nlohmann::json(*result.tau_mean_days) : nlohmann::json(nullptr);
    j["containment_failure_frac"] = result.containment_failure_frac;
    j["final_infected_mean"] = result.final_infected_mean;
    auto patch = nlohmann::json::array();
    for (auto v : result.patch_set) patch.push_back(orig(ids, v));
    j["patch_set"] = patch;
    return j;
}

}  // namespace tempnet
