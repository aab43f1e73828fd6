#include "tempnet/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "tempnet/io.hpp"
#include "tempnet/metrics.hpp"
#include "tempnet/sim.hpp"
#include "tempnet/tgraph.hpp"
#include "tempnet/trace.hpp"

namespace tempnet::cli {

using nlohmann::json;

Seconds parse_duration(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty duration");
    Seconds total = 0;
    bool any_unit = false;
    std::size_t pos = 0;
    bool negative = false;
    if (text.front() == '-') {
        negative = true;
        pos = 1;
        if (text.size() == 1) throw std::invalid_argument("empty duration");
    }
    while (pos < text.size()) {
        Seconds value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
        if (ec != std::errc{}) throw std::invalid_argument("bad duration '" + std::string(text) + "'");
        pos = static_cast<std::size_t>(ptr - text.data());
        if (pos == text.size()) {
            if (any_unit) throw std::invalid_argument("missing unit in duration '" + std::string(text) + "'");
            total = value;
            break;
        }
        Seconds unit = 0;
        switch (text[pos]) {
            case 'd': unit = kSecondsPerDay; break;
            case 'h': unit = 3600; break;
            case 'm': unit = 60; break;
            case 's': unit = 1; break;
            default: throw std::invalid_argument("bad duration unit in '" + std::string(text) + "'");
        }
        total += value * unit;
        any_unit = true;
        ++pos;
    }
    return negative ? -total : total;
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto end = text.find(sep, start);
        parts.push_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return parts;
}

template <class Parse>
std::vector<Seconds> parse_list(std::string_view text, Parse parse_one) {
    std::vector<Seconds> values;
    for (auto item : split(text, ',')) {
        const auto range = split(item, ':');
        if (range.size() == 1) {
            values.push_back(parse_one(item));
        } else if (range.size() == 2 || range.size() == 3) {
            const Seconds lo = parse_one(range[0]), hi = parse_one(range[1]);
            const Seconds step = range.size() == 3 ? parse_one(range[2]) : 1;
            if (step <= 0 || hi < lo) throw std::invalid_argument("bad range '" + std::string(item) + "'");
            for (Seconds v = lo; v <= hi; v += step) values.push_back(v);
        } else {
            throw std::invalid_argument("bad list item '" + std::string(item) + "'");
        }
    }
    return values;
}

Seconds parse_count(std::string_view s) {
    Seconds v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0)
        throw std::invalid_argument("bad count '" + std::string(s) + "'");
    return v;
}

}  // namespace

std::vector<Seconds> parse_duration_list(std::string_view text) { return parse_list(text, parse_duration); }

std::vector<std::size_t> parse_count_list(std::string_view text) {
    std::vector<std::size_t> out;
    for (auto v : parse_list(text, parse_count)) out.push_back(static_cast<std::size_t>(v));
    return out;
}

namespace {

struct Globals {
    std::string window;
    std::uint64_t seed = 0;
    std::string out;
    unsigned threads = 0;
};

json make_meta(std::string_view command, const json& flags, std::uint64_t seed) {
    return json{{"tool", "tempnet"}, {"version", kVersion}, {"command", command}, {"flags", flags}, {"seed", seed}};
}

// Writes to --out when given, else to the command's stdout stream.
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            stream_ = &fallback;
        } else {
            file_.open(path);
            if (!file_) throw DataError("cannot write " + path);
            stream_ = &file_;
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

Seconds window_for(const Globals& g, const Trace& trace) {
    if (g.window.empty()) return trace.meta.scan_interval;
    const auto w = parse_duration(g.window);
    if (w <= 0) throw std::invalid_argument("--window-secs must be positive");
    return w;
}

// CLI times are offsets from the trace start.
Seconds absolute(const Trace& trace, const std::string& offset, Seconds fallback) {
    return offset.empty() ? fallback : trace.meta.t_min + parse_duration(offset);
}

struct GenFlags {
    SynthConfig cfg;
};

int cmd_gen(const Globals& g, GenFlags flags, std::ostream& out) {
    flags.cfg.seed = g.seed;
    try {
        flags.cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("gen", e.what());
    }
    const auto trace = generate_synthetic(flags.cfg);
    const auto& c = flags.cfg;
    const json cfg_json{{"nodes", c.nodes},
                        {"days", c.days},
                        {"day_start_hour", c.day_start_hour},
                        {"day_end_hour", c.day_end_hour},
                        {"day_rate", c.day_contact_rate},
                        {"night_rate", c.night_contact_rate},
                        {"clusters", c.cluster_count},
                        {"scan_interval", c.scan_interval}};
    const auto meta = make_meta("gen", cfg_json, c.seed);

    Output sink(g.out, out);
    write_trace(*sink, trace, {"meta: " + meta.dump()});
    if (!g.out.empty()) {
        std::ofstream mf(g.out + ".meta.json");
        if (!mf) throw DataError("cannot write " + g.out + ".meta.json");
        json m = meta;
        m["trace"] = {{"node_count", trace.meta.node_count},
                      {"t_min", trace.meta.t_min},
                      {"t_max", trace.meta.t_max},
                      {"scan_interval", trace.meta.scan_interval},
                      {"events", trace.events.size()}};
        mf << m.dump(2) << '\n';
    }
    return kOk;
}

struct MetricsFlags {
    std::string trace_path;
    std::string metric;
    std::string from, to;
    std::string span = "24h", stride = "1h";
    std::string denominator = "through-i";
};

int cmd_metrics(const Globals& g, const MetricsFlags& f, std::ostream& out) {
    const auto trace = parse_trace(f.trace_path);
    const auto w = window_for(g, trace);
    const Interval iv{absolute(trace, f.from, trace.meta.t_min), absolute(trace, f.to, trace.meta.t_max)};
    if (iv.empty() || iv.begin < trace.meta.t_min || iv.end > trace.meta.t_max)
        throw std::invalid_argument("invalid interval [" + std::to_string(iv.begin) + ", " + std::to_string(iv.end) + ")");
    const auto denom = parse_denominator(f.denominator);

    json flags{{"trace", f.trace_path}, {"metric", f.metric}, {"window_secs", w}, {"from", iv.begin}, {"to", iv.end}};
    if (f.metric == "sliding-teff") {
        flags["span"] = parse_duration(f.span);
        flags["stride"] = parse_duration(f.stride);
    }
    if (f.metric == "tbet") flags["betweenness_denominator"] = f.denominator;
    const auto meta = make_meta("metrics", flags, g.seed);
    Output sink(g.out, out);
    const IdMap ids = trace.original_ids;

    if (f.metric == "sliding-teff") {
        Trace clipped = trace;
        clipped.meta.t_min = iv.begin;
        clipped.meta.t_max = iv.end;
        write_efficiency_csv(*sink, sliding_efficiency(clipped, w, parse_duration(f.span), parse_duration(f.stride), g.threads),
                             meta);
        return kOk;
    }

    const auto graph = build_temporal(trace, w, iv);
    if (f.metric == "teff") {
        write_efficiency_csv(*sink, {{iv.begin, temporal_efficiency(graph, g.threads).average}}, meta);
    } else if (f.metric == "tclose") {
        write_ranking_csv(*sink, temporal_closeness(graph, g.threads), ids, meta);
    } else if (f.metric == "tbet") {
        write_ranking_csv(*sink, temporal_betweenness(graph, {*denom, g.threads}), ids, meta);
    } else if (f.metric == "sbet" || f.metric == "sclose") {
        const auto [bet, close] = static_centralities(aggregate_static(graph), iv);
        write_ranking_csv(*sink, f.metric == "sbet" ? bet : close, ids, meta);
    } else if (f.metric == "components") {
        write_components_csv(*sink, components_per_window(graph), ids, meta);
    } else if (f.metric == "distances") {
        write_distances_csv(*sink, all_pairs_distances(graph, g.threads), ids, meta);
    } else if (f.metric == "snapshots") {
        write_snapshots_csv(*sink, graph, ids, meta);
    }
    return kOk;
}

struct SimFlags {
    std::string trace_path;
    std::string tm, tp, delay;
    std::string nm = "1", np = "1";
    std::string strategy = "temporal-closeness";
    std::string strategies = "all";
    std::string scheme = "spreading";
    std::size_t runs = 100;
    int h = 1;
    std::string tie = "patch";
    std::string denominator = "through-i";
    std::string series_dir;
};

SimConfig base_config(const Globals& g, const SimFlags& f, const Trace& trace) {
    SimConfig cfg;
    cfg.scheme = *parse_scheme(f.scheme);
    cfg.runs = f.runs;
    cfg.h = f.h;
    cfg.seed = g.seed;
    cfg.w = window_for(g, trace);
    cfg.tie = *parse_tie(f.tie);
    cfg.denominator = *parse_denominator(f.denominator);
    cfg.threads = g.threads;
    return cfg;
}

json sim_flags_json(const SimFlags& f, const SimConfig& cfg) {
    return json{{"trace", f.trace_path}, {"scheme", f.scheme},       {"runs", cfg.runs},
                {"h", cfg.h},            {"tie", f.tie},             {"betweenness_denominator", f.denominator},
                {"window_secs", cfg.w}};
}

void write_series(const std::string& dir, const std::string& stem, const ExperimentResult& result, const json& meta) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    for (std::size_t r = 0; r < result.runs.size(); ++r) {
        const auto path = std::filesystem::path(dir) / (stem + "_run" + std::to_string(r) + ".csv");
        std::ofstream f(path);
        if (!f) throw DataError("cannot write " + path.string());
        write_run_series_csv(f, result.runs[r], meta);
    }
}

int cmd_simulate(const Globals& g, const SimFlags& f, std::ostream& out) {
    const auto trace = parse_trace(f.trace_path);
    auto cfg = base_config(g, f, trace);
    cfg.strategy = *parse_strategy(f.strategy);
    cfg.t_m = absolute(trace, f.tm, trace.meta.t_min);
    cfg.t_p = !f.tp.empty() ? absolute(trace, f.tp, cfg.t_m) : cfg.t_m + (f.delay.empty() ? 0 : parse_duration(f.delay));
    cfg.n_m = parse_count_list(f.nm).at(0);
    cfg.n_p = parse_count_list(f.np).at(0);
    cfg.validate(trace.meta);

    auto flags = sim_flags_json(f, cfg);
    flags["strategy"] = f.strategy;
    flags["t_m"] = cfg.t_m;
    flags["t_p"] = cfg.t_p;
    flags["n_m"] = cfg.n_m;
    flags["n_p"] = cfg.n_p;
    const auto meta = make_meta("simulate", flags, g.seed);

    ExperimentOptions opts;
    opts.keep_runs = !f.series_dir.empty();
    const auto result = run_experiment(trace, cfg, opts);
    auto summary = summary_json(cfg, result, trace.original_ids);
    summary["meta"] = meta;
    Output sink(g.out, out);
    *sink << summary.dump() << '\n';
    write_series(f.series_dir, "sim", result, meta);
    return kOk;
}

int cmd_sweep(const Globals& g, const SimFlags& f, std::ostream& out) {
    const auto trace = parse_trace(f.trace_path);
    const auto base = base_config(g, f, trace);

    SweepAxes axes;
    for (auto t : parse_duration_list(f.tm.empty() ? "0" : f.tm)) axes.t_m.push_back(trace.meta.t_min + t);
    axes.delay = parse_duration_list(f.delay.empty() ? "0" : f.delay);
    axes.n_m = parse_count_list(f.nm);
    axes.n_p = parse_count_list(f.np);
    if (f.strategies == "all") {
        axes.strategies.assign(std::begin(kAllStrategies), std::end(kAllStrategies));
    } else {
        for (auto name : split(f.strategies, ',')) {
            const auto s = parse_strategy(name);
            if (!s) throw CLI::ValidationError("--strategies", "unknown strategy '" + std::string(name) + "'");
            axes.strategies.push_back(*s);
        }
    }

    auto flags = sim_flags_json(f, base);
    flags["t_m"] = axes.t_m;
    flags["delay"] = axes.delay;
    flags["n_m"] = axes.n_m;
    flags["n_p"] = axes.n_p;
    json names = json::array();
    for (auto s : axes.strategies) names.push_back(std::string(to_string(s)));
    flags["strategies"] = names;
    const auto meta = make_meta("sweep", flags, g.seed);

    Output sink(g.out, out);
    *sink << json{{"meta", meta}}.dump() << '\n';
    sweep(
        trace, base, axes,
        [&](const SweepCell& cell) {
            auto rec = summary_json(cell.cfg, cell.result, trace.original_ids);
            rec["cell"] = cell.index;
            *sink << rec.dump() << '\n';
            (*sink).flush();
            write_series(f.series_dir, "cell" + std::to_string(cell.index), cell.result, meta);
        },
        !f.series_dir.empty());
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Temporal contact-network metrics and mobile-malware containment simulator"};
    app.name("tempnet");
    app.require_subcommand(1);

    Globals g;
    app.add_option("--window-secs", g.window, "Window size (seconds or 1d12h-style); default: trace scan interval");
    app.add_option("--seed", g.seed, "Base RNG seed");
    app.add_option("-o,--out", g.out, "Output file (default: stdout)");
    app.add_option("--threads", g.threads, "Worker threads, 0 = auto");

    GenFlags gen_flags;
    auto* gen = app.add_subcommand("gen", "Generate a synthetic circadian contact trace");
    gen->fallthrough();
    gen->add_option("--nodes", gen_flags.cfg.nodes, "Node count");
    gen->add_option("--days", gen_flags.cfg.days, "Trace length in days");
    gen->add_option("--day-start", gen_flags.cfg.day_start_hour, "First daytime hour");
    gen->add_option("--day-end", gen_flags.cfg.day_end_hour, "End of daytime (exclusive hour)");
    gen->add_option("--day-rate", gen_flags.cfg.day_contact_rate, "Daytime encounters per pair per hour");
    gen->add_option("--night-rate", gen_flags.cfg.night_contact_rate, "Nighttime encounters per pair per hour");
    gen->add_option("--clusters", gen_flags.cfg.cluster_count, "Number of contact clusters");
    gen->add_option("--scan-interval", gen_flags.cfg.scan_interval, "Scan interval in seconds");

    MetricsFlags mf;
    auto* metrics = app.add_subcommand("metrics", "Temporal efficiency, centralities and components");
    metrics->fallthrough();
    metrics->add_option("trace", mf.trace_path, "Trace CSV")->required();
    metrics->add_option("--metric", mf.metric)
        ->required()
        ->check(CLI::IsMember({"teff", "sliding-teff", "tbet", "tclose", "sbet", "sclose", "components", "distances",
                               "snapshots"}));
    metrics->add_option("--from", mf.from, "Interval start, offset from trace start");
    metrics->add_option("--to", mf.to, "Interval end, offset from trace start");
    metrics->add_option("--span", mf.span, "Sliding span")->capture_default_str();
    metrics->add_option("--stride", mf.stride, "Sliding stride")->capture_default_str();
    metrics->add_option("--betweenness-denominator", mf.denominator)
        ->check(CLI::IsMember({"through-i", "all"}))
        ->capture_default_str();

    SimFlags sf;
    std::vector<std::string> strategy_names;
    for (auto s : kAllStrategies) strategy_names.emplace_back(to_string(s));
    auto add_sim_flags = [&](CLI::App* cmd) {
        cmd->fallthrough();
        cmd->set_help_flag("--help", "Print this help message and exit");  // frees "h" for --h
        cmd->add_option("trace", sf.trace_path, "Trace CSV")->required();
        cmd->add_option("--scheme", sf.scheme)->check(CLI::IsMember({"blocking", "spreading"}))->capture_default_str();
        cmd->add_option("--runs", sf.runs, "Monte Carlo replicates")->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_option("--h,--hops", sf.h, "Hops per window")->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_option("--tie", sf.tie, "Winner of a same-window collision")
            ->check(CLI::IsMember({"patch", "malware"}))
            ->capture_default_str();
        cmd->add_option("--betweenness-denominator", sf.denominator)
            ->check(CLI::IsMember({"through-i", "all"}))
            ->capture_default_str();
        cmd->add_option("--series-dir", sf.series_dir, "Directory for per-run time series CSVs");
    };
    auto* simulate = app.add_subcommand("simulate", "Run one containment experiment");
    add_sim_flags(simulate);
    simulate->add_option("--tm", sf.tm, "Malware start, offset from trace start");
    auto* tp_opt = simulate->add_option("--tp", sf.tp, "Patch start, offset from trace start");
    simulate->add_option("--delay", sf.delay, "Patch delay after t_m")->excludes(tp_opt);
    simulate->add_option("--nm", sf.nm, "Initially infected nodes")->capture_default_str();
    simulate->add_option("--np", sf.np, "Initially patched nodes")->capture_default_str();
    simulate->add_option("--strategy", sf.strategy)->check(CLI::IsMember(strategy_names))->capture_default_str();

    auto* sweep_cmd = app.add_subcommand("sweep", "Run a grid of containment experiments");
    add_sim_flags(sweep_cmd);
    sweep_cmd->add_option("--tm", sf.tm, "Malware start offsets (list or start:end:step)");
    sweep_cmd->add_option("--delay", sf.delay, "Patch delays (list or range)");
    sweep_cmd->add_option("--nm", sf.nm, "Initially infected counts (list or range)")->capture_default_str();
    sweep_cmd->add_option("--np", sf.np, "Initially patched counts (list or range)")->capture_default_str();
    sweep_cmd->add_option("--strategies", sf.strategies, "'all' or comma-separated strategies")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(g, gen_flags, out);
        if (metrics->parsed()) return cmd_metrics(g, mf, out);
        if (simulate->parsed()) return cmd_simulate(g, sf, out);
        if (sweep_cmd->parsed()) return cmd_sweep(g, sf, out);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"tempnet"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace tempnet::cli
