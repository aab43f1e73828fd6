#include "tempnet/trace.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string_view>

namespace tempnet {

TraceParseError::TraceParseError(std::size_t line, const std::string& what)
    : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    s = trim(s);
    std::int64_t v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
    return v;
}

struct RawRecord {
    std::int64_t src, dst, t_start, t_end;
};

struct TraceDirective {
    std::optional<Seconds> t_min, t_max, scan_interval;
    std::optional<std::int64_t> nodes;
};

// "# trace: key=value key=value ..."
void parse_directive(std::string_view body, std::size_t line_no, TraceDirective& dir) {
    std::istringstream in{std::string(body)};
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw TraceParseError(line_no, "bad trace directive token '" + tok + "'");
        const auto key = tok.substr(0, eq);
        const auto val = parse_int(std::string_view(tok).substr(eq + 1));
        if (!val) throw TraceParseError(line_no, "bad trace directive value '" + tok + "'");
        if (key == "t_min") dir.t_min = *val;
        else if (key == "t_max") dir.t_max = *val;
        else if (key == "scan_interval") dir.scan_interval = *val;
        else if (key == "nodes") dir.nodes = *val;
    }
}

}  // namespace

void sort_events(std::vector<ContactEvent>& events) {
    std::sort(events.begin(), events.end(), [](const ContactEvent& a, const ContactEvent& b) {
        return std::tie(a.t_start, a.src, a.dst, a.t_end) < std::tie(b.t_start, b.src, b.dst, b.t_end);
    });
}

Trace parse_trace(std::istream& in) {
    std::vector<RawRecord> raw;
    TraceDirective dir;
    std::string line;
    std::size_t line_no = 0;
    bool seen_record = false;

    while (std::getline(in, line)) {
        ++line_no;
        const auto s = trim(line);
        if (s.empty()) continue;
        if (s.front() == '#') {
            auto body = trim(s.substr(1));
            constexpr std::string_view kTag = "trace:";
            if (body.substr(0, kTag.size()) == kTag) parse_directive(body.substr(kTag.size()), line_no, dir);
            continue;
        }
        if (!seen_record && s == "src,dst,t_start,t_end") {
            seen_record = true;
            continue;
        }
        seen_record = true;

        std::int64_t fields[4];
        std::size_t pos = 0;
        for (int f = 0; f < 4; ++f) {
            const auto comma = s.find(',', pos);
            const bool last = f == 3;
            if (last != (comma == std::string_view::npos))
                throw TraceParseError(line_no, "expected 4 comma-separated integers");
            const auto field = s.substr(pos, last ? std::string_view::npos : comma - pos);
            const auto v = parse_int(field);
            if (!v || *v < 0) throw TraceParseError(line_no, "expected non-negative integer, got '" + std::string(trim(field)) + "'");
            fields[f] = *v;
            pos = comma + 1;
        }
        RawRecord r{fields[0], fields[1], fields[2], fields[3]};
        if (r.src == r.dst) throw TraceParseError(line_no, "self-contact " + std::to_string(r.src) + "->" + std::to_string(r.dst));
        if (r.t_start > r.t_end) throw TraceParseError(line_no, "t_start > t_end");
        raw.push_back(r);
    }
    if (raw.empty()) throw DataError("empty trace: no contact records");

    std::vector<std::int64_t> ids;
    ids.reserve(raw.size() * 2);
    for (const auto& r : raw) {
        ids.push_back(r.src);
        ids.push_back(r.dst);
    }
    if (dir.nodes)
        for (std::int64_t i = 0; i < *dir.nodes; ++i) ids.push_back(i);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto dense = [&](std::int64_t id) {
        return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };

    Trace trace;
    trace.original_ids = ids;
    trace.events.reserve(raw.size());
    Seconds t_min = raw.front().t_start, t_max = raw.front().t_end;
    for (const auto& r : raw) {
        trace.events.push_back({dense(r.src), dense(r.dst), r.t_start, r.t_end});
        t_min = std::min(t_min, r.t_start);
        t_max = std::max(t_max, r.t_end);
    }
    sort_events(trace.events);

    if (dir.t_min) t_min = std::min(t_min, *dir.t_min);
    if (dir.t_max) t_max = std::max(t_max, *dir.t_max);
    // A trace made only of instantaneous sightings at one instant still needs a span.
    if (t_max == t_min) t_max = t_min + 1;

    Seconds scan = 0;
    if (dir.scan_interval && *dir.scan_interval > 0) {
        scan = *dir.scan_interval;
    } else {
        // Scan-based traces stamp on a fixed grid; the gcd of offsets recovers it.
        for (const auto& e : trace.events) {
            scan = std::gcd(scan, e.t_start - t_min);
            scan = std::gcd(scan, e.t_end - e.t_start);
        }
        if (scan <= 0) scan = 1;
    }

    trace.meta = TraceMeta{ids.size(), t_min, t_max, scan};
    if (trace.meta.node_count < 2) throw DataError("trace has fewer than 2 nodes");
    return trace;
}

Trace parse_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open trace file " + path.string());
    return parse_trace(in);
}

void write_trace(std::ostream& out, const Trace& trace, const std::vector<std::string>& comment_lines) {
    for (const auto& c : comment_lines) out << "# " << c << '\n';
    out << "# trace: t_min=" << trace.meta.t_min << " t_max=" << trace.meta.t_max
        << " scan_interval=" << trace.meta.scan_interval;
    // `nodes` is only meaningful when ids are exactly 0..N-1.
    bool identity = true;
    for (std::size_t i = 0; i < trace.original_ids.size(); ++i)
        identity = identity && trace.original_ids[i] == static_cast<std::int64_t>(i);
    if (identity) out << " nodes=" << trace.meta.node_count;
    out << '\n';
    out << "src,dst,t_start,t_end\n";
    auto orig = [&](NodeId n) {
        return n < trace.original_ids.size() ? trace.original_ids[n] : static_cast<std::int64_t>(n);
    };
    for (const auto& e : trace.events)
        out << orig(e.src) << ',' << orig(e.dst) << ',' << e.t_start << ',' << e.t_end << '\n';
}

void write_trace(const std::filesystem::path& path, const Trace& trace, const std::vector<std::string>& comment_lines) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    write_trace(out, trace, comment_lines);
}

void SynthConfig::validate() const {
    if (nodes < 2) throw std::invalid_argument("synthetic trace needs at least 2 nodes");
    if (days < 1) throw std::invalid_argument("synthetic trace needs at least 1 day");
    if (day_start_hour < 0 || day_start_hour >= day_end_hour || day_end_hour > 24)
        throw std::invalid_argument("day window must satisfy 0 <= start < end <= 24");
    if (!(day_contact_rate >= 0) || !(night_contact_rate >= 0)) throw std::invalid_argument("contact rates must be >= 0");
    if (cluster_count < 1 || cluster_count > nodes)
        throw std::invalid_argument("cluster_count must be between 1 and the node count");
    if (scan_interval <= 0 || scan_interval > 3600 || 3600 % scan_interval != 0)
        throw std::invalid_argument("scan_interval must divide 3600");
}

Trace generate_synthetic(const SynthConfig& cfg) {
    cfg.validate();
    constexpr double kCrossClusterDivisor = 10.0;
    constexpr Seconds kHour = 3600;

    const std::size_t n = cfg.nodes;
    const std::size_t hours = cfg.days * 24;
    const Seconds slots_per_hour = kHour / cfg.scan_interval;
    auto cluster_of = [&](std::size_t v) { return v * cfg.cluster_count / n; };

    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<Seconds> slot(0, slots_per_hour - 1);

    Trace trace;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const double scale = cluster_of(a) == cluster_of(b) ? 1.0 : 1.0 / kCrossClusterDivisor;
            for (std::size_t h = 0; h < hours; ++h) {
                const auto hod = static_cast<int>(h % 24);
                const bool day = hod >= cfg.day_start_hour && hod < cfg.day_end_hour;
                const double rate = (day ? cfg.day_contact_rate : cfg.night_contact_rate) * scale;
                if (rate <= 0) continue;
                std::poisson_distribution<int> count(rate);
                for (int k = count(rng); k > 0; --k) {
                    const Seconds t = static_cast<Seconds>(h) * kHour + slot(rng) * cfg.scan_interval;
                    const auto u = static_cast<NodeId>(a), v = static_cast<NodeId>(b);
                    trace.events.push_back({u, v, t, t});
                    trace.events.push_back({v, u, t, t});
                }
            }
        }
    }
    sort_events(trace.events);

    trace.meta = TraceMeta{n, 0, static_cast<Seconds>(hours) * kHour, cfg.scan_interval};
    trace.original_ids.resize(n);
    std::iota(trace.original_ids.begin(), trace.original_ids.end(), 0);
    return trace;
}

}  // namespace tempnet
