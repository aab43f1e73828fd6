#pragma once

#include <compare>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tempnet/common.hpp"

namespace tempnet {

// One directed contact: src scanned dst during [t_start, t_end].
// A reciprocal sighting is a separate record.
struct ContactEvent {
    NodeId src = 0;
    NodeId dst = 0;
    Seconds t_start = 0;
    Seconds t_end = 0;

    friend auto operator<=>(const ContactEvent&, const ContactEvent&) = default;
};

struct TraceMeta {
    std::size_t node_count = 0;
    Seconds t_min = 0;
    Seconds t_max = 0;
    Seconds scan_interval = 1;

    Interval span() const { return {t_min, t_max}; }
    friend bool operator==(const TraceMeta&, const TraceMeta&) = default;
};

// Events use dense ids 0..N-1; original_ids[dense] recovers the id found in the file.
struct Trace {
    TraceMeta meta;
    std::vector<ContactEvent> events;
    std::vector<std::int64_t> original_ids;
};

class TraceParseError : public DataError {
public:
    TraceParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Reads `src,dst,t_start,t_end` records. Comment lines start with '#'; a leading header
// line is skipped. A `# trace: t_min=.. t_max=.. scan_interval=.. nodes=..` directive,
// as written by write_trace, widens the derived meta so round trips are exact.
Trace parse_trace(const std::filesystem::path& path);
Trace parse_trace(std::istream& in);

// Writes the trace with original ids. `comment_lines` are emitted first, each prefixed "# ".
void write_trace(std::ostream& out, const Trace& trace, const std::vector<std::string>& comment_lines = {});
void write_trace(const std::filesystem::path& path, const Trace& trace,
                 const std::vector<std::string>& comment_lines = {});

// Sorts by (t_start, src, dst, t_end), the canonical record order.
void sort_events(std::vector<ContactEvent>& events);

struct SynthConfig {
    std::size_t nodes = 20;
    std::size_t days = 7;
    int day_start_hour = 8;
    int day_end_hour = 20;
    double day_contact_rate = 0.5;     // encounters per node pair per hour
    double night_contact_rate = 0.01;
    std::size_t cluster_count = 1;
    Seconds scan_interval = 300;
    std::uint64_t seed = 0;

    // Throws std::invalid_argument on violated bounds.
    void validate() const;
};

// Per-pair Poisson encounters; pairs in different clusters use a tenth of the rate.
// Clusters are contiguous id blocks of near-equal size. Each encounter is a single
// instantaneous sighting snapped to the scan grid and recorded in both directions.
Trace generate_synthetic(const SynthConfig& cfg);

}  // namespace tempnet
