#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tempnet/common.hpp"

namespace tempnet::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2 };

// "90", "6h", "1d12h", "30m", "2d" -> seconds. A leading '-' negates, so a patch delay
// can precede the outbreak. Throws std::invalid_argument.
Seconds parse_duration(std::string_view text);

// Comma-separated items, each a value or an inclusive range "start:end[:step]".
std::vector<Seconds> parse_duration_list(std::string_view text);
std::vector<std::size_t> parse_count_list(std::string_view text);

// Entry point behind the `tempnet` binary. Subcommands: gen, metrics, simulate, sweep.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tempnet::cli
