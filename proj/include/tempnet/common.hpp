#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tempnet {

using NodeId = std::uint32_t;
using Seconds = std::int64_t;
using WindowIndex = std::int32_t;

// Exact arithmetic for path-count ratios and efficiency sums.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline constexpr Seconds kSecondsPerDay = 86400;

// Half-open time interval [begin, end).
struct Interval {
    Seconds begin = 0;
    Seconds end = 0;

    Seconds length() const { return end - begin; }
    bool empty() const { return end <= begin; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

// Input data violates a documented format or invariant. The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tempnet
