#pragma once

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rslab {

using int128 = __int128;
using uint128 = unsigned __int128;

// Error taxonomy shared with the C API status codes.
struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct range_error : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct corrupt_cache_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct overflow_error : std::overflow_error {
    using std::overflow_error::overflow_error;
};
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string int128_to_string(int128 v);

// Double-double value: hi + lo with |lo| <= ulp(hi)/2.  Used for the
// compensated prefix sums, where a plain double running sum of c_n loses
// ~6 digits by n = 1e6.
struct dd {
    double hi = 0.0;
    double lo = 0.0;

    double value() const { return hi + lo; }
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd fast_two_sum(double a, double b) {
    // requires |a| >= |b|
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd dd_add(dd a, double b) {
    dd s = two_sum(a.hi, b);
    double lo = a.lo + s.lo;
    return fast_two_sum(s.hi, lo);
}

inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    double lo = a.lo + b.lo + s.lo;
    return fast_two_sum(s.hi, lo);
}

inline dd dd_sub(dd a, dd b) {
    return dd_add(a, dd{-b.hi, -b.lo});
}

// Running compensated accumulator for ad-hoc sums (integrals, mean squares).
class CompensatedSum {
public:
    void add(double x) { acc_ = dd_add(acc_, x); }
    double value() const { return acc_.value(); }
    dd state() const { return acc_; }

private:
    dd acc_;
};

uint64_t fnv1a64(const void* data, size_t len);

// Shortest round-trip decimal rendering (std::to_chars).
std::string format_double(double v);

}  // namespace rslab
