#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <span>
#include <string>

#include "permdec/errors.hpp"

namespace permdec {

// Fixed-order pairwise (cascade) summation. The reduction tree depends only on
// the element count, never on thread count or traversal order, so every sum in
// the library is bit-stable.
inline double pairwise_sum(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

template <class F>
double pairwise_sum_indexed(std::size_t begin, std::size_t end, F&& f) {
    const std::size_t n = end - begin;
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i) s += f(i);
        return s;
    }
    const std::size_t mid = begin + n / 2;
    return pairwise_sum_indexed(begin, mid, f) + pairwise_sum_indexed(mid, end, f);
}

inline double pairwise_dot(std::span<const double> a, std::span<const double> b) {
    return pairwise_sum_indexed(0, a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

inline bool all_equal(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

// Arithmetic mean. A run of bit-identical values returns that value exactly,
// for any count; the mean of n equal values is that value as a mathematical
// identity, and several contracts (constant-field decode, calibration knot
// hits) require it bit-exactly.
inline double mean_of(std::span<const double> v) {
    if (v.empty()) raise(ErrorCode::EmptySelection, "mean of empty selection");
    if (all_equal(v)) return v.front();
    return pairwise_sum(v) / static_cast<double>(v.size());
}

// Harmonic mean with the blocking convention: any zero entry makes the whole
// mean zero (limit of l/sum(l/k) as one k -> 0).
inline double harmonic_mean_of(std::span<const double> v) {
    if (v.empty()) raise(ErrorCode::EmptySelection, "harmonic mean of empty selection");
    for (double x : v)
        if (x == 0.0) return 0.0;
    if (all_equal(v)) return v.front();
    const double s = pairwise_sum_indexed(0, v.size(), [&](std::size_t i) { return 1.0 / v[i]; });
    return static_cast<double>(v.size()) / s;
}

// Shortest round-trip representation, locale independent.
inline std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

}  // namespace permdec
