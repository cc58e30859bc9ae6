#pragma once

#include <rangeeval/bias.hpp>
#include <rangeeval/ranges.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace gen {

using rangeeval::Range;
using rangeeval::TimeIndex;

/// Labels of length 1..max_length with a per-instance anomaly density in [0,1].
inline std::vector<int> labels(std::mt19937_64& rng, std::size_t max_length = 64)
{
    std::uniform_int_distribution<std::size_t> len(1, max_length);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t n = len(rng);
    const double density = unit(rng);
    std::vector<int> out(n);
    for (auto& v : out) {
        v = unit(rng) < density ? 1 : 0;
    }
    return out;
}

/// Canonical range set drawn from random labels of the given horizon.
inline rangeeval::RangeSet range_set(std::mt19937_64& rng, std::size_t max_length = 64)
{
    const auto l = labels(rng, max_length);
    std::vector<std::uint8_t> bytes(l.begin(), l.end());
    return rangeeval::points_to_ranges(rangeeval::PointLabels(std::move(bytes)));
}

inline std::vector<Range> as_vector(const rangeeval::RangeSet& s)
{
    return {s.begin(), s.end()};
}

} // namespace gen
