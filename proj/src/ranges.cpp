#include <rangeeval/ranges.hpp>

#include <algorithm>
#include <limits>

namespace rangeeval {

Range make_range(TimeIndex start, TimeIndex end)
{
    if (start > end) {
        throw ValidationError("malformed range " + to_string(Range{start, end}) + ": start > end");
    }
    return Range{start, end};
}

std::string to_string(const Range& r)
{
    return "[" + std::to_string(r.start) + "," + std::to_string(r.end) + "]";
}

Canonicalized canonicalize(std::span<const Range> ranges)
{
    for (const auto& r : ranges) {
        if (r.start > r.end) {
            throw ValidationError("malformed range " + to_string(r) + ": start > end");
        }
    }

    std::vector<Range> sorted(ranges.begin(), ranges.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<Range> merged;
    merged.reserve(sorted.size());
    std::size_t merges = 0;
    for (const auto& r : sorted) {
        // end + 1 cannot overflow in practice for time indices; guard anyway.
        if (!merged.empty()
            && (merged.back().end == std::numeric_limits<TimeIndex>::max() || r.start <= merged.back().end + 1)) {
            merged.back().end = std::max(merged.back().end, r.end);
            ++merges;
        } else {
            merged.push_back(r);
        }
    }
    return {RangeSet(std::move(merged)), merges};
}

RangeSet make_range_set(std::span<const Range> ranges)
{
    return canonicalize(ranges).set;
}

bool is_sorted_disjoint(std::span<const Range> ranges) noexcept
{
    for (std::size_t i = 0; i < ranges.size(); ++i) {
        if (ranges[i].start > ranges[i].end) {
            return false;
        }
        if (i > 0 && ranges[i - 1].end >= ranges[i].start) {
            return false;
        }
    }
    return true;
}

std::optional<Range> intersect(const Range& a, const Range& b) noexcept
{
    const TimeIndex lo = std::max(a.start, b.start);
    const TimeIndex hi = std::min(a.end, b.end);
    if (lo > hi) {
        return std::nullopt;
    }
    return Range{lo, hi};
}

namespace {

// First member whose end reaches target.start. Ends are ascending because the
// list is sorted and disjoint.
std::span<const Range>::iterator first_candidate(const Range& target, std::span<const Range> others)
{
    return std::partition_point(others.begin(), others.end(),
                                [&](const Range& r) { return r.end < target.start; });
}

} // namespace

std::vector<Range> overlap_set(const Range& target, std::span<const Range> others)
{
    std::vector<Range> out;
    for (auto it = first_candidate(target, others); it != others.end() && it->start <= target.end; ++it) {
        if (auto cut = intersect(target, *it)) {
            out.push_back(*cut);
        }
    }
    return out;
}

std::size_t cardinality(const Range& target, std::span<const Range> others)
{
    std::size_t count = 0;
    for (auto it = first_candidate(target, others); it != others.end() && it->start <= target.end; ++it) {
        ++count;
    }
    return count;
}

PointLabels::PointLabels(std::vector<std::uint8_t> labels) : labels_(std::move(labels))
{
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] > 1) {
            throw ValidationError("label at index " + std::to_string(i) + " is "
                                  + std::to_string(static_cast<int>(labels_[i])) + ", expected 0 or 1");
        }
    }
}

PointLabels::PointLabels(std::initializer_list<int> labels)
{
    labels_.reserve(labels.size());
    std::size_t i = 0;
    for (int v : labels) {
        if (v != 0 && v != 1) {
            throw ValidationError("label at index " + std::to_string(i) + " is " + std::to_string(v)
                                  + ", expected 0 or 1");
        }
        labels_.push_back(static_cast<std::uint8_t>(v));
        ++i;
    }
}

RangeSet points_to_ranges(const PointLabels& labels)
{
    std::vector<Range> runs;
    const auto values = labels.values();
    std::size_t i = 0;
    while (i < values.size()) {
        if (values[i] == 0) {
            ++i;
            continue;
        }
        const std::size_t first = i;
        while (i < values.size() && values[i] == 1) {
            ++i;
        }
        runs.push_back(Range{static_cast<TimeIndex>(first), static_cast<TimeIndex>(i - 1)});
    }
    return RangeSet(std::move(runs));
}

PointLabels ranges_to_points(const RangeSet& ranges, std::size_t series_length)
{
    std::vector<std::uint8_t> labels(series_length, 0);
    for (const auto& r : ranges) {
        if (r.start < 0 || static_cast<std::uint64_t>(r.end) >= series_length) {
            throw BoundsError("range " + to_string(r) + " exceeds series of length "
                              + std::to_string(series_length));
        }
        std::fill(labels.begin() + r.start, labels.begin() + r.end + 1, std::uint8_t{1});
    }
    return PointLabels(std::move(labels));
}

std::vector<Range> explode_to_single_points(std::span<const Range> ranges)
{
    std::vector<Range> points;
    for (const auto& r : ranges) {
        for (TimeIndex t = r.start; t <= r.end; ++t) {
            points.push_back(Range{t, t});
        }
    }
    return points;
}

} // namespace rangeeval
