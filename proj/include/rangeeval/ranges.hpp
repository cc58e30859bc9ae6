#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rangeeval {

using TimeIndex = std::int64_t;

/// Raised for malformed ranges or label values.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a range does not fit inside a series of declared length.
class BoundsError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Closed integer interval [start, end]. Both ends are inclusive.
struct Range {
    TimeIndex start = 0;
    TimeIndex end = 0;

    [[nodiscard]] constexpr TimeIndex length() const noexcept { return end - start + 1; }
    [[nodiscard]] constexpr bool contains(TimeIndex t) const noexcept { return start <= t && t <= end; }
    [[nodiscard]] constexpr bool contains(const Range& other) const noexcept
    {
        return start <= other.start && other.end <= end;
    }

    friend constexpr auto operator<=>(const Range&, const Range&) = default;
};

/// Throws ValidationError when start > end.
Range make_range(TimeIndex start, TimeIndex end);

std::string to_string(const Range& r);

class PointLabels;
struct Canonicalized;

/// Sorted, pairwise disjoint and non-adjacent ranges.
///
/// The only way to obtain a non-empty RangeSet is through canonicalization
/// (make_range_set / canonicalize / points_to_ranges), so the invariant holds
/// for every instance.
class RangeSet {
public:
    RangeSet() = default;

    [[nodiscard]] std::span<const Range> ranges() const noexcept { return ranges_; }
    [[nodiscard]] std::size_t size() const noexcept { return ranges_.size(); }
    [[nodiscard]] bool empty() const noexcept { return ranges_.empty(); }
    [[nodiscard]] auto begin() const noexcept { return ranges_.cbegin(); }
    [[nodiscard]] auto end() const noexcept { return ranges_.cend(); }
    [[nodiscard]] const Range& operator[](std::size_t i) const { return ranges_[i]; }

    // Scoring functions accept any sorted disjoint list; a RangeSet is one.
    operator std::span<const Range>() const noexcept { return ranges_; } // NOLINT

    friend bool operator==(const RangeSet&, const RangeSet&) = default;

private:
    friend Canonicalized canonicalize(std::span<const Range> ranges);
    friend RangeSet points_to_ranges(const PointLabels& labels);

    explicit RangeSet(std::vector<Range> canonical) : ranges_(std::move(canonical)) {}

    std::vector<Range> ranges_;
};

struct Canonicalized {
    RangeSet set;
    /// Number of input ranges absorbed into a neighbour (overlap or adjacency).
    std::size_t merges = 0;
};

/// Sorts, validates and merges overlapping or adjacent ranges.
Canonicalized canonicalize(std::span<const Range> ranges);

RangeSet make_range_set(std::span<const Range> ranges);

inline RangeSet make_range_set(std::initializer_list<Range> ranges)
{
    return make_range_set(std::span<const Range>(ranges.begin(), ranges.size()));
}

/// True when the list is sorted by start and pairwise disjoint. Adjacent
/// ranges are allowed, which admits the single-point lists used for the
/// point-based reduction.
bool is_sorted_disjoint(std::span<const Range> ranges) noexcept;

std::optional<Range> intersect(const Range& a, const Range& b) noexcept;

/// Nonempty intersections of `target` with members of `others`, ascending.
/// `others` must be sorted and disjoint.
std::vector<Range> overlap_set(const Range& target, std::span<const Range> others);

/// Number of members of `others` that share at least one point with `target`.
std::size_t cardinality(const Range& target, std::span<const Range> others);

/// Binary per-index labels, 0 = normal and 1 = anomalous.
class PointLabels {
public:
    PointLabels() = default;
    /// Throws ValidationError naming the first element that is not 0 or 1.
    explicit PointLabels(std::vector<std::uint8_t> labels);
    PointLabels(std::initializer_list<int> labels);

    [[nodiscard]] std::span<const std::uint8_t> values() const noexcept { return labels_; }
    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
    [[nodiscard]] bool empty() const noexcept { return labels_.empty(); }
    [[nodiscard]] std::uint8_t operator[](std::size_t i) const { return labels_[i]; }

    friend bool operator==(const PointLabels&, const PointLabels&) = default;

private:
    std::vector<std::uint8_t> labels_;
};

/// Maximal runs of 1-labels become ranges.
RangeSet points_to_ranges(const PointLabels& labels);

/// Inverse of points_to_ranges. Throws BoundsError when a range falls
/// outside [0, series_length - 1].
PointLabels ranges_to_points(const RangeSet& ranges, std::size_t series_length);

/// Replaces every [s, e] with [s, s], ..., [e, e]. The result is deliberately
/// not canonical: adjacent points stay separate.
std::vector<Range> explode_to_single_points(std::span<const Range> ranges);

} // namespace rangeeval
