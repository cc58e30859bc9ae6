#pragma once

#include <rangeeval/ranges.hpp>
#include <rangeeval/scoring.hpp>

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rangeeval::io {

/// Rejected label input. `line()` is 1-based; 0 when the problem is not tied
/// to a line (e.g. a JSON element, whose path is in the message).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

enum class InputFormat { points, ranges, automatic };
enum class SourceKind { points, ranges };
enum class ReportStyle { text, json };

/// Parsed label file before canonicalization.
struct LabelDocument {
    SourceKind kind = SourceKind::ranges;
    std::variant<PointLabels, std::vector<Range>> payload;
    std::string origin;

    [[nodiscard]] const PointLabels& points() const { return std::get<PointLabels>(payload); }
    [[nodiscard]] const std::vector<Range>& raw_ranges() const { return std::get<std::vector<Range>>(payload); }
};

/// Parses points or ranges, as CSV or JSON.
///
/// Points CSV has one record per line, either `label` (the index is the
/// record number) or `index,label` with 0-based, gap-free indices. Ranges CSV
/// has `start,end` per line, both inclusive. JSON is an object holding
/// exactly one of "points": [0, 1, ...] or "ranges": [[s, e], ...]. A header
/// line `index,label`, `label` or `start,end` is skipped. Blank lines are
/// ignored; LF and CRLF are both accepted.
///
/// With InputFormat::automatic, JSON is recognised by a leading `{`; CSV with
/// one column is points; two columns are points when the second column is
/// binary and the first counts up from 0, ranges when the second column is
/// not binary, and an error otherwise. An empty document is an empty range
/// list.
LabelDocument parse_labels(std::string_view text, InputFormat format, std::string origin = "<input>");

/// Reads a file and parses it. I/O failures raise ParseError with line 0.
LabelDocument read_labels(const std::filesystem::path& path, InputFormat format);

/// Canonical range set for either document kind; `merges` counts ranges that
/// were absorbed by overlap or adjacency (always 0 for points).
Canonicalized to_range_set(const LabelDocument& doc);

InputFormat parse_input_format(std::string_view name);

std::string write_report(const EvalReport& report, ReportStyle style);
/// Several reports, e.g. an alpha sweep: a JSON array of report objects, or
/// a text table of alpha, recall, precision and f_score rows.
std::string write_reports(std::span<const EvalReport> reports, ReportStyle style);

/// Label documents: CSV (`text`) or JSON.
std::string write_ranges(const RangeSet& ranges, ReportStyle style);
std::string write_points(const PointLabels& labels, ReportStyle style);

/// Shortest representation that reads back to the same double.
std::string format_number(double value);

} // namespace rangeeval::io
