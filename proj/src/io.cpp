#include <rangeeval/io.hpp>

#include <fmt/format.h>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace rangeeval::io {

using ordered_json = nlohmann::ordered_json;

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message)
    , line_(line)
{
}

namespace {

struct Record {
    std::size_t line = 0;
    std::vector<std::string_view> fields;
};

std::string_view trim(std::string_view s)
{
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

std::string normalized_header(std::string_view line)
{
    std::string out;
    for (char c : line) {
        if (c != ' ' && c != '\t' && c != '\r') {
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    return out;
}

enum class Header { none, points, ranges };

struct CsvTable {
    Header header = Header::none;
    std::vector<Record> records;
};

CsvTable split_csv(std::string_view text)
{
    CsvTable table;
    std::size_t line_no = 0;
    bool first = true;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty()) {
            continue;
        }
        if (first) {
            first = false;
            const auto h = normalized_header(line);
            if (h == "index,label" || h == "label") {
                table.header = Header::points;
                continue;
            }
            if (h == "start,end") {
                table.header = Header::ranges;
                continue;
            }
        }

        Record rec{line_no, {}};
        std::size_t pos = 0;
        while (true) {
            const auto comma = line.find(',', pos);
            rec.fields.push_back(trim(line.substr(pos, comma == std::string_view::npos ? comma : comma - pos)));
            if (comma == std::string_view::npos) {
                break;
            }
            pos = comma + 1;
        }
        if (rec.fields.size() > 2) {
            throw ParseError(line_no, "expected 1 or 2 columns, found " + std::to_string(rec.fields.size()));
        }
        if (!table.records.empty() && rec.fields.size() != table.records.front().fields.size()) {
            throw ParseError(line_no, "ragged columns: expected " + std::to_string(table.records.front().fields.size())
                                          + ", found " + std::to_string(rec.fields.size()));
        }
        table.records.push_back(std::move(rec));
    }
    return table;
}

std::optional<TimeIndex> to_integer(std::string_view field)
{
    if (!field.empty() && field.front() == '+') {
        field.remove_prefix(1);
    }
    TimeIndex value = 0;
    const auto* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), last, value);
    if (field.empty() || ec != std::errc{} || ptr != last) {
        return std::nullopt;
    }
    return value;
}

TimeIndex integer_field(const Record& rec, std::size_t column)
{
    auto v = to_integer(rec.fields[column]);
    if (!v) {
        throw ParseError(rec.line, "expected an integer, found '" + std::string(rec.fields[column]) + "'");
    }
    return *v;
}

std::uint8_t label_field(const Record& rec, std::size_t column)
{
    const auto v = to_integer(rec.fields[column]);
    if (!v || (*v != 0 && *v != 1)) {
        throw ParseError(rec.line, "label must be 0 or 1, found '" + std::string(rec.fields[column]) + "'");
    }
    return static_cast<std::uint8_t>(*v);
}

PointLabels points_from_csv(const CsvTable& table)
{
    std::vector<std::uint8_t> labels;
    labels.reserve(table.records.size());
    for (const auto& rec : table.records) {
        if (rec.fields.size() == 2) {
            const TimeIndex index = integer_field(rec, 0);
            if (index != static_cast<TimeIndex>(labels.size())) {
                throw ParseError(rec.line, "point index " + std::to_string(index) + " out of sequence, expected "
                                               + std::to_string(labels.size()));
            }
        }
        labels.push_back(label_field(rec, rec.fields.size() - 1));
    }
    return PointLabels(std::move(labels));
}

std::vector<Range> ranges_from_csv(const CsvTable& table)
{
    std::vector<Range> ranges;
    ranges.reserve(table.records.size());
    for (const auto& rec : table.records) {
        if (rec.fields.size() != 2) {
            throw ParseError(rec.line, "expected two columns start,end");
        }
        const TimeIndex start = integer_field(rec, 0);
        const TimeIndex end = integer_field(rec, 1);
        if (start > end) {
            throw ParseError(rec.line, "invalid range [" + std::to_string(start) + "," + std::to_string(end)
                                           + "]: start > end");
        }
        ranges.push_back(Range{start, end});
    }
    return ranges;
}

SourceKind detect_csv_kind(const CsvTable& table)
{
    if (table.header == Header::points) {
        return SourceKind::points;
    }
    if (table.header == Header::ranges || table.records.empty()) {
        return SourceKind::ranges;
    }
    if (table.records.front().fields.size() == 1) {
        return SourceKind::points;
    }

    bool binary_second = true;
    bool counting_first = true;
    for (std::size_t i = 0; i < table.records.size(); ++i) {
        const auto& rec = table.records[i];
        const auto second = to_integer(rec.fields[1]);
        if (!second || (*second != 0 && *second != 1)) {
            binary_second = false;
            break;
        }
        const auto first = to_integer(rec.fields[0]);
        if (!first || *first != static_cast<TimeIndex>(i)) {
            counting_first = false;
        }
    }
    if (!binary_second) {
        return SourceKind::ranges;
    }
    if (counting_first) {
        return SourceKind::points;
    }
    throw ParseError(0, "cannot tell points from ranges: two binary columns without a gap-free 0-based index; "
                        "specify --input-format");
}

std::size_t line_of_byte(std::string_view text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

TimeIndex json_integer(const nlohmann::json& value, const std::string& where)
{
    if (!value.is_number_integer()) {
        throw ParseError(0, where + ": expected an integer, found " + value.dump());
    }
    if (value.is_number_unsigned()) {
        const auto u = value.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<TimeIndex>::max())) {
            throw ParseError(0, where + ": integer out of range");
        }
        return static_cast<TimeIndex>(u);
    }
    return value.get<TimeIndex>();
}

LabelDocument parse_json(std::string_view text, InputFormat format, std::string origin)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(line_of_byte(text, e.byte == 0 ? 0 : e.byte - 1), std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError(0, "JSON label document must be an object");
    }
    const bool has_points = doc.contains("points");
    const bool has_ranges = doc.contains("ranges");
    if (has_points == has_ranges || doc.size() != 1) {
        throw ParseError(0, "JSON label document must hold exactly one key, \"points\" or \"ranges\"");
    }
    if (format == InputFormat::points && !has_points) {
        throw ParseError(0, "expected a points document, found \"ranges\"");
    }
    if (format == InputFormat::ranges && !has_ranges) {
        throw ParseError(0, "expected a ranges document, found \"points\"");
    }

    if (has_points) {
        const auto& arr = doc["points"];
        if (!arr.is_array()) {
            throw ParseError(0, "\"points\" must be an array");
        }
        std::vector<std::uint8_t> labels;
        labels.reserve(arr.size());
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string where = "points[" + std::to_string(i) + "]";
            const TimeIndex v = json_integer(arr[i], where);
            if (v != 0 && v != 1) {
                throw ParseError(0, where + ": label must be 0 or 1, found " + arr[i].dump());
            }
            labels.push_back(static_cast<std::uint8_t>(v));
        }
        return LabelDocument{SourceKind::points, PointLabels(std::move(labels)), std::move(origin)};
    }

    const auto& arr = doc["ranges"];
    if (!arr.is_array()) {
        throw ParseError(0, "\"ranges\" must be an array");
    }
    std::vector<Range> ranges;
    ranges.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = "ranges[" + std::to_string(i) + "]";
        if (!arr[i].is_array() || arr[i].size() != 2) {
            throw ParseError(0, where + ": expected [start, end], found " + arr[i].dump());
        }
        const TimeIndex start = json_integer(arr[i][0], where + "[0]");
        const TimeIndex end = json_integer(arr[i][1], where + "[1]");
        if (start > end) {
            throw ParseError(0, where + ": invalid range [" + std::to_string(start) + "," + std::to_string(end)
                                    + "]: start > end");
        }
        ranges.push_back(Range{start, end});
    }
    return LabelDocument{SourceKind::ranges, std::move(ranges), std::move(origin)};
}

ordered_json score_json(const Score& s)
{
    return s ? ordered_json(*s) : ordered_json(nullptr);
}

ordered_json range_scores_json(const std::vector<RangeScore>& scores)
{
    auto arr = ordered_json::array();
    for (const auto& rs : scores) {
        arr.push_back(ordered_json{{"start", rs.range.start}, {"end", rs.range.end}, {"score", rs.score}});
    }
    return arr;
}

ordered_json config_json(const ScoreConfig& cfg)
{
    ordered_json out;
    out["alpha"] = cfg.alpha();
    out["beta"] = cfg.beta();
    out["recall_bias"] = std::string(cfg.recall_bias().name());
    out["precision_bias"] = std::string(cfg.precision_bias().name());
    out["cardinality"] = std::string(cfg.cardinality().name());
    if (cfg.cardinality().kind() == CardinalityMode::Kind::custom) {
        ordered_json table = ordered_json::object();
        for (const auto& [count, factor] : cfg.cardinality().table()) {
            table[std::to_string(count)] = factor;
        }
        out["cardinality_table"] = std::move(table);
    }
    out["f_beta"] = cfg.f_beta();
    return out;
}

ordered_json report_json(const EvalReport& report)
{
    ordered_json out;
    out["recall"] = score_json(report.recall);
    out["precision"] = score_json(report.precision);
    out["f_score"] = score_json(report.f_score);
    out["per_real_range"] = range_scores_json(report.per_real_range);
    out["per_predicted_range"] = range_scores_json(report.per_predicted_range);
    out["config"] = config_json(report.config);
    return out;
}

std::string score_text(const Score& s)
{
    return s ? format_number(*s) : std::string("undef");
}

void append_range_table(std::string& out, std::string_view title, const std::vector<RangeScore>& scores)
{
    out += fmt::format("\n{} ({})\n", title, scores.size());
    if (scores.empty()) {
        return;
    }
    out += fmt::format("{:>12}  {:>12}  {}\n", "start", "end", "score");
    for (const auto& rs : scores) {
        out += fmt::format("{:>12}  {:>12}  {}\n", rs.range.start, rs.range.end, format_number(rs.score));
    }
}

} // namespace

LabelDocument parse_labels(std::string_view text, InputFormat format, std::string origin)
{
    if (text.starts_with("\xEF\xBB\xBF")) {
        text.remove_prefix(3);
    }
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        return parse_json(text, format, std::move(origin));
    }

    const CsvTable table = split_csv(text);
    SourceKind kind = SourceKind::ranges;
    switch (format) {
    case InputFormat::points: kind = SourceKind::points; break;
    case InputFormat::ranges: kind = SourceKind::ranges; break;
    case InputFormat::automatic: kind = detect_csv_kind(table); break;
    }
    if (kind == SourceKind::points) {
        return LabelDocument{SourceKind::points, points_from_csv(table), std::move(origin)};
    }
    return LabelDocument{SourceKind::ranges, ranges_from_csv(table), std::move(origin)};
}

LabelDocument read_labels(const std::filesystem::path& path, InputFormat format)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(0, "cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw ParseError(0, "cannot read '" + path.string() + "'");
    }
    return parse_labels(buffer.str(), format, path.string());
}

Canonicalized to_range_set(const LabelDocument& doc)
{
    if (doc.kind == SourceKind::points) {
        return {points_to_ranges(doc.points()), 0};
    }
    return canonicalize(doc.raw_ranges());
}

InputFormat parse_input_format(std::string_view name)
{
    if (name == "points") {
        return InputFormat::points;
    }
    if (name == "ranges") {
        return InputFormat::ranges;
    }
    if (name == "auto") {
        return InputFormat::automatic;
    }
    throw std::invalid_argument("unknown input format '" + std::string(name) + "'");
}

std::string format_number(double value)
{
    return fmt::format("{}", value);
}

std::string write_report(const EvalReport& report, ReportStyle style)
{
    if (style == ReportStyle::json) {
        return report_json(report).dump(2) + "\n";
    }

    const auto& cfg = report.config;
    std::string out;
    const auto row = [&out](std::string_view key, const std::string& value) {
        out += fmt::format("{:<16}{}\n", key, value);
    };
    row("recall", score_text(report.recall));
    row("precision", score_text(report.precision));
    row("f_score", score_text(report.f_score));
    row("alpha", format_number(cfg.alpha()));
    row("beta", format_number(cfg.beta()));
    row("recall_bias", std::string(cfg.recall_bias().name()));
    row("precision_bias", std::string(cfg.precision_bias().name()));
    row("cardinality", std::string(cfg.cardinality().name()));
    row("f_beta", format_number(cfg.f_beta()));
    append_range_table(out, "per_real_range", report.per_real_range);
    append_range_table(out, "per_predicted_range", report.per_predicted_range);
    return out;
}

std::string write_reports(std::span<const EvalReport> reports, ReportStyle style)
{
    if (style == ReportStyle::json) {
        auto arr = ordered_json::array();
        for (const auto& r : reports) {
            arr.push_back(report_json(r));
        }
        return arr.dump(2) + "\n";
    }
    std::string out = fmt::format("{:<24}{:<24}{:<24}{}\n", "alpha", "recall", "precision", "f_score");
    for (const auto& r : reports) {
        out += fmt::format("{:<24}{:<24}{:<24}{}\n", format_number(r.config.alpha()), score_text(r.recall),
                           score_text(r.precision), score_text(r.f_score));
    }
    return out;
}

std::string write_ranges(const RangeSet& ranges, ReportStyle style)
{
    if (style == ReportStyle::json) {
        auto arr = ordered_json::array();
        for (const auto& r : ranges) {
            arr.push_back(ordered_json::array({r.start, r.end}));
        }
        return ordered_json{{"ranges", std::move(arr)}}.dump() + "\n";
    }
    std::string out;
    for (const auto& r : ranges) {
        out += fmt::format("{},{}\n", r.start, r.end);
    }
    return out;
}

std::string write_points(const PointLabels& labels, ReportStyle style)
{
    if (style == ReportStyle::json) {
        auto arr = ordered_json::array();
        for (auto v : labels.values()) {
            arr.push_back(static_cast<int>(v));
        }
        return ordered_json{{"points", std::move(arr)}}.dump() + "\n";
    }
    std::string out;
    out.reserve(labels.size() * 2);
    for (auto v : labels.values()) {
        out += static_cast<char>('0' + v);
        out += '\n';
    }
    return out;
}

} // namespace rangeeval::io
