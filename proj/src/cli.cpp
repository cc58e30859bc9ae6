#include <rangeeval/cli.hpp>
#include <rangeeval/io.hpp>
#include <rangeeval/scoring.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

namespace rangeeval::cli {

namespace {

struct Invocation {
    std::string real_path;
    std::string pred_path;
    double alpha = 0.0;
    std::string gamma = "one";
    std::string rbias = "flat";
    std::string pbias = "flat";
    double fbeta = 1.0;
    std::string input_format = "auto";
    std::string output = "text";
    std::string sweep;

    // convert
    std::string input_path;
    std::string to;
    std::optional<std::size_t> length;
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

io::LabelDocument read_document(const std::string& path, io::InputFormat format)
{
    try {
        return io::read_labels(path, format);
    } catch (const std::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

struct SweepSpec {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
};

PositionalBias bias_from_name(const std::string& name)
{
    if (name == "front") {
        return PositionalBias::front_end();
    }
    if (name == "back") {
        return PositionalBias::tail_end();
    }
    return PositionalBias::flat();
}

ScoreConfig make_config(const Invocation& inv)
{
    return ScoreConfig(inv.alpha, bias_from_name(inv.rbias), bias_from_name(inv.pbias),
                       inv.gamma == "reciprocal" ? CardinalityMode::reciprocal() : CardinalityMode::one(), inv.fbeta);
}

io::ReportStyle style_of(const Invocation& inv)
{
    return inv.output == "json" ? io::ReportStyle::json : io::ReportStyle::text;
}

SweepSpec parse_sweep(const std::string& text)
{
    std::vector<double> parts;
    std::size_t pos = 0;
    while (true) {
        const auto colon = text.find(':', pos);
        const std::string piece = text.substr(pos, colon == std::string::npos ? colon : colon - pos);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(piece, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (piece.empty() || used != piece.size() || !std::isfinite(value)) {
            throw ConfigError("sweep spec '" + text + "' must be START:STOP:STEP");
        }
        parts.push_back(value);
        if (colon == std::string::npos) {
            break;
        }
        pos = colon + 1;
    }
    if (parts.size() != 3) {
        throw ConfigError("sweep spec '" + text + "' must be START:STOP:STEP");
    }
    const SweepSpec spec{parts[0], parts[1], parts[2]};
    if (!(spec.step > 0.0)) {
        throw ConfigError("sweep step must be > 0");
    }
    if (spec.start > spec.stop) {
        throw ConfigError("sweep start must not exceed stop");
    }
    if ((spec.stop - spec.start) / spec.step > 1e6) {
        throw ConfigError("sweep produces more than a million rows");
    }
    return spec;
}

// start, start + step, ..., stop. A value within 1e-9 of stop is snapped to
// it so that 0:1:0.1 ends at exactly 1.
std::vector<double> sweep_values(const SweepSpec& spec)
{
    constexpr double slack = 1e-9;
    std::vector<double> values;
    for (std::size_t k = 0;; ++k) {
        double a = spec.start + static_cast<double>(k) * spec.step;
        if (a > spec.stop + slack) {
            break;
        }
        if (std::abs(a - spec.stop) <= slack) {
            a = spec.stop;
        }
        values.push_back(a);
    }
    return values;
}

void warn_merges(const std::string& path, const Canonicalized& canon, std::ostream& err)
{
    if (canon.merges > 0) {
        err << "warning: " << path << ": merged " << canon.merges << " overlapping or adjacent range"
            << (canon.merges == 1 ? "" : "s") << "\n";
    }
}

Canonicalized load_ranges(const std::string& path, io::InputFormat format, std::ostream& err)
{
    auto canon = io::to_range_set(read_document(path, format));
    warn_merges(path, canon, err);
    return canon;
}

int run_eval(const Invocation& inv, std::ostream& out, std::ostream& err)
{
    const ScoreConfig cfg = make_config(inv);
    const auto format = io::parse_input_format(inv.input_format);
    const auto real = load_ranges(inv.real_path, format, err);
    const auto pred = load_ranges(inv.pred_path, format, err);
    out << io::write_report(evaluate(real.set, pred.set, cfg), style_of(inv));
    return ok;
}

int run_sweep(const Invocation& inv, std::ostream& out, std::ostream& err)
{
    const SweepSpec spec = parse_sweep(inv.sweep);
    const auto alphas = sweep_values(spec);
    const ScoreConfig base = make_config(inv);
    std::vector<ScoreConfig> configs;
    configs.reserve(alphas.size());
    for (double a : alphas) {
        configs.push_back(base.with_alpha(a));
    }

    const auto format = io::parse_input_format(inv.input_format);
    const auto real = load_ranges(inv.real_path, format, err);
    const auto pred = load_ranges(inv.pred_path, format, err);

    std::vector<EvalReport> reports;
    reports.reserve(configs.size());
    for (const auto& cfg : configs) {
        reports.push_back(evaluate(real.set, pred.set, cfg));
    }
    out << io::write_reports(reports, style_of(inv));
    return ok;
}

int run_convert(const Invocation& inv, std::ostream& out, std::ostream& err)
{
    const auto style = style_of(inv);
    const auto doc = read_document(inv.input_path, io::parse_input_format(inv.input_format));

    if (inv.to == "ranges") {
        const auto canon = io::to_range_set(doc);
        warn_merges(inv.input_path, canon, err);
        out << io::write_ranges(canon.set, style);
        return ok;
    }

    if (doc.kind == io::SourceKind::points && !inv.length) {
        out << io::write_points(doc.points(), style);
        return ok;
    }
    if (!inv.length) {
        throw ConfigError("converting ranges to points requires --length");
    }
    const auto canon = io::to_range_set(doc);
    out << io::write_points(ranges_to_points(canon.set, *inv.length), style);
    return ok;
}

void add_scoring_options(CLI::App& cmd, Invocation& inv)
{
    cmd.add_option("--real", inv.real_path, "Ground-truth label file")->required();
    cmd.add_option("--pred", inv.pred_path, "Predicted label file")->required();
    cmd.add_option("--alpha", inv.alpha, "Existence reward weight in [0,1]")->capture_default_str();
    cmd.add_option("--gamma", inv.gamma, "Cardinality factor")
        ->check(CLI::IsMember({"one", "reciprocal"}))
        ->capture_default_str();
    cmd.add_option("--rbias", inv.rbias, "Recall positional bias")
        ->check(CLI::IsMember({"flat", "front", "back"}))
        ->capture_default_str();
    cmd.add_option("--pbias", inv.pbias, "Precision positional bias")
        ->check(CLI::IsMember({"flat", "front", "back"}))
        ->capture_default_str();
    cmd.add_option("--fbeta", inv.fbeta, "F-score beta (> 0)")->capture_default_str();
}

void add_io_options(CLI::App& cmd, Invocation& inv)
{
    cmd.add_option("--input-format", inv.input_format, "Label file format")
        ->check(CLI::IsMember({"points", "ranges", "auto"}))
        ->capture_default_str();
    cmd.add_option("--output", inv.output, "Output style")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err)
{
    Invocation inv;
    CLI::App app{"Range-based precision and recall for time-series anomaly detection", "rangeeval"};
    app.require_subcommand(1);

    auto* eval = app.add_subcommand("eval", "Score one real/predicted pair");
    add_scoring_options(*eval, inv);
    add_io_options(*eval, inv);

    auto* sweep = app.add_subcommand("sweep", "Score one pair across a range of alpha values");
    add_scoring_options(*sweep, inv);
    add_io_options(*sweep, inv);
    sweep->add_option("--sweep", inv.sweep, "Alpha values as START:STOP:STEP")->required();

    auto* convert = app.add_subcommand("convert", "Convert between point and range label documents");
    convert->add_option("--input", inv.input_path, "Label file to convert")->required();
    convert->add_option("--to", inv.to, "Target document kind")
        ->check(CLI::IsMember({"points", "ranges"}))
        ->required();
    convert->add_option("--length", inv.length, "Series length, required for ranges -> points");
    add_io_options(*convert, inv);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : config_error;
    }

    try {
        if (eval->parsed()) {
            return run_eval(inv, out, err);
        }
        if (sweep->parsed()) {
            return run_sweep(inv, out, err);
        }
        return run_convert(inv, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return config_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return input_error;
    }
}

} // namespace rangeeval::cli
