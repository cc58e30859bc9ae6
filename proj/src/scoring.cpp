#include <rangeeval/scoring.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace rangeeval {

ScoreConfig::ScoreConfig(double alpha, PositionalBias recall_bias, PositionalBias precision_bias,
                         CardinalityMode cardinality, double f_beta)
    : alpha_(alpha)
    , recall_bias_(std::move(recall_bias))
    , precision_bias_(std::move(precision_bias))
    , cardinality_(std::move(cardinality))
    , f_beta_(f_beta)
{
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ConfigError("alpha must lie in [0,1], got " + std::to_string(alpha));
    }
    if (!(f_beta > 0.0) || !std::isfinite(f_beta)) {
        throw ConfigError("f-score beta must be a positive number, got " + std::to_string(f_beta));
    }
}

ScoreConfig ScoreConfig::with_alpha(double alpha) const
{
    return ScoreConfig(alpha, recall_bias_, precision_bias_, cardinality_, f_beta_);
}

namespace {

// Overlap size for contiguous cuts of one anomaly. The total weight (the
// denominator) is fixed per anomaly; a cut contributes the weight of the
// positions it covers.
class OverlapSize {
public:
    OverlapSize(const Range& anomaly, const PositionalBias& bias)
        : anomaly_(anomaly)
        , bias_(bias)
        , max_value_(bias.weight_sum(1, anomaly.length(), anomaly.length()))
    {
    }

    [[nodiscard]] double covered_weight(const Range& cut) const
    {
        const TimeIndex first = cut.start - anomaly_.start + 1;
        const TimeIndex last = cut.end - anomaly_.start + 1;
        return bias_.weight_sum(first, last, anomaly_.length());
    }

    [[nodiscard]] double max_value() const noexcept { return max_value_; }

private:
    Range anomaly_;
    const PositionalBias& bias_;
    double max_value_;
};

double overlap_reward_unchecked(const Range& target, std::span<const Range> others, const PositionalBias& bias,
                                const CardinalityMode& mode)
{
    auto it = std::partition_point(others.begin(), others.end(),
                                   [&](const Range& r) { return r.end < target.start; });
    if (it == others.end() || it->start > target.end) {
        return 0.0;
    }

    // Sum_j omega(target, target ∩ others[j]) shares one denominator, so the
    // covered weights are accumulated first and divided once. The covered
    // weights are disjoint, hence the quotient never exceeds 1.
    const OverlapSize size(target, bias);
    double covered = 0.0;
    std::size_t count = 0;
    for (; it != others.end() && it->start <= target.end; ++it) {
        covered += size.covered_weight(*intersect(target, *it));
        ++count;
    }
    const double factor = count <= 1 ? 1.0 : mode.factor(count);
    return factor * std::min(covered / size.max_value(), 1.0);
}

void require_sorted_disjoint(std::span<const Range> ranges, const char* what)
{
    if (!is_sorted_disjoint(ranges)) {
        throw ValidationError(std::string(what) + " ranges must be well-formed, sorted and pairwise disjoint");
    }
}

} // namespace

double omega(const Range& anomaly, std::span<const Range> overlaps, const PositionalBias& bias)
{
    if (anomaly.start > anomaly.end) {
        throw ContractError("malformed anomaly range " + to_string(anomaly));
    }
    std::vector<Range> sorted(overlaps.begin(), overlaps.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].start > sorted[i].end || !anomaly.contains(sorted[i])) {
            throw ContractError("overlap " + to_string(sorted[i]) + " is not contained in anomaly "
                                + to_string(anomaly));
        }
        if (i > 0 && sorted[i - 1].end >= sorted[i].start) {
            throw ContractError("overlaps " + to_string(sorted[i - 1]) + " and " + to_string(sorted[i])
                                + " intersect");
        }
    }

    const OverlapSize size(anomaly, bias);
    double my_value = 0.0;
    for (const auto& cut : sorted) {
        my_value += size.covered_weight(cut);
    }
    return std::min(my_value / size.max_value(), 1.0);
}

int existence_reward(const Range& r_i, std::span<const Range> p)
{
    return cardinality(r_i, p) >= 1 ? 1 : 0;
}

double cardinality_factor(const Range& target, std::span<const Range> others, const CardinalityMode& mode)
{
    const std::size_t count = cardinality(target, others);
    return count <= 1 ? 1.0 : mode.factor(count);
}

double overlap_reward(const Range& r_i, std::span<const Range> p, const PositionalBias& bias,
                      const CardinalityMode& mode)
{
    return overlap_reward_unchecked(r_i, p, bias, mode);
}

double recall_single(const Range& r_i, std::span<const Range> p, const ScoreConfig& cfg)
{
    const double existence = existence_reward(r_i, p);
    const double overlap = overlap_reward_unchecked(r_i, p, cfg.recall_bias(), cfg.cardinality());
    return cfg.alpha() * existence + cfg.beta() * overlap;
}

double precision_single(std::span<const Range> r, const Range& p_i, const ScoreConfig& cfg)
{
    return overlap_reward_unchecked(p_i, r, cfg.precision_bias(), cfg.cardinality());
}

Score recall_total(std::span<const Range> r, std::span<const Range> p, const ScoreConfig& cfg)
{
    require_sorted_disjoint(r, "real");
    require_sorted_disjoint(p, "predicted");
    if (r.empty()) {
        return std::nullopt;
    }
    double sum = 0.0;
    for (const auto& r_i : r) {
        sum += recall_single(r_i, p, cfg);
    }
    return sum / static_cast<double>(r.size());
}

Score precision_total(std::span<const Range> r, std::span<const Range> p, const ScoreConfig& cfg)
{
    require_sorted_disjoint(r, "real");
    require_sorted_disjoint(p, "predicted");
    if (p.empty()) {
        return std::nullopt;
    }
    double sum = 0.0;
    for (const auto& p_i : p) {
        sum += precision_single(r, p_i, cfg);
    }
    return sum / static_cast<double>(p.size());
}

ConfusionCounts classic_counts(const PointLabels& real, const PointLabels& pred)
{
    if (real.size() != pred.size()) {
        throw ValidationError("label sequences differ in length: " + std::to_string(real.size()) + " real vs "
                              + std::to_string(pred.size()) + " predicted");
    }
    ConfusionCounts c;
    for (std::size_t i = 0; i < real.size(); ++i) {
        const bool is_real = real[i] == 1;
        const bool is_pred = pred[i] == 1;
        c.tp += static_cast<std::size_t>(is_real && is_pred);
        c.fp += static_cast<std::size_t>(!is_real && is_pred);
        c.fn += static_cast<std::size_t>(is_real && !is_pred);
    }
    return c;
}

Score classic_recall(const ConfusionCounts& c) noexcept
{
    if (c.tp + c.fn == 0) {
        return std::nullopt;
    }
    return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
}

Score classic_precision(const ConfusionCounts& c) noexcept
{
    if (c.tp + c.fp == 0) {
        return std::nullopt;
    }
    return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
}

Score f_score(Score recall, Score precision, double beta)
{
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw ConfigError("f-score beta must be a positive number, got " + std::to_string(beta));
    }
    if (!recall || !precision) {
        return std::nullopt;
    }
    const double r = *recall;
    const double p = *precision;
    if (r == 0.0 && p == 0.0) {
        return 0.0;
    }
    const double b2 = beta * beta;
    return std::min((1.0 + b2) * p * r / (b2 * p + r), 1.0);
}

EvalReport evaluate(std::span<const Range> r, std::span<const Range> p, const ScoreConfig& cfg)
{
    require_sorted_disjoint(r, "real");
    require_sorted_disjoint(p, "predicted");

    EvalReport report{.recall = std::nullopt,
                      .precision = std::nullopt,
                      .f_score = std::nullopt,
                      .per_real_range = {},
                      .per_predicted_range = {},
                      .config = cfg};

    report.per_real_range.reserve(r.size());
    double recall_sum = 0.0;
    for (const auto& r_i : r) {
        const double s = recall_single(r_i, p, cfg);
        report.per_real_range.push_back({r_i, s});
        recall_sum += s;
    }

    report.per_predicted_range.reserve(p.size());
    double precision_sum = 0.0;
    for (const auto& p_i : p) {
        const double s = precision_single(r, p_i, cfg);
        report.per_predicted_range.push_back({p_i, s});
        precision_sum += s;
    }

    if (!r.empty()) {
        report.recall = recall_sum / static_cast<double>(r.size());
    }
    if (!p.empty()) {
        report.precision = precision_sum / static_cast<double>(p.size());
    }
    report.f_score = f_score(report.recall, report.precision, cfg.f_beta());
    return report;
}

} // namespace rangeeval
