#pragma once

#include <rangeeval/bias.hpp>
#include <rangeeval/ranges.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace rangeeval {

/// A metric value, or std::nullopt when the metric is vacuous (its averaging
/// denominator is zero).
using Score = std::optional<double>;

/// Scoring parameters. beta is always 1 - alpha.
class ScoreConfig {
public:
    /// Throws ConfigError when alpha is outside [0,1] or f_beta is not > 0.
    explicit ScoreConfig(double alpha = 0.0,
                         PositionalBias recall_bias = PositionalBias::flat(),
                         PositionalBias precision_bias = PositionalBias::flat(),
                         CardinalityMode cardinality = CardinalityMode::one(),
                         double f_beta = 1.0);

    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double beta() const noexcept { return 1.0 - alpha_; }
    [[nodiscard]] const PositionalBias& recall_bias() const noexcept { return recall_bias_; }
    [[nodiscard]] const PositionalBias& precision_bias() const noexcept { return precision_bias_; }
    [[nodiscard]] const CardinalityMode& cardinality() const noexcept { return cardinality_; }
    [[nodiscard]] double f_beta() const noexcept { return f_beta_; }

    [[nodiscard]] ScoreConfig with_alpha(double alpha) const;

private:
    double alpha_;
    PositionalBias recall_bias_;
    PositionalBias precision_bias_;
    CardinalityMode cardinality_;
    double f_beta_;
};

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct RangeScore {
    Range range;
    double score = 0.0;
};

struct EvalReport {
    Score recall;
    Score precision;
    Score f_score;
    std::vector<RangeScore> per_real_range;
    std::vector<RangeScore> per_predicted_range;
    ScoreConfig config;
};

// Range arguments named `p`, `r`, `others` below must be sorted and pairwise
// disjoint (RangeSet, or the single-point lists from explode_to_single_points).
// The *_total functions and evaluate check this and throw ValidationError.

/// Bias-weighted fraction of `anomaly` covered by `overlaps`: the sum of
/// weights of covered positions over the sum of all weights. Throws
/// ContractError when an overlap leaves `anomaly` or two overlaps intersect.
double omega(const Range& anomaly, std::span<const Range> overlaps, const PositionalBias& bias);

/// 1 when `r_i` shares at least one point with some member of `p`, else 0.
int existence_reward(const Range& r_i, std::span<const Range> p);

/// 1 when `target` overlaps at most one member of `others`, otherwise the
/// mode's factor for the overlap count.
double cardinality_factor(const Range& target, std::span<const Range> others, const CardinalityMode& mode);

/// cardinality_factor times the sum, over each overlapping member, of omega
/// for that single intersection.
double overlap_reward(const Range& r_i, std::span<const Range> p, const PositionalBias& bias,
                      const CardinalityMode& mode);

/// alpha * existence + (1 - alpha) * overlap, with the recall-side bias.
double recall_single(const Range& r_i, std::span<const Range> p, const ScoreConfig& cfg);

/// Mean of recall_single over `r`; undefined when `r` is empty.
Score recall_total(std::span<const Range> r, std::span<const Range> p, const ScoreConfig& cfg);

/// Overlap reward of `p_i` against `r` with the precision-side bias. No
/// existence term.
double precision_single(std::span<const Range> r, const Range& p_i, const ScoreConfig& cfg);

/// Mean of precision_single over `p`; undefined when `p` is empty.
Score precision_total(std::span<const Range> r, std::span<const Range> p, const ScoreConfig& cfg);

/// Point-wise TP/FP/FN tally. Throws ValidationError on length mismatch.
ConfusionCounts classic_counts(const PointLabels& real, const PointLabels& pred);

Score classic_recall(const ConfusionCounts& c) noexcept;
Score classic_precision(const ConfusionCounts& c) noexcept;

/// F-beta combination. f_score(0, 0) is 0; undefined if either input is.
Score f_score(Score recall, Score precision, double beta);

/// Recall, precision, F-score and per-range breakdowns. Summation runs in
/// ascending range order, so repeated calls are bit-identical.
EvalReport evaluate(std::span<const Range> r, std::span<const Range> p, const ScoreConfig& cfg);

} // namespace rangeeval
