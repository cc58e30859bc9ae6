#include <rangeeval/scoring.hpp>

#include "support/brute_force.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <random>

using namespace rangeeval;

namespace {

constexpr double tol = 1e-12;

PositionalBias library_bias(brute::Bias b)
{
    switch (b) {
    case brute::Bias::flat: return PositionalBias::flat();
    case brute::Bias::front: return PositionalBias::front_end();
    case brute::Bias::back: return PositionalBias::tail_end();
    }
    return PositionalBias::flat();
}

CardinalityMode library_gamma(brute::Gamma g)
{
    return g == brute::Gamma::one ? CardinalityMode::one() : CardinalityMode::reciprocal();
}

void expect_same_score(const Score& got, const std::optional<double>& want)
{
    ASSERT_EQ(got.has_value(), want.has_value());
    if (got) {
        ASSERT_NEAR(*got, *want, tol);
    }
}

} // namespace

TEST(Subsumption, SinglePointRangesReproduceClassicMetrics)
{
    std::mt19937_64 rng(20180101);
    const ScoreConfig degenerate(0.0, PositionalBias::flat(), PositionalBias::flat(), CardinalityMode::one());
    for (int trial = 0; trial < 1000; ++trial) {
        const auto real_raw = gen::labels(rng);
        std::vector<int> pred_raw = gen::labels(rng);
        pred_raw.resize(real_raw.size(), 0);

        const PointLabels real(std::vector<std::uint8_t>(real_raw.begin(), real_raw.end()));
        const PointLabels pred(std::vector<std::uint8_t>(pred_raw.begin(), pred_raw.end()));
        const auto r = explode_to_single_points(points_to_ranges(real));
        const auto p = explode_to_single_points(points_to_ranges(pred));
        const auto counts = classic_counts(real, pred);

        const Score rt = recall_total(r, p, degenerate);
        const Score pt = precision_total(r, p, degenerate);
        const Score rc = classic_recall(counts);
        const Score pc = classic_precision(counts);
        ASSERT_EQ(rt.has_value(), rc.has_value());
        ASSERT_EQ(pt.has_value(), pc.has_value());
        if (rt) {
            ASSERT_NEAR(*rt, *rc, tol);
        }
        if (pt) {
            ASSERT_NEAR(*pt, *pc, tol);
        }
    }
}

TEST(Duality, PrecisionIsRecallWithRolesSwapped)
{
    std::mt19937_64 rng(42);
    const brute::Bias biases[] = {brute::Bias::flat, brute::Bias::front, brute::Bias::back};
    for (int trial = 0; trial < 1000; ++trial) {
        const auto r = gen::range_set(rng);
        const auto p = gen::range_set(rng);
        const auto bias = library_bias(biases[trial % 3]);
        const auto gamma = trial % 2 == 0 ? CardinalityMode::one() : CardinalityMode::reciprocal();

        const ScoreConfig cfg(0.5, PositionalBias::flat(), bias, gamma);
        const ScoreConfig swapped(0.0, bias, PositionalBias::flat(), gamma);
        const Score precision = precision_total(r, p, cfg);
        const Score recall = recall_total(p, r, swapped);
        ASSERT_EQ(precision.has_value(), recall.has_value());
        if (precision) {
            ASSERT_NEAR(*precision, *recall, tol);
        }
    }
}

TEST(Oracle, RandomInstancesMatchPointEnumeration)
{
    std::mt19937_64 rng(99);
    const double alphas[] = {0.0, 0.25, 0.5, 1.0};
    for (int trial = 0; trial < 2000; ++trial) {
        const auto r = gen::range_set(rng, 48);
        const auto p = gen::range_set(rng, 48);
        const auto rb = static_cast<brute::Bias>(trial % 3);
        const auto pb = static_cast<brute::Bias>((trial / 3) % 3);
        const auto g = static_cast<brute::Gamma>((trial / 9) % 2);
        const double alpha = alphas[(trial / 18) % 4];

        const ScoreConfig cfg(alpha, library_bias(rb), library_bias(pb), library_gamma(g));
        const auto report = evaluate(r, p, cfg);
        expect_same_score(report.recall, brute::recall_total(gen::as_vector(r), gen::as_vector(p), alpha, rb, g));
        expect_same_score(report.precision, brute::precision_total(gen::as_vector(r), gen::as_vector(p), pb, g));
    }
}

TEST(Bounds, EveryDefinedScoreInUnitInterval)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto r = gen::range_set(rng);
        const auto p = gen::range_set(rng);
        const ScoreConfig cfg(unit(rng), library_bias(static_cast<brute::Bias>(trial % 3)),
                              library_bias(static_cast<brute::Bias>((trial + 1) % 3)),
                              trial % 2 ? CardinalityMode::reciprocal() : CardinalityMode::one(), 0.5 + unit(rng));
        const auto report = evaluate(r, p, cfg);
        for (const auto& s : {report.recall, report.precision, report.f_score}) {
            if (s) {
                ASSERT_GE(*s, 0.0);
                ASSERT_LE(*s, 1.0);
            }
        }
        for (const auto& rs : report.per_real_range) {
            ASSERT_GE(rs.score, 0.0);
            ASSERT_LE(rs.score, 1.0);
        }
        for (const auto& rs : report.per_predicted_range) {
            ASSERT_GE(rs.score, 0.0);
            ASSERT_LE(rs.score, 1.0);
        }
    }
}

TEST(Omega, FlatMonotoneUnderExtension)
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<TimeIndex> len(1, 40);
    for (int trial = 0; trial < 500; ++trial) {
        const Range anomaly{0, len(rng) - 1};
        std::uniform_int_distribution<TimeIndex> pos(anomaly.start, anomaly.end);
        TimeIndex a = pos(rng);
        TimeIndex b = pos(rng);
        Range cut{std::min(a, b), std::max(a, b)};
        double previous = omega(anomaly, std::vector<Range>{cut}, PositionalBias::flat());
        while (cut.start > anomaly.start || cut.end < anomaly.end) {
            if (cut.start > anomaly.start && (trial % 2 == 0 || cut.end == anomaly.end)) {
                --cut.start;
            } else {
                ++cut.end;
            }
            const double next = omega(anomaly, std::vector<Range>{cut}, PositionalBias::flat());
            ASSERT_GE(next, previous);
            previous = next;
        }
        ASSERT_EQ(previous, 1.0);
    }
}

TEST(Extremes, PerfectAndDisjointPredictions)
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 500; ++trial) {
        const auto r = gen::range_set(rng);
        const ScoreConfig cfg(0.25 * (trial % 5), library_bias(static_cast<brute::Bias>(trial % 3)),
                              library_bias(static_cast<brute::Bias>((trial / 3) % 3)),
                              trial % 2 ? CardinalityMode::reciprocal() : CardinalityMode::one());
        if (!r.empty()) {
            ASSERT_EQ(*recall_total(r, r, cfg), 1.0);
            ASSERT_EQ(*precision_total(r, r, cfg), 1.0);
        }

        // Shift every range past the horizon: no overlaps at all.
        std::vector<Range> far;
        for (const auto& x : r) {
            far.push_back({x.start + 1000, x.end + 1000});
        }
        const auto p = make_range_set(far);
        if (!r.empty()) {
            ASSERT_EQ(*recall_total(r, p, cfg.with_alpha(0.0)), 0.0);
            ASSERT_EQ(*precision_total(r, p, cfg), 0.0);
        }
    }
}

TEST(Cardinality, SplitPredictionScaledByReciprocal)
{
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<TimeIndex> len(2, 40);
    for (int trial = 0; trial < 500; ++trial) {
        const Range r_i{10, 10 + len(rng) - 1};
        std::uniform_int_distribution<std::size_t> pieces_dist(1, static_cast<std::size_t>(r_i.length()));
        const std::size_t k = pieces_dist(rng);

        // Up to k adjacent pieces that together cover r_i exactly.
        std::vector<Range> pieces;
        std::uniform_int_distribution<TimeIndex> cut(r_i.start, r_i.end);
        std::vector<TimeIndex> boundaries{r_i.start};
        for (std::size_t i = 1; i < k; ++i) {
            boundaries.push_back(cut(rng));
        }
        std::sort(boundaries.begin(), boundaries.end());
        boundaries.erase(std::unique(boundaries.begin(), boundaries.end()), boundaries.end());
        for (std::size_t i = 0; i < boundaries.size(); ++i) {
            const TimeIndex s = boundaries[i];
            const TimeIndex e = i + 1 < boundaries.size() ? boundaries[i + 1] - 1 : r_i.end;
            pieces.push_back({s, e});
        }
        // Pieces are adjacent, so they would merge in a RangeSet; score
        // them as a raw sorted disjoint list instead.
        ASSERT_TRUE(is_sorted_disjoint(pieces));
        const std::size_t n = pieces.size();

        for (auto bias : {brute::Bias::flat, brute::Bias::front, brute::Bias::back}) {
            const double got = overlap_reward(r_i, pieces, library_bias(bias), CardinalityMode::reciprocal());
            const double want = brute::overlap_reward(r_i, pieces, bias, brute::Gamma::reciprocal);
            ASSERT_NEAR(got, want, tol);
            // Pieces cover r_i completely, so the omega sum is 1.
            ASSERT_NEAR(got, 1.0 / static_cast<double>(n), tol);
        }
    }
}

TEST(Determinism, RepeatedEvaluationIsBitIdentical)
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const auto r = gen::range_set(rng);
        const auto p = gen::range_set(rng);
        const ScoreConfig cfg(0.3, PositionalBias::front_end(), PositionalBias::tail_end(),
                              CardinalityMode::reciprocal());
        const auto a = evaluate(r, p, cfg);
        const auto b = evaluate(r, p, cfg);
        ASSERT_EQ(a.recall.has_value(), b.recall.has_value());
        if (a.recall) {
            ASSERT_EQ(std::memcmp(&*a.recall, &*b.recall, sizeof(double)), 0);
        }
        if (a.precision) {
            ASSERT_EQ(std::memcmp(&*a.precision, &*b.precision, sizeof(double)), 0);
        }
    }
}
