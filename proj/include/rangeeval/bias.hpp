#pragma once

#include <rangeeval/ranges.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rangeeval {

/// Raised for invalid scoring parameters: alpha outside [0,1], weights below
/// 1, factors outside [0,1], or a custom table lacking a needed entry.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an argument breaks a documented precondition, e.g. a 1-based
/// position outside [1, length] or an overlap not contained in its anomaly.
class ContractError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Positional bias: the weight given to the i-th point (1-based) of a range
/// of a given length. Every weight is >= 1.
class PositionalBias {
public:
    enum class Kind { flat, front_end, tail_end, custom };

    /// Caller-supplied weight rule, evaluated lazily. Weights below 1 are
    /// reported as ConfigError when first produced.
    using Rule = std::function<double(TimeIndex position, TimeIndex length)>;

    PositionalBias() = default;

    static PositionalBias flat() { return PositionalBias(Kind::flat); }
    static PositionalBias front_end() { return PositionalBias(Kind::front_end); }
    static PositionalBias tail_end() { return PositionalBias(Kind::tail_end); }

    /// Per-length weight table: `weights[L]` holds the weights of positions
    /// 1..L of a range of length L. Validated eagerly.
    static PositionalBias custom_table(std::map<TimeIndex, std::vector<double>> weights,
                                       std::string name = "custom");
    static PositionalBias custom_rule(Rule rule, std::string name = "custom");

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] std::string_view name() const noexcept;

    /// delta(i, L). Throws ContractError unless 1 <= position <= length.
    [[nodiscard]] double weight(TimeIndex position, TimeIndex length) const;

    /// Sum of weights over positions first..last (1-based, inclusive) of a
    /// range of the given length.
    [[nodiscard]] double weight_sum(TimeIndex first, TimeIndex last, TimeIndex length) const;

private:
    struct Table;

    explicit PositionalBias(Kind kind) : kind_(kind) {}

    Kind kind_ = Kind::flat;
    std::shared_ptr<const Table> table_;
    std::shared_ptr<const Rule> rule_;
    std::string name_;
};

double delta(TimeIndex position, TimeIndex length, const PositionalBias& bias);

/// Cardinality factor gamma, consulted only when a range overlaps two or
/// more counterparts.
class CardinalityMode {
public:
    enum class Kind { one, reciprocal, custom };

    CardinalityMode() = default;

    static CardinalityMode one() { return CardinalityMode(Kind::one); }
    static CardinalityMode reciprocal() { return CardinalityMode(Kind::reciprocal); }
    /// Overlap count -> factor in [0,1]. Validated eagerly.
    static CardinalityMode custom(std::map<std::size_t, double> factors);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] std::string_view name() const noexcept;
    [[nodiscard]] const std::map<std::size_t, double>& table() const noexcept { return table_; }

    /// gamma(count) for count >= 2. Throws ConfigError when a custom table
    /// has no entry for `count`.
    [[nodiscard]] double factor(std::size_t count) const;

private:
    explicit CardinalityMode(Kind kind) : kind_(kind) {}

    Kind kind_ = Kind::one;
    std::map<std::size_t, double> table_;
};

} // namespace rangeeval
