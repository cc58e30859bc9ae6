#include <rangeeval/bias.hpp>

#include <cmath>

namespace rangeeval {

// Prefix sums per length, so any position span is summed in O(1).
struct PositionalBias::Table {
    std::map<TimeIndex, std::vector<double>> weights;
    std::map<TimeIndex, std::vector<double>> prefix;
};

PositionalBias PositionalBias::custom_table(std::map<TimeIndex, std::vector<double>> weights, std::string name)
{
    auto table = std::make_shared<Table>();
    for (const auto& [length, row] : weights) {
        if (length < 1 || static_cast<std::size_t>(length) != row.size()) {
            throw ConfigError("custom bias row for length " + std::to_string(length) + " has "
                              + std::to_string(row.size()) + " weights");
        }
        std::vector<double> prefix(row.size() + 1, 0.0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (!(row[i] >= 1.0) || !std::isfinite(row[i])) {
                throw ConfigError("custom bias weight at position " + std::to_string(i + 1) + " of length "
                                  + std::to_string(length) + " is " + std::to_string(row[i])
                                  + "; weights must be finite and >= 1");
            }
            prefix[i + 1] = prefix[i] + row[i];
        }
        table->prefix.emplace(length, std::move(prefix));
    }
    table->weights = std::move(weights);

    PositionalBias bias(Kind::custom);
    bias.table_ = std::move(table);
    bias.name_ = std::move(name);
    return bias;
}

PositionalBias PositionalBias::custom_rule(Rule rule, std::string name)
{
    if (!rule) {
        throw ConfigError("custom bias rule is empty");
    }
    PositionalBias bias(Kind::custom);
    bias.rule_ = std::make_shared<const Rule>(std::move(rule));
    bias.name_ = std::move(name);
    return bias;
}

std::string_view PositionalBias::name() const noexcept
{
    switch (kind_) {
    case Kind::flat: return "flat";
    case Kind::front_end: return "front";
    case Kind::tail_end: return "back";
    case Kind::custom: return name_;
    }
    return "unknown";
}

double PositionalBias::weight(TimeIndex position, TimeIndex length) const
{
    if (length < 1 || position < 1 || position > length) {
        throw ContractError("bias position " + std::to_string(position) + " outside [1, "
                            + std::to_string(length) + "]");
    }
    switch (kind_) {
    case Kind::flat: return 1.0;
    case Kind::front_end: return static_cast<double>(length - position + 1);
    case Kind::tail_end: return static_cast<double>(position);
    case Kind::custom: break;
    }
    if (table_) {
        auto row = table_->weights.find(length);
        if (row == table_->weights.end()) {
            throw ConfigError("custom bias '" + name_ + "' has no weights for length " + std::to_string(length));
        }
        return row->second[static_cast<std::size_t>(position - 1)];
    }
    const double w = (*rule_)(position, length);
    if (!(w >= 1.0) || !std::isfinite(w)) {
        throw ConfigError("custom bias '" + name_ + "' produced weight " + std::to_string(w) + " at position "
                          + std::to_string(position) + " of length " + std::to_string(length)
                          + "; weights must be finite and >= 1");
    }
    return w;
}

namespace {

// Sum of the integers a..b, exact in 64 bits for any realistic series length.
std::int64_t arithmetic_sum(std::int64_t a, std::int64_t b)
{
    return (a + b) * (b - a + 1) / 2;
}

} // namespace

double PositionalBias::weight_sum(TimeIndex first, TimeIndex last, TimeIndex length) const
{
    if (length < 1 || first < 1 || last > length || first > last) {
        throw ContractError("bias span [" + std::to_string(first) + "," + std::to_string(last) + "] outside [1, "
                            + std::to_string(length) + "]");
    }
    switch (kind_) {
    case Kind::flat: return static_cast<double>(last - first + 1);
    case Kind::front_end:
        return static_cast<double>(arithmetic_sum(length - last + 1, length - first + 1));
    case Kind::tail_end: return static_cast<double>(arithmetic_sum(first, last));
    case Kind::custom: break;
    }
    if (table_) {
        auto row = table_->prefix.find(length);
        if (row == table_->prefix.end()) {
            throw ConfigError("custom bias '" + name_ + "' has no weights for length " + std::to_string(length));
        }
        return row->second[static_cast<std::size_t>(last)] - row->second[static_cast<std::size_t>(first - 1)];
    }
    double sum = 0.0;
    for (TimeIndex i = first; i <= last; ++i) {
        sum += weight(i, length);
    }
    return sum;
}

double delta(TimeIndex position, TimeIndex length, const PositionalBias& bias)
{
    return bias.weight(position, length);
}

CardinalityMode CardinalityMode::custom(std::map<std::size_t, double> factors)
{
    for (const auto& [count, factor] : factors) {
        if (!(factor >= 0.0 && factor <= 1.0)) {
            throw ConfigError("cardinality factor for count " + std::to_string(count) + " is "
                              + std::to_string(factor) + "; factors must lie in [0,1]");
        }
    }
    CardinalityMode mode(Kind::custom);
    mode.table_ = std::move(factors);
    return mode;
}

std::string_view CardinalityMode::name() const noexcept
{
    switch (kind_) {
    case Kind::one: return "one";
    case Kind::reciprocal: return "reciprocal";
    case Kind::custom: return "custom";
    }
    return "unknown";
}

double CardinalityMode::factor(std::size_t count) const
{
    switch (kind_) {
    case Kind::one: return 1.0;
    case Kind::reciprocal: return 1.0 / static_cast<double>(count);
    case Kind::custom: break;
    }
    auto it = table_.find(count);
    if (it == table_.end()) {
        throw ConfigError("custom cardinality table has no factor for overlap count " + std::to_string(count));
    }
    return it->second;
}

} // namespace rangeeval
