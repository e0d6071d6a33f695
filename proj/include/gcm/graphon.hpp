#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "gcm/graph.hpp"
#include "gcm/numeric.hpp"

namespace gcm {

template <typename T>
struct StepData {
    std::vector<T> weights;              // block measures, sum to 1
    std::vector<std::vector<T>> values;  // symmetric, entries in [0,1]
};

/// Step graphon W_{z,A}: block weights plus a symmetric value matrix.
/// Rational data stays exact end to end; anything else is carried as a
/// wide binary float.
class StepGraphon {
public:
    static StepGraphon rational(StepData<Rational> data);
    static StepGraphon floating(StepData<Float> data);

    NumericMode mode() const {
        return std::holds_alternative<StepData<Rational>>(data_)
                   ? NumericMode::rational
                   : NumericMode::floating;
    }
    std::size_t block_count() const;

    const StepData<Rational>& rational_data() const {
        return std::get<StepData<Rational>>(data_);
    }
    const StepData<Float>& float_data() const {
        return std::get<StepData<Float>>(data_);
    }

    std::string to_json() const;
    static StepGraphon from_json(const std::string& text);

private:
    std::variant<StepData<Rational>, StepData<Float>> data_;
};

/// Homomorphism density value, tagged with the mode it was computed in.
struct Density {
    std::variant<Rational, Float> value;
    Float error_bound = 0;  // zero in rational mode

    bool is_rational() const { return std::holds_alternative<Rational>(value); }
    const Rational& rat() const { return std::get<Rational>(value); }
    Float flt() const {
        return is_rational() ? Float(rat()) : std::get<Float>(value);
    }
    double as_double() const { return static_cast<double>(flt()); }
    std::string to_string() const;
    std::string to_json() const;
};

/// Entrywise 1 - A, same weights.
StepGraphon complement(const StepGraphon& w);

inline constexpr std::uint64_t kDefaultDensityBudget = 1000000000ull;

/// t(H, W) by the partition-function sum over block assignments, factorized
/// over connected components of H. Exact when the graphon is rational.
/// Throws budget_error when block_count^{largest component} exceeds budget.
Density density(const Graph& h, const StepGraphon& w,
                std::uint64_t budget = kDefaultDensityBudget);

/// t(C_n, W) as the trace of the n-th power of diag(z) * A. Agrees with
/// density(C_n, w) but costs only a few matrix products.
Density cycle_density(int n, const StepGraphon& w);

/// t(H, W) + t(H, 1-W).
Density mono_density(const Graph& h, const StepGraphon& w,
                     std::uint64_t budget = kDefaultDensityBudget);

Density add(const Density& a, const Density& b);
Density mul(const Density& a, const Density& b);

}  // namespace gcm
