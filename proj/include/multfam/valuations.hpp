#ifndef MULTFAM_VALUATIONS_HPP
#define MULTFAM_VALUATIONS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multfam/family.hpp"
#include "multfam/monomial_ideal.hpp"
#include "multfam/multiplicities.hpp"
#include "multfam/rational.hpp"

namespace multfam {

/// Monomial valuation x^a ↦ w·a with w strictly positive and primitive.
class WeightValuation
{
public:
    /// Throws std::invalid_argument unless every entry is > 0 and gcd = 1.
    explicit WeightValuation(ExponentVector weights);

    const ExponentVector &weights() const { return w_; }
    std::int64_t operator()(std::span<const std::int64_t> a) const;
    std::string str() const;

    bool operator==(const WeightValuation &) const = default;
    auto operator<=>(const WeightValuation &) const = default;

private:
    ExponentVector w_;
};

/// v(F) = inf v(I_m)/m. `value` is the best upper bound (smallest sampled
/// ratio, or a structural bound); `lower_bound` is rigorous. exact iff the two
/// meet, in which case bound_gap = 0.
struct AsymptoticValue
{
    WeightValuation valuation;
    Rational value;
    Rational lower_bound;
    Rational bound_gap;
    std::optional<std::int64_t> attained_at;
    bool exact = false;
    std::vector<Sample> samples;
};

/// min over generators of w·g. Throws on the zero ideal.
std::int64_t value_on_ideal(const WeightValuation &v, const MonomialIdeal &I);

AsymptoticValue family_value(const WeightValuation &v, const Family &F, std::int64_t nmax);

struct ClosureLevel
{
    MonomialIdeal ideal;
    /// True when the last depth r = R added nothing.
    bool stable = false;
};

/// I*_n ≈ ∪_{r <= depth} {a : r·a ∈ NP(I_{rn})}.
ClosureLevel family_integral_closure(const Family &F, std::int64_t n, int depth = 6);

/// Saturation with respect to a finite valuation set, with values fixed once.
struct Saturation
{
    std::vector<WeightValuation> valuations;
    std::vector<AsymptoticValue> values;
    /// Some value is not known exactly; levels use its upper bound.
    bool approximate = false;

    MonomialIdeal level(const AmbientPtr &ambient, std::int64_t n) const;
};

Saturation saturation(const Family &F, const std::vector<WeightValuation> &valuations, std::int64_t nmax);

struct SaturatedLevel
{
    MonomialIdeal ideal;
    bool approximate = false;
};

SaturatedLevel saturate(const Family &F, const std::vector<WeightValuation> &valuations, std::int64_t nmax,
                        std::int64_t n);

/// Union of the Rees weights of I_n over the sampling ladder up to nmax.
std::vector<WeightValuation> default_valuation_set(const Family &F, std::int64_t nmax);

} // namespace multfam

#endif
