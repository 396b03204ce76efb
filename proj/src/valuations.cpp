#include "multfam/valuations.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "multfam/newton.hpp"

namespace multfam {

WeightValuation::WeightValuation(ExponentVector weights) : w_(std::move(weights))
{
    if (w_.empty()) {
        throw std::invalid_argument("weight valuation needs at least one entry");
    }
    std::int64_t g = 0;
    for (auto x : w_) {
        if (x <= 0) {
            throw std::invalid_argument("weight valuation entries must be strictly positive");
        }
        g = std::gcd(g, x);
    }
    if (g != 1) {
        throw std::invalid_argument("weight vector " + str() + " is not primitive");
    }
}

std::int64_t WeightValuation::operator()(std::span<const std::int64_t> a) const
{
    std::int64_t v = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        v += w_[i] * a[i];
    }
    return v;
}

std::string WeightValuation::str() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < w_.size(); ++i) {
        os << (i ? "," : "") << w_[i];
    }
    os << ')';
    return os.str();
}

std::int64_t value_on_ideal(const WeightValuation &v, const MonomialIdeal &I)
{
    if (I.is_zero()) {
        throw std::invalid_argument("valuation of the zero ideal");
    }
    if (static_cast<int>(v.weights().size()) != I.num_vars()) {
        throw std::invalid_argument("exponent arity: weight vector length " + std::to_string(v.weights().size()) +
                                    ", expected " + std::to_string(I.num_vars()));
    }
    std::int64_t best = v(I.gens().front());
    for (const auto &g : I.gens()) {
        best = std::min(best, v(g));
    }
    return best;
}

namespace {

std::optional<Rational> shape_value(const WeightValuation &v, const Asymptotics &a)
{
    if (!a.shape) {
        return std::nullopt;
    }
    Rational total = 0;
    for (std::size_t j = 0; j < a.shape->bases.size(); ++j) {
        total += a.shape->scales[j] * value_on_ideal(v, a.shape->bases[j]);
    }
    return total;
}

Rational structural_lower(const WeightValuation &v, const Family &F)
{
    const auto &a = F->asymptotics();
    Rational best = 0;
    if (a.value_lower) {
        best = std::max(best, a.value_lower(v.weights()));
    }
    if (auto s = shape_value(v, a)) {
        best = std::max(best, *s);
    }
    if (a.super) {
        // F ⊆ super
        best = std::max(best, structural_lower(v, a.super));
    }
    return best;
}

std::optional<Rational> structural_upper(const WeightValuation &v, const Family &F)
{
    const auto &a = F->asymptotics();
    std::optional<Rational> best;
    auto take = [&](const Rational &x) {
        if (!best || x < *best) {
            best = x;
        }
    };
    if (a.value_upper) {
        take(a.value_upper(v.weights()));
    }
    if (auto s = shape_value(v, a)) {
        take(*s);
    }
    if (a.sub) {
        // sub ⊆ F
        if (auto u = structural_upper(v, a.sub)) {
            take(*u);
        }
    }
    return best;
}

void require_polynomial(const Family &F)
{
    if (F->ambient()->has_quotient()) {
        throw std::invalid_argument("monomial valuations need a polynomial ambient");
    }
}

} // namespace

AsymptoticValue family_value(const WeightValuation &v, const Family &F, std::int64_t nmax)
{
    require_polynomial(F);
    AsymptoticValue out{v, 0, 0, 0, std::nullopt, false, {}};
    std::optional<Rational> sampled;
    for (auto m : sampling_ladder(nmax, 2)) {
        Rational r = make_rational(value_on_ideal(v, F->at(m)), m);
        out.samples.push_back({m, r});
        if (!sampled || r < *sampled) {
            sampled = r;
        }
    }
    out.value = *sampled;
    if (auto u = structural_upper(v, F); u && *u < out.value) {
        out.value = *u;
    }
    out.lower_bound = structural_lower(v, F);
    if (out.lower_bound > out.value) {
        throw std::logic_error("family_value: lower bound " + to_string(out.lower_bound) + " exceeds upper bound " +
                               to_string(out.value) + " for " + F->description());
    }
    out.bound_gap = out.value - out.lower_bound;
    out.exact = out.bound_gap == 0;
    for (const auto &s : out.samples) {
        if (s.value == out.value) {
            out.attained_at = s.n;
            break;
        }
    }
    return out;
}

ClosureLevel family_integral_closure(const Family &F, std::int64_t n, int depth)
{
    require_polynomial(F);
    if (depth < 1 || n < 1) {
        throw std::invalid_argument("family_integral_closure needs n >= 1 and depth >= 1");
    }
    const auto &R = F->ambient();
    if (const auto &a = F->asymptotics(); a.exact_shape && a.shape) {
        // NP(I_rn) = rn·NP(B), so every depth cuts out the same ideal
        auto base = MonomialIdeal::unit(R);
        for (std::size_t j = 0; j < a.shape->bases.size(); ++j) {
            base = ideal_product(base, ideal_power(a.shape->bases[j], to_i64(a.shape->scales[j].get_num())));
        }
        const auto P = newton_polyhedron(base);
        std::vector<LinearConstraint> cons;
        for (const auto &f : P.bounded_facets()) {
            cons.push_back({f.normal, Rational(f.offset) * n});
        }
        return {lattice_ideal(R, cons), true};
    }
    std::optional<MonomialIdeal> acc;
    bool grew_last = false;
    for (int r = 1; r <= depth; ++r) {
        const auto P = newton_polyhedron(F->at(static_cast<std::int64_t>(r) * n));
        std::vector<LinearConstraint> cons;
        for (const auto &f : P.bounded_facets()) {
            cons.push_back({f.normal, make_rational(f.offset, r)});
        }
        auto level = lattice_ideal(R, cons);
        if (!acc) {
            acc = level;
            continue;
        }
        auto next = ideal_sum(*acc, level);
        grew_last = !(next == *acc);
        acc = std::move(next);
    }
    return {*acc, !grew_last};
}

MonomialIdeal Saturation::level(const AmbientPtr &ambient, std::int64_t n) const
{
    if (n == 0) {
        return MonomialIdeal::unit(ambient);
    }
    std::vector<LinearConstraint> cons;
    for (const auto &v : values) {
        cons.push_back({v.valuation.weights(), v.value * n});
    }
    return lattice_ideal(ambient, cons);
}

Saturation saturation(const Family &F, const std::vector<WeightValuation> &valuations, std::int64_t nmax)
{
    require_polynomial(F);
    if (valuations.empty()) {
        throw std::invalid_argument("saturation needs a nonempty valuation set");
    }
    Saturation s;
    s.valuations = valuations;
    for (const auto &v : valuations) {
        s.values.push_back(family_value(v, F, nmax));
        s.approximate = s.approximate || !s.values.back().exact;
    }
    return s;
}

SaturatedLevel saturate(const Family &F, const std::vector<WeightValuation> &valuations, std::int64_t nmax,
                        std::int64_t n)
{
    auto s = saturation(F, valuations, nmax);
    return {s.level(F->ambient(), n), s.approximate};
}

std::vector<WeightValuation> default_valuation_set(const Family &F, std::int64_t nmax)
{
    require_polynomial(F);
    std::set<ExponentVector> seen;
    for (auto n : sampling_ladder(nmax, 0)) {
        for (const auto &[w, c] : rees_weights(F->at(n))) {
            seen.insert(w);
        }
    }
    std::vector<WeightValuation> out;
    for (const auto &w : seen) {
        out.emplace_back(w);
    }
    return out;
}

} // namespace multfam
