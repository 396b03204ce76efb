#include "multfam/family.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "multfam/newton.hpp"

namespace multfam {

std::string to_string(FamilyKind k)
{
    switch (k) {
    case FamilyKind::adic: return "adic";
    case FamilyKind::twist: return "twist";
    case FamilyKind::product: return "product";
    case FamilyKind::valuative: return "valuative";
    case FamilyKind::table: return "table";
    case FamilyKind::sigma: return "sigma";
    case FamilyKind::volex: return "volex";
    case FamilyKind::shift: return "shift";
    case FamilyKind::closure: return "closure";
    case FamilyKind::custom: return "custom";
    }
    return "?";
}

GradedFamily::GradedFamily(AmbientPtr ambient, FamilyKind kind, Evaluator eval, std::string description,
                           Asymptotics asymptotics)
    : ambient_(std::move(ambient)), kind_(kind), eval_(std::move(eval)), description_(std::move(description)),
      asym_(std::move(asymptotics))
{
}

MonomialIdeal GradedFamily::at(std::int64_t n) const
{
    if (n < 0) {
        throw std::out_of_range("negative family level");
    }
    if (n == 0) {
        return MonomialIdeal::unit(ambient_);
    }
    {
        std::lock_guard lock(memo_mutex_);
        if (auto it = memo_.find(n); it != memo_.end()) {
            return it->second;
        }
    }
    // computed outside the lock; concurrent writers produce equal values
    MonomialIdeal value = eval_(n);
    if (!same_ambient(value.ambient(), ambient_)) {
        throw std::logic_error("family evaluator returned an ideal in another ring");
    }
    std::lock_guard lock(memo_mutex_);
    memo_.emplace(n, value);
    return value;
}

// ---------------------------------------------------------------- sigma

SigmaSchedule SigmaSchedule::builtin()
{
    SigmaSchedule s;
    s.builtin_ = true;
    return s;
}

SigmaSchedule SigmaSchedule::from_breakpoints(std::vector<std::int64_t> breakpoints)
{
    if (breakpoints.empty()) {
        throw std::invalid_argument("sigma schedule needs at least one breakpoint");
    }
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (breakpoints[i] <= 0 || (i > 0 && breakpoints[i] <= breakpoints[i - 1])) {
            throw std::invalid_argument("sigma breakpoints must be positive and strictly increasing");
        }
    }
    SigmaSchedule s;
    s.breaks_ = std::move(breakpoints);
    return s;
}

SigmaSchedule SigmaSchedule::tower()
{
    std::vector<std::int64_t> b{64};
    std::int64_t factor = 16;
    while (b.back() <= (std::int64_t{1} << 56) / factor) {
        b.push_back(b.back() * factor);
        factor *= 2;
    }
    return from_breakpoints(std::move(b));
}

std::int64_t SigmaSchedule::operator()(std::int64_t n) const
{
    if (n < 0) {
        throw std::out_of_range("sigma of a negative index");
    }
    if (builtin_) {
        return (n + 1) / 2;
    }
    if (n <= breaks_[0]) {
        return n / 2;
    }
    std::int64_t value = breaks_[0] / 2;
    for (std::size_t i = 1; i < breaks_.size(); ++i) {
        const std::int64_t lo = breaks_[i - 1];
        const std::int64_t hi = breaks_[i];
        const bool flat = (i % 2 == 1); // [a_k, b_k]
        if (n <= hi) {
            return flat ? value : value + (n - lo) / 2;
        }
        if (!flat) {
            value += (hi - lo) / 2;
        }
    }
    const bool tail_flat = (breaks_.size() % 2 == 1);
    return tail_flat ? value : value + (n - breaks_.back()) / 2;
}

Rational SigmaSchedule::ratio_lower_bound() const { return builtin_ ? Rational(1, 2) : Rational(0); }

std::string SigmaSchedule::str() const
{
    if (builtin_) {
        return "builtin";
    }
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
        os << (i ? "," : "") << breaks_[i];
    }
    os << ']';
    return os.str();
}

ScheduleCheck check_volex_schedule(const SigmaSchedule &s, std::int64_t horizon)
{
    bool low = false;
    bool high = false;
    std::int64_t prev = 0;
    for (std::int64_t n = 1; n <= horizon; ++n) {
        const std::int64_t v = s(n);
        if (v < prev) {
            return {false, "sigma decreases at n=" + std::to_string(n)};
        }
        if (v < 0 || 2 * v > n) {
            return {false, "sigma(n) outside [0, n/2] at n=" + std::to_string(n)};
        }
        low = low || make_rational(v, n) < Rational(1, 20);
        high = high || make_rational(v, n) > Rational(9, 20);
        prev = v;
    }
    if (!low || !high) {
        return {false, "sigma(n)/n does not reach both < 0.05 and > 0.45 within the horizon"};
    }
    return {};
}

ScheduleCheck check_subadditive_schedule(const SigmaSchedule &s, std::int64_t horizon)
{
    for (std::int64_t m = 1; m <= horizon; ++m) {
        if (s(m) < s(m - 1)) {
            return {false, "sigma decreases at n=" + std::to_string(m)};
        }
        for (std::int64_t n = 1; m + n <= horizon; ++n) {
            if (s(m) + s(n) < s(m + n)) {
                return {false, "sigma(" + std::to_string(m) + ")+sigma(" + std::to_string(n) + ") < sigma(" +
                                   std::to_string(m + n) + ")"};
            }
        }
    }
    return {};
}

// ---------------------------------------------------------------- constructors

namespace {

std::function<Rational(const ExponentVector &)> lower_of(const Family &F)
{
    const auto &f = F->asymptotics().value_lower;
    if (f) {
        return f;
    }
    return [](const ExponentVector &) { return Rational(0); };
}

std::int64_t weighted_min(const ExponentVector &w, const std::vector<ExponentVector> &gens)
{
    std::int64_t best = 0;
    bool first = true;
    for (const auto &g : gens) {
        std::int64_t v = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            v += w[i] * g[i];
        }
        if (first || v < best) {
            best = v;
        }
        first = false;
    }
    return best;
}

std::vector<ExponentVector> degree_monomials(int d, std::int64_t deg)
{
    std::vector<ExponentVector> out;
    if (d == 0) {
        if (deg == 0) {
            out.emplace_back();
        }
        return out;
    }
    ExponentVector cur(static_cast<std::size_t>(d), 0);
    std::function<void(int, std::int64_t)> rec = [&](int i, std::int64_t left) {
        if (i == d - 1) {
            cur[static_cast<std::size_t>(i)] = left;
            out.push_back(cur);
            return;
        }
        for (std::int64_t e = left; e >= 0; --e) {
            cur[static_cast<std::size_t>(i)] = e;
            rec(i + 1, left - e);
        }
    };
    rec(0, deg);
    return out;
}

} // namespace

Family adic(const MonomialIdeal &I)
{
    if (!is_m_primary(I) || I.is_unit()) {
        throw std::invalid_argument("adic family needs a proper m-primary ideal");
    }
    Asymptotics a;
    a.shape = AdicShape{{I}, {Rational(1)}};
    a.exact_shape = true;
    if (!I.ambient()->has_quotient()) {
        // v(I^n) = n v(I)
        auto gens = I.gens();
        a.value_lower = [gens](const ExponentVector &w) { return Rational(weighted_min(w, gens)); };
        a.value_upper = a.value_lower;
    }
    return std::make_shared<GradedFamily>(
        I.ambient(), FamilyKind::adic, [I](std::int64_t n) { return ideal_power(I, n); }, "adic(" + I.str() + ")",
        std::move(a));
}

Family twist(const Family &F, const Rational &c)
{
    if (c < 0) {
        throw std::invalid_argument("twist by a negative scale");
    }
    Asymptotics a;
    const auto &src = F->asymptotics();
    if (src.shape) {
        a.shape = *src.shape;
        for (auto &s : a.shape->scales) {
            s *= c;
        }
        a.exact_shape = src.exact_shape && c.get_den() == 1;
    }
    if (src.multiplicity) {
        a.multiplicity = *src.multiplicity * pow(c, static_cast<unsigned>(F->dim()));
    }
    auto low = lower_of(F);
    a.value_lower = [low, c](const ExponentVector &w) { return Rational(c * low(w)); };
    if (src.value_upper) {
        auto up = src.value_upper;
        a.value_upper = [up, c](const ExponentVector &w) { return Rational(c * up(w)); };
    }
    if (src.sub) {
        a.sub = twist(src.sub, c);
    }
    if (src.super) {
        a.super = twist(src.super, c);
    }
    auto ambient = F->ambient();
    GradedFamily::Evaluator eval;
    if (c == 0) {
        eval = [ambient](std::int64_t) { return MonomialIdeal::maximal(ambient); };
    } else {
        eval = [F, c](std::int64_t n) { return F->at(to_i64(ceil_of(c * n))); };
    }
    return std::make_shared<GradedFamily>(ambient, FamilyKind::twist, std::move(eval),
                                          "twist(" + F->description() + ", " + to_string(c) + ")", std::move(a));
}

Family product(const Family &F, const Family &G)
{
    if (!same_ambient(F->ambient(), G->ambient())) {
        throw std::invalid_argument("product of families over different rings");
    }
    Asymptotics a;
    const auto &fa = F->asymptotics();
    const auto &ga = G->asymptotics();
    if (fa.shape && ga.shape) {
        AdicShape s = *fa.shape;
        s.bases.insert(s.bases.end(), ga.shape->bases.begin(), ga.shape->bases.end());
        s.scales.insert(s.scales.end(), ga.shape->scales.begin(), ga.shape->scales.end());
        a.shape = std::move(s);
        a.exact_shape = fa.exact_shape && ga.exact_shape;
    }
    auto lf = lower_of(F);
    auto lg = lower_of(G);
    a.value_lower = [lf, lg](const ExponentVector &w) { return Rational(lf(w) + lg(w)); };
    if (fa.value_upper && ga.value_upper) {
        a.value_upper = [uf = fa.value_upper, ug = ga.value_upper](const ExponentVector &w) {
            return Rational(uf(w) + ug(w));
        };
    }
    if (fa.sub || ga.sub) {
        a.sub = product(fa.sub ? fa.sub : F, ga.sub ? ga.sub : G);
    }
    if (fa.super || ga.super) {
        a.super = product(fa.super ? fa.super : F, ga.super ? ga.super : G);
    }
    return std::make_shared<GradedFamily>(
        F->ambient(), FamilyKind::product, [F, G](std::int64_t n) { return ideal_product(F->at(n), G->at(n)); },
        "product(" + F->description() + ", " + G->description() + ")", std::move(a));
}

Family valuative(AmbientPtr ambient, std::vector<ExponentVector> weights, std::vector<Rational> targets)
{
    if (ambient->has_quotient()) {
        throw std::invalid_argument("valuative family needs a polynomial ambient");
    }
    if (weights.size() != targets.size() || weights.empty()) {
        throw std::invalid_argument("valuative family: weights/targets size mismatch");
    }
    const auto d = static_cast<std::size_t>(ambient->num_vars());
    bool any_positive = false;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i].size() != d) {
            throw std::invalid_argument("exponent arity: weight vector length");
        }
        if (std::any_of(weights[i].begin(), weights[i].end(), [](auto x) { return x <= 0; })) {
            throw std::invalid_argument("valuative family: weight vectors must be strictly positive");
        }
        if (targets[i] < 0) {
            throw std::invalid_argument("valuative family: negative target");
        }
        any_positive = any_positive || targets[i] > 0;
    }
    if (!any_positive) {
        throw std::invalid_argument("valuative family: all targets are zero");
    }
    Asymptotics a;
    // lattice points of n·P converge to the real polyhedron P, whose minimum
    // of w is attained at a rational vertex
    std::vector<LinearConstraint> unit_cons;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        unit_cons.push_back({weights[i], targets[i]});
    }
    a.value_lower = [unit_cons](const ExponentVector &w) { return min_linear(w, unit_cons); };
    a.value_upper = a.value_lower;
    std::ostringstream desc;
    desc << "valuative(";
    for (std::size_t i = 0; i < weights.size(); ++i) {
        desc << (i ? "; " : "") << '[';
        for (std::size_t k = 0; k < d; ++k) {
            desc << (k ? "," : "") << weights[i][k];
        }
        desc << "]>=" << to_string(targets[i]);
    }
    desc << ')';
    return std::make_shared<GradedFamily>(
        ambient, FamilyKind::valuative,
        [ambient, weights, targets](std::int64_t n) {
            std::vector<LinearConstraint> cons;
            for (std::size_t i = 0; i < weights.size(); ++i) {
                cons.push_back({weights[i], targets[i] * n});
            }
            return lattice_ideal(ambient, cons);
        },
        desc.str(), std::move(a));
}

Family sigma_family(const SigmaSchedule &s)
{
    if (auto chk = check_subadditive_schedule(s, 64); !chk.ok) {
        throw std::invalid_argument("sigma family needs a subadditive schedule: " + chk.failure);
    }
    auto ring = AmbientRing::polynomial(1);
    Asymptotics a;
    const Rational low = s.ratio_lower_bound();
    a.value_lower = [low](const ExponentVector &w) { return Rational(low * w[0]); };
    if (s.is_builtin()) {
        a.value_upper = a.value_lower;
    }
    return std::make_shared<GradedFamily>(
        ring, FamilyKind::sigma, [ring, s](std::int64_t n) { return MonomialIdeal(ring, {{s(n)}}); },
        "sigma(" + s.str() + ")", std::move(a));
}

Family volex_family(int d, const SigmaSchedule &s)
{
    if (d < 1) {
        throw std::invalid_argument("volex family needs d >= 1");
    }
    ExponentVector ysq(static_cast<std::size_t>(d + 1), 0);
    ysq.back() = 2;
    auto ring = AmbientRing::quotient(d + 1, {ysq});
    Asymptotics a;
    // associativity: e(J_n) = ℓ(R_(y)) · e(J_n S) = 2 · n^d, S = k[x]
    const auto primes = minimal_primes(ring->quotient_gens(), d + 1);
    a.multiplicity = Rational(primes.front().localized_length);
    return std::make_shared<GradedFamily>(
        ring, FamilyKind::volex,
        [ring, d, s](std::int64_t n) {
            std::vector<ExponentVector> gens;
            for (auto m : degree_monomials(d, n)) {
                m.push_back(0);
                gens.push_back(std::move(m));
            }
            // N_k = R for k <= 0, so y lies in J_n once the degree runs out
            const std::int64_t k = std::max<std::int64_t>(0, n - s(n) - (n + 3) / 4);
            for (auto m : degree_monomials(d, k)) {
                m.push_back(1);
                gens.push_back(std::move(m));
            }
            return MonomialIdeal(ring, std::move(gens));
        },
        "volex(d=" + std::to_string(d) + ", sigma=" + s.str() + ")", std::move(a));
}

Family table_family(AmbientPtr ambient, std::vector<MonomialIdeal> levels)
{
    for (const auto &I : levels) {
        if (!same_ambient(I.ambient(), ambient)) {
            throw std::invalid_argument("table family: level in another ring");
        }
        if (!is_m_primary(I)) {
            throw std::invalid_argument("table family: level is not m-primary");
        }
    }
    const auto N = static_cast<std::int64_t>(levels.size());
    return std::make_shared<GradedFamily>(
        ambient, FamilyKind::table,
        [levels = std::move(levels), N](std::int64_t n) {
            if (n > N) {
                throw std::out_of_range("table family has no level " + std::to_string(n));
            }
            return levels[static_cast<std::size_t>(n - 1)];
        },
        "table(N=" + std::to_string(N) + ")");
}

Family shift(const Family &F, std::int64_t s)
{
    if (s < 0) {
        throw std::invalid_argument("negative shift");
    }
    Asymptotics a;
    const auto &src = F->asymptotics();
    a.shape = src.shape;
    a.multiplicity = src.multiplicity;
    a.value_lower = lower_of(F);
    a.value_upper = src.value_upper;
    if (src.sub) {
        a.sub = shift(src.sub, s);
    }
    if (src.super) {
        a.super = shift(src.super, s);
    }
    return std::make_shared<GradedFamily>(
        F->ambient(), FamilyKind::shift, [F, s](std::int64_t n) { return F->at(n + s); },
        "shift(" + F->description() + ", " + std::to_string(s) + ")", std::move(a));
}

Family closure_family(const Family &F)
{
    Asymptotics a;
    const auto &src = F->asymptotics();
    a.shape = src.shape;
    a.multiplicity = src.multiplicity;
    a.value_lower = lower_of(F);
    a.value_upper = src.value_upper;
    // closure keeps the Newton polyhedron
    a.exact_shape = src.exact_shape;
    a.sub = F;
    return std::make_shared<GradedFamily>(
        F->ambient(), FamilyKind::closure, [F](std::int64_t n) { return integral_closure(F->at(n)); },
        "closure(" + F->description() + ")", std::move(a));
}

Family custom_family(AmbientPtr ambient, GradedFamily::Evaluator eval, std::string description,
                     Asymptotics asymptotics)
{
    return std::make_shared<GradedFamily>(std::move(ambient), FamilyKind::custom, std::move(eval),
                                          std::move(description), std::move(asymptotics));
}

SubadditivityReport audit_subadditive(const Family &F, std::int64_t N)
{
    SubadditivityReport r;
    for (std::int64_t m = 1; m < N; ++m) {
        for (std::int64_t n = m; m + n <= N; ++n) {
            ++r.checked_pairs;
            if (!ideal_product(F->at(m), F->at(n)).subset_of(F->at(m + n))) {
                r.passed = false;
                r.witness_m = m;
                r.witness_n = n;
                return r;
            }
        }
    }
    return r;
}

bool contained_in(const Family &F, const Family &G, std::int64_t N)
{
    for (std::int64_t n = 1; n <= N; ++n) {
        if (!F->at(n).subset_of(G->at(n))) {
            return false;
        }
    }
    return true;
}

} // namespace multfam
