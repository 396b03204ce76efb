#include "multfam/multiplicities.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "multfam/newton.hpp"
#include "linalg.hpp"
#include "parallel.hpp"

namespace multfam {

std::string to_string(Certificate c) { return c == Certificate::exact ? "exact" : "extrapolated"; }

namespace {

Rational pow_n(std::int64_t n, int d)
{
    Integer p = 1;
    for (int i = 0; i < d; ++i) {
        p *= n;
    }
    return Rational(p);
}

// All α in N^r with |α| = d, lexicographically descending.
std::vector<std::vector<int>> compositions(int r, int d)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(r), 0);
    auto rec = [&](auto &&self, int i, int left) -> void {
        if (i == r - 1) {
            cur[static_cast<std::size_t>(i)] = left;
            out.push_back(cur);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[static_cast<std::size_t>(i)] = e;
            self(self, i + 1, left - e);
        }
    };
    if (r > 0) {
        rec(rec, 0, d);
    }
    return out;
}

Integer multinomial(const std::vector<int> &alpha)
{
    int d = 0;
    Integer den = 1;
    for (int a : alpha) {
        d += a;
        den *= factorial(static_cast<unsigned>(a));
    }
    return Integer(factorial(static_cast<unsigned>(d)) / den);
}

void fill_window(ConvergenceReport &rep, std::int64_t nmax)
{
    const auto cut = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(nmax))));
    bool first = true;
    for (const auto &s : rep.samples) {
        if (s.n < cut && s.n != rep.samples.back().n) {
            continue;
        }
        if (first || s.value > rep.window_sup) {
            rep.window_sup = s.value;
        }
        if (first || s.value < rep.window_inf) {
            rep.window_inf = s.value;
        }
        first = false;
    }
}

// Checks value(mn) <= value(n) over all sampled pairs.
void check_multiples(ConvergenceReport &rep)
{
    std::map<std::int64_t, Rational> by_n;
    for (const auto &s : rep.samples) {
        by_n[s.n] = s.value;
    }
    for (const auto &[n, v] : by_n) {
        for (auto it = by_n.upper_bound(n); it != by_n.end(); ++it) {
            if (it->first % n != 0) {
                continue;
            }
            ++rep.checked_pairs;
            if (it->second > v) {
                rep.monotone_along_multiples = false;
            }
        }
    }
}

std::vector<MinimalPrime> primes_of(const std::vector<ExponentVector> &q, int n)
{
    if (q.empty()) {
        return {MinimalPrime{CoordinatePrime{}, Integer(1), n}};
    }
    return minimal_primes(q, n);
}

} // namespace

Rational MixedMultiplicities::evaluate(const std::vector<Rational> &n) const
{
    Rational total = 0;
    for (const auto &[alpha, e] : coefficients) {
        Rational term = Rational(multinomial(alpha)) * e;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            term *= pow(n[i], static_cast<unsigned>(alpha[i]));
        }
        total += term;
    }
    return total;
}

const Rational &MixedMultiplicities::at(const std::vector<int> &alpha) const
{
    auto it = coefficients.find(alpha);
    if (it == coefficients.end()) {
        throw std::out_of_range("no mixed multiplicity with that index");
    }
    return it->second;
}

std::vector<std::int64_t> sampling_ladder(std::int64_t nmax, std::int64_t base)
{
    if (nmax < 1) {
        throw std::invalid_argument("sampling ladder needs nmax >= 1");
    }
    std::set<std::int64_t> s;
    for (std::int64_t n = 1; n <= std::min<std::int64_t>(8, nmax); ++n) {
        s.insert(n);
    }
    for (std::int64_t p = 1; p <= nmax; p *= 2) {
        s.insert(p);
        if (3 * p <= nmax) {
            s.insert(3 * p);
        }
        if (p > nmax / 2) {
            break;
        }
    }
    if (base >= 1) {
        for (std::int64_t k = 1; k <= 8 && k * base <= nmax; ++k) {
            s.insert(k * base);
        }
    }
    return {s.begin(), s.end()};
}

Rational multiplicity_exact(const MonomialIdeal &I)
{
    if (I.ambient()->has_quotient()) {
        throw std::invalid_argument("multiplicity_exact needs a polynomial ambient; use multiplicity()");
    }
    if (!is_m_primary(I)) {
        throw std::domain_error("multiplicity of an ideal that is not m-primary");
    }
    const int d = I.num_vars();
    if (I.is_unit()) {
        return 0;
    }
    if (d == 0) {
        return 1;
    }
    const Rational e = Rational(factorial(static_cast<unsigned>(d))) * covolume(newton_polyhedron(I));
    if (e.get_den() != 1) {
        throw std::logic_error("monomial multiplicity is not an integer: " + to_string(e));
    }
    return e;
}

Rational multiplicity(const MonomialIdeal &I)
{
    const auto &R = I.ambient();
    if (!R->has_quotient()) {
        return multiplicity_exact(I);
    }
    if (!is_m_primary(I)) {
        throw std::domain_error("multiplicity of an ideal that is not m-primary");
    }
    if (I.is_unit()) {
        return 0;
    }
    const int d = R->dim();
    if (d == 0) {
        return Rational(colength(MonomialIdeal::zero(R)));
    }
    Rational total = 0;
    for (const auto &p : minimal_primes(R->quotient_gens(), R->num_vars())) {
        if (p.dim == d) {
            total += Rational(p.localized_length) * multiplicity_exact(restrict_mod_prime(I, p.prime));
        }
    }
    return total;
}

ConvergenceReport multiplicity_sequence(const MonomialIdeal &I, std::int64_t mmax)
{
    const int d = I.ambient()->dim();
    if (mmax < d + 2) {
        throw std::invalid_argument("multiplicity_sequence needs mmax >= d+2 = " + std::to_string(d + 2));
    }
    if (!is_m_primary(I) || I.is_unit()) {
        throw std::domain_error("multiplicity_sequence needs a proper m-primary ideal");
    }
    std::vector<Integer> lengths{0};
    MonomialIdeal power = MonomialIdeal::unit(I.ambient());
    for (std::int64_t m = 1; m <= mmax; ++m) {
        power = ideal_product(power, I);
        lengths.push_back(colength(power));
    }
    ConvergenceReport rep;
    const Rational dfact(factorial(static_cast<unsigned>(d)));
    for (std::int64_t m = 1; m <= mmax; ++m) {
        rep.samples.push_back({m, dfact * Rational(lengths[static_cast<std::size_t>(m)]) / pow_n(m, d)});
    }
    fill_window(rep, mmax);
    std::vector<Integer> diff = lengths;
    for (int k = 0; k < d; ++k) {
        for (std::size_t i = diff.size() - 1; i > 0; --i) {
            diff[i] -= diff[i - 1];
        }
        diff.erase(diff.begin());
    }
    const std::size_t stable = std::min<std::size_t>(3, diff.size());
    bool settled = stable >= 2;
    for (std::size_t i = diff.size() - stable; settled && i < diff.size(); ++i) {
        settled = diff[i] == diff.back();
    }
    rep.checks.emplace_back("differences_stabilized", settled);
    if (settled) {
        rep.estimate = Rational(diff.back());
        rep.certificate = Certificate::exact;
        rep.note = "d-th difference of the colength sequence is constant over the last " + std::to_string(stable) +
                   " values";
    } else {
        rep.estimate = rep.samples.back().value;
        rep.note = "d-th differences did not stabilize by mmax";
    }
    return rep;
}

Rational multiplicity_module(const MonomialIdeal &I, const std::vector<std::vector<ExponentVector>> &summands)
{
    if (summands.empty()) {
        throw std::invalid_argument("module needs at least one summand");
    }
    if (!is_m_primary(I)) {
        throw std::domain_error("module multiplicity needs an m-primary ideal");
    }
    const auto &R = I.ambient();
    const int n = R->num_vars();
    struct Part
    {
        std::vector<MinimalPrime> primes;
        int dim;
        std::vector<ExponentVector> q;
    };
    std::vector<Part> parts;
    int dim_m = -1;
    for (const auto &qj : summands) {
        for (const auto &g : qj) {
            if (static_cast<int>(g.size()) != n) {
                throw std::invalid_argument("exponent arity: module summand generator has length " +
                                            std::to_string(g.size()) + ", expected " + std::to_string(n));
            }
            if (std::any_of(g.begin(), g.end(), [](auto x) { return x < 0; })) {
                throw std::invalid_argument("module summand is not monomial-cyclic (negative exponent)");
            }
        }
        auto q = R->quotient_gens();
        q.insert(q.end(), qj.begin(), qj.end());
        q = antichain(std::move(q));
        if (std::any_of(q.begin(), q.end(), [](const ExponentVector &g) {
                return std::all_of(g.begin(), g.end(), [](auto x) { return x == 0; });
            })) {
            continue; // zero summand
        }
        auto primes = primes_of(q, n);
        int dim = 0;
        for (const auto &p : primes) {
            dim = std::max(dim, p.dim);
        }
        dim_m = std::max(dim_m, dim);
        parts.push_back({std::move(primes), dim, std::move(q)});
    }
    if (dim_m < 0) {
        return 0;
    }
    Rational total = 0;
    for (const auto &part : parts) {
        if (dim_m == 0) {
            // finite length: e(I; M) = ℓ(M)
            MonomialIdeal zero(AmbientRing::quotient(n, part.q), {});
            total += Rational(colength(zero));
            continue;
        }
        for (const auto &p : part.primes) {
            if (p.dim == dim_m) {
                total += Rational(p.localized_length) * multiplicity_exact(restrict_mod_prime(I, p.prime));
            }
        }
    }
    return total;
}

bool volume_equals_multiplicity(const AmbientRing &R)
{
    if (!R.has_quotient()) {
        return true;
    }
    for (const auto &p : minimal_primes(R.quotient_gens(), R.num_vars())) {
        if (p.dim == R.dim() && p.localized_length != 1) {
            return false;
        }
    }
    return true;
}

Rational shape_multiplicity(const AdicShape &shape)
{
    if (shape.bases.empty() || shape.bases.size() != shape.scales.size()) {
        throw std::invalid_argument("malformed adic shape");
    }
    std::vector<MonomialIdeal> bases;
    std::vector<Rational> scales;
    for (std::size_t i = 0; i < shape.bases.size(); ++i) {
        auto it = std::find(bases.begin(), bases.end(), shape.bases[i]);
        if (it == bases.end()) {
            bases.push_back(shape.bases[i]);
            scales.push_back(shape.scales[i]);
        } else {
            scales[static_cast<std::size_t>(it - bases.begin())] += shape.scales[i];
        }
    }
    const int d = bases.front().ambient()->dim();
    if (bases.size() == 1) {
        return pow(scales.front(), static_cast<unsigned>(d)) * multiplicity(bases.front());
    }
    return mixed_multiplicities(bases).evaluate(scales);
}

std::optional<Rational> certified_multiplicity(const Family &F)
{
    const auto &a = F->asymptotics();
    if (a.multiplicity) {
        return a.multiplicity;
    }
    if (a.shape) {
        return shape_multiplicity(*a.shape);
    }
    if (a.sub && a.super) {
        auto lo = certified_multiplicity(a.sub);
        auto hi = certified_multiplicity(a.super);
        // sub ⊆ F ⊆ super gives e(sub) >= e(F) >= e(super)
        if (lo && hi && *lo == *hi) {
            return lo;
        }
    }
    return std::nullopt;
}

ConvergenceReport multiplicity_report(std::vector<Sample> samples, std::int64_t nmax,
                                      const std::optional<Rational> &certified)
{
    ConvergenceReport rep;
    rep.samples = std::move(samples);
    fill_window(rep, nmax);
    check_multiples(rep);
    rep.checks.emplace_back("inf_property_on_multiples", rep.monotone_along_multiples);
    rep.estimate = rep.window_inf;
    if (certified) {
        // e(F) = inf over multiples, so it bounds every sample from below
        bool consistent = std::all_of(rep.samples.begin(), rep.samples.end(),
                                      [&](const Sample &s) { return *certified <= s.value; });
        rep.checks.emplace_back("certificate_below_samples", consistent);
        if (consistent) {
            rep.estimate = *certified;
            rep.certificate = Certificate::exact;
            rep.note = "value fixed by the family's construction";
        } else {
            rep.note = "construction value " + to_string(*certified) + " exceeds a sample; reporting the window";
        }
    } else {
        rep.note = "upper estimate: smallest sampled e(I_n)/n^d in the tail window";
    }
    return rep;
}

ConvergenceReport volume_report(std::vector<Sample> samples, std::int64_t nmax, const std::optional<Rational> &certified)
{
    ConvergenceReport rep;
    rep.samples = std::move(samples);
    fill_window(rep, nmax);
    rep.estimate = rep.window_sup;
    rep.note = "limsup estimate: largest sampled value in the tail window";
    if (certified) {
        rep.estimate = *certified;
        rep.certificate = Certificate::exact;
        rep.note = "vol = e on this ambient, and e is fixed by construction";
    }
    return rep;
}

ConvergenceReport family_multiplicity(const Family &F, std::int64_t nmax, std::int64_t base)
{
    const int d = F->dim();
    const auto ladder = sampling_ladder(nmax, base);
    auto values = detail::parallel_map(ladder, [&](std::int64_t n) -> Rational { return multiplicity(F->at(n)) / pow_n(n, d); });
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        samples.push_back({ladder[i], values[i]});
    }
    return multiplicity_report(std::move(samples), nmax, certified_multiplicity(F));
}

ConvergenceReport family_volume(const Family &F, std::int64_t nmax, std::int64_t base)
{
    const int d = F->dim();
    const auto ladder = sampling_ladder(nmax, base);
    const Rational dfact(factorial(static_cast<unsigned>(d)));
    auto values = detail::parallel_map(
        ladder, [&](std::int64_t n) -> Rational { return Rational(dfact * Rational(colength(F->at(n))) / pow_n(n, d)); });
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        samples.push_back({ladder[i], values[i]});
    }
    std::optional<Rational> cert;
    if (volume_equals_multiplicity(*F->ambient())) {
        cert = certified_multiplicity(F);
    }
    return volume_report(std::move(samples), nmax, cert);
}

MixedMultiplicities mixed_multiplicities(const std::vector<MonomialIdeal> &ideals)
{
    if (ideals.empty()) {
        throw std::invalid_argument("mixed multiplicities of an empty list");
    }
    const auto &R = ideals.front().ambient();
    for (const auto &I : ideals) {
        if (!same_ambient(I.ambient(), R)) {
            throw std::invalid_argument("mixed multiplicities over different rings");
        }
        if (!is_m_primary(I) || I.is_unit()) {
            throw std::domain_error("mixed multiplicities need proper m-primary ideals");
        }
    }
    const int d = R->dim();
    const int r = static_cast<int>(ideals.size());
    const auto alphas = compositions(r, d);
    // powers I_j^k, k <= d
    std::vector<std::vector<MonomialIdeal>> powers;
    for (const auto &I : ideals) {
        std::vector<MonomialIdeal> p{MonomialIdeal::unit(R)};
        for (int k = 1; k <= d; ++k) {
            p.push_back(ideal_product(p.back(), I));
        }
        powers.push_back(std::move(p));
    }
    std::vector<std::vector<int>> grid;
    std::vector<int> cur(static_cast<std::size_t>(r), 0);
    while (true) {
        std::size_t i = 0;
        while (i < cur.size() && ++cur[i] > d) {
            cur[i] = 0;
            ++i;
        }
        if (i == cur.size()) {
            break;
        }
        grid.push_back(cur);
    }
    auto values = detail::parallel_map(grid, [&](const std::vector<int> &n) -> Rational {
        MonomialIdeal prod = MonomialIdeal::unit(R);
        for (int j = 0; j < r; ++j) {
            prod = ideal_product(prod, powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(n[j])]);
        }
        return multiplicity(prod);
    });
    std::vector<std::vector<Rational>> rows;
    for (const auto &n : grid) {
        std::vector<Rational> row;
        for (const auto &a : alphas) {
            Integer t = 1;
            for (int j = 0; j < r; ++j) {
                for (int k = 0; k < a[static_cast<std::size_t>(j)]; ++k) {
                    t *= n[static_cast<std::size_t>(j)];
                }
            }
            row.emplace_back(t);
        }
        rows.push_back(std::move(row));
    }
    auto sol = detail::solve_exact(std::move(rows), values);
    if (!sol) {
        throw std::logic_error("mixed multiplicity interpolation is singular or inconsistent");
    }
    MixedMultiplicities out;
    out.degree = d;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        Rational e = (*sol)[k] / Rational(multinomial(alphas[k]));
        if (e < 0 || e.get_den() != 1) {
            throw std::logic_error("mixed multiplicity is not a nonnegative integer: " + to_string(e));
        }
        out.coefficients.emplace(alphas[k], e);
    }
    return out;
}

namespace {

// Mixed multiplicities of the limit polyhedra when every family has a shape.
std::optional<MixedMultiplicities> shape_mixed(const std::vector<Family> &families, int d)
{
    std::vector<MonomialIdeal> bases;
    std::vector<Rational> scales;
    std::vector<int> owner;
    for (std::size_t i = 0; i < families.size(); ++i) {
        const auto &s = families[i]->asymptotics().shape;
        if (!s) {
            return std::nullopt;
        }
        for (std::size_t j = 0; j < s->bases.size(); ++j) {
            bases.push_back(s->bases[j]);
            scales.push_back(s->scales[j]);
            owner.push_back(static_cast<int>(i));
        }
    }
    if (bases.size() > 4) {
        return std::nullopt;
    }
    const auto base_mixed = mixed_multiplicities(bases);
    MixedMultiplicities out;
    out.degree = d;
    std::map<std::vector<int>, Rational> poly; // coefficients of s^γ
    for (const auto &[beta, e] : base_mixed.coefficients) {
        Rational term = Rational(multinomial(beta)) * e;
        std::vector<int> gamma(families.size(), 0);
        for (std::size_t j = 0; j < beta.size(); ++j) {
            term *= pow(scales[j], static_cast<unsigned>(beta[j]));
            gamma[static_cast<std::size_t>(owner[j])] += beta[j];
        }
        poly[gamma] += term;
    }
    for (const auto &gamma : compositions(static_cast<int>(families.size()), d)) {
        out.coefficients[gamma] = poly[gamma] / Rational(multinomial(gamma));
    }
    return out;
}

} // namespace

std::optional<MixedMultiplicities> certified_mixed(const std::vector<Family> &families)
{
    if (families.empty()) {
        throw std::invalid_argument("family mixed multiplicities of an empty list");
    }
    const auto &R = families.front()->ambient();
    for (const auto &F : families) {
        if (!same_ambient(F->ambient(), R)) {
            throw std::invalid_argument("families over different rings");
        }
    }
    if (R->has_quotient()) {
        return std::nullopt;
    }
    return shape_mixed(families, R->dim());
}

FamilyMixedResult family_mixed_multiplicities(const std::vector<Family> &families, std::int64_t nmax)
{
    if (families.empty()) {
        throw std::invalid_argument("family mixed multiplicities of an empty list");
    }
    const auto &R = families.front()->ambient();
    for (const auto &F : families) {
        if (!same_ambient(F->ambient(), R)) {
            throw std::invalid_argument("families over different rings");
        }
    }
    if (R->has_quotient()) {
        throw std::invalid_argument("family mixed multiplicities need a polynomial ambient");
    }
    const int d = R->dim();
    const auto ladder = sampling_ladder(nmax, 0);
    std::vector<MixedMultiplicities> per_level;
    for (auto n : ladder) {
        std::vector<MonomialIdeal> level;
        for (const auto &F : families) {
            level.push_back(F->at(n));
        }
        per_level.push_back(mixed_multiplicities(level));
    }
    FamilyMixedResult res;
    const auto certified = shape_mixed(families, d);
    res.mixed.degree = d;
    for (const auto &[alpha, unused] : per_level.front().coefficients) {
        ConvergenceReport rep;
        for (std::size_t i = 0; i < ladder.size(); ++i) {
            rep.samples.push_back({ladder[i], per_level[i].at(alpha) / pow_n(ladder[i], d)});
        }
        fill_window(rep, nmax);
        check_multiples(rep);
        rep.estimate = rep.samples.back().value;
        rep.note = "largest sampled level";
        if (certified) {
            rep.estimate = certified->at(alpha);
            rep.certificate = Certificate::exact;
            rep.note = "limit polyhedron of the families' shapes";
        }
        res.mixed.coefficients[alpha] = rep.estimate;
        res.reports.emplace(alpha, std::move(rep));
    }
    // compare lim e(∏ F_i,{m n_i})/m^d with the polynomial at small n
    std::int64_t m = 1;
    for (auto n : ladder) {
        if (2 * n <= nmax) {
            m = n;
        }
    }
    const int r = static_cast<int>(families.size());
    const int top = r <= 2 ? 2 : 1;
    std::vector<int> cur(static_cast<std::size_t>(r), 0);
    res.polynomial_deviation = 0;
    while (true) {
        std::size_t i = 0;
        while (i < cur.size() && ++cur[i] > top) {
            cur[i] = 0;
            ++i;
        }
        if (i == cur.size()) {
            break;
        }
        MonomialIdeal prod = MonomialIdeal::unit(R);
        std::vector<Rational> point;
        for (int j = 0; j < r; ++j) {
            const auto nj = cur[static_cast<std::size_t>(j)];
            if (nj > 0) {
                prod = ideal_product(prod, families[static_cast<std::size_t>(j)]->at(m * nj));
            }
            point.emplace_back(nj);
        }
        const Rational sampled = multiplicity(prod) / pow_n(m, d);
        res.polynomial_deviation = std::max(res.polynomial_deviation, Rational(abs(sampled - res.mixed.evaluate(point))));
    }
    return res;
}

} // namespace multfam
