// Acceptance gate: one PASS/FAIL line per criterion, exit code 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "multfam/blowups.hpp"
#include "multfam/catalog.hpp"
#include "multfam/curves.hpp"
#include "multfam/multiplicities.hpp"
#include "multfam/newton.hpp"
#include "multfam/theorem_lab.hpp"
#include "multfam/valuations.hpp"

using namespace multfam;

namespace {

struct Outcome
{
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string &what)
    {
        if (!cond && ok) {
            detail = what;
        }
        ok = ok && cond;
    }
};

Integer choose2(std::int64_t k) { return k < 2 ? Integer(0) : Integer(k) * Integer(k - 1) / 2; }

Rational ratio_pow(const Rational &q, int d)
{
    Rational r = 1;
    for (int i = 0; i < d; ++i) {
        r *= q;
    }
    return r;
}

// ⌈m(2^i - 1)/2^(i-1)⌉, computed with integers only.
std::int64_t chain_ceiling(std::int64_t m, int i)
{
    const std::int64_t den = std::int64_t(1) << (i - 1);
    const std::int64_t num = m * ((std::int64_t(1) << i) - 1);
    return (num + den - 1) / den;
}

Outcome volex_exact()
{
    Outcome o;
    const auto F = volex_family(2, SigmaSchedule::tower());
    for (std::int64_t n = 1; n <= 40; ++n) {
        o.require(multiplicity(F->at(n)) == Rational(2 * n * n), "e(J_n) != 2n^2 at n=" + std::to_string(n));
        // colength against C(n+1,2) + C(k+1,2), k = n - sigma(n) - ceil(n/4)
        const std::int64_t k = n - SigmaSchedule::tower()(n) - (n + 3) / 4;
        o.require(colength(F->at(n)) == choose2(n + 1) + choose2(k + 1), "colength formula at n=" + std::to_string(n));
    }
    const auto r = family_multiplicity(F, 40);
    o.require(r.certificate == Certificate::exact && r.estimate == 2, "family multiplicity not certified 2");
    std::ostringstream s;
    s << "e = " << to_string(r.estimate) << " (" << to_string(r.certificate) << ")";
    if (o.ok) {
        o.detail = s.str();
    }
    return o;
}

Outcome volex_gap()
{
    Outcome o;
    const auto F = volex_family(2, SigmaSchedule::tower());
    const auto vm = vol_vs_mult(F, 4096);
    o.require(vm.volume.window_sup >= Rational(150, 100), "window_sup " + to_decimal(vm.volume.window_sup) + " < 1.50");
    o.require(vm.volume.window_inf <= Rational(112, 100), "window_inf " + to_decimal(vm.volume.window_inf) + " > 1.12");
    o.require(vm.strict_gap, "no strict gap between volume and multiplicity");
    o.require(vm.multiplicity.estimate == 2, "e != 2");
    if (o.ok) {
        o.detail = "window [" + to_decimal(vm.volume.window_inf, 6) + ", " + to_decimal(vm.volume.window_sup, 6) +
                   "], e = 2, gap " + to_decimal(vm.gap, 6);
    }
    return o;
}

Outcome oracle_equivalence()
{
    Outcome o;
    std::mt19937_64 rng(2024);
    for (int k = 0; k < 50; ++k) {
        const int d = 2 + k % 2;
        const auto I = random_monomial_ideal(rng, d, 6);
        const auto exact = multiplicity_exact(I);
        const auto seq = multiplicity_sequence(I, d == 2 ? 16 : 12);
        o.require(seq.certificate == Certificate::exact, "sequence not certified for " + I.str());
        o.require(seq.estimate == exact, "mismatch on " + I.str() + ": " + to_string(exact) + " vs " +
                                             to_string(seq.estimate));
    }
    if (o.ok) {
        o.detail = "50 ideals agree exactly";
    }
    return o;
}

Outcome mixed()
{
    Outcome o;
    const auto R = AmbientRing::polynomial(2);
    const MonomialIdeal I = MonomialIdeal::maximal(R);
    const MonomialIdeal J(R, {{2, 0}, {0, 3}});
    const auto mm = mixed_multiplicities({I, J});
    o.require(mm.at({2, 0}) == 1 && mm.at({1, 1}) == 2 && mm.at({0, 2}) == 6, "coefficients are not (1,2,6)");
    const auto e_ij = multiplicity(ideal_product(I, J));
    o.require(e_ij == 11 && e_ij == mm.at({2, 0}) + 2 * mm.at({1, 1}) + mm.at({0, 2}), "e(IJ) != 1 + 2*2 + 6");
    std::mt19937_64 rng(99);
    for (int k = 0; k < 40; ++k) {
        const int d = 2 + k % 2;
        const auto A = random_monomial_ideal(rng, d, d == 2 ? 6 : 4);
        const auto B = random_monomial_ideal(rng, d, d == 2 ? 6 : 4);
        const auto m = mixed_multiplicities({A, B});
        for (const auto &[alpha, v] : m.coefficients) {
            o.require(v.get_den() == 1 && v >= 0, "non-integral or negative coefficient for " + A.str() + ", " + B.str());
        }
        o.require(m.evaluate({Rational(1), Rational(1)}) == multiplicity(ideal_product(A, B)),
                  "mixed polynomial at (1,1) != e(AB)");
    }
    if (o.ok) {
        o.detail = "(1,2,6), e(IJ) = 11, 40 random pairs integral and nonnegative";
    }
    return o;
}

Outcome minkowski_suite()
{
    Outcome o;
    std::mt19937_64 rng(5);
    int equalities = 0;
    for (const auto &p : random_family_pairs(rng, 200)) {
        const auto rep = minkowski_report(p.f, p.g, 8);
        for (const auto &c : rep.claims) {
            o.require(c.verdict == Verdict::pass, p.name + ": " + c.name + " is " + to_string(c.verdict));
        }
        if (p.expect_equality) {
            ++equalities;
            o.require(rep.equality, p.name + ": equality not detected");
        }
    }
    if (o.ok) {
        o.detail = "200 pairs, " + std::to_string(equalities) + " equality cases detected";
    }
    return o;
}

Outcome chain()
{
    Outcome o;
    std::int64_t cases = 0;
    for (int l = 1; l <= 12; ++l) {
        const auto ex = chain_example(l);
        const std::int64_t mmax = std::min<std::int64_t>(64, (std::int64_t(1) << (l - 1)) - 1);
        for (std::int64_t m = 1; m <= mmax; ++m) {
            std::vector<Rational> t;
            for (const auto &a : ex.targets) {
                t.push_back(Rational(m) * a);
            }
            const auto D = unload(ex.cluster, t);
            for (int i = 1; i <= l; ++i) {
                o.require(D.v[i - 1] == chain_ceiling(m, i),
                          "l=" + std::to_string(l) + " m=" + std::to_string(m) + " i=" + std::to_string(i));
            }
            ++cases;
        }
    }
    const auto ex = chain_example(14);
    const auto F = divisorial_family_2d(ex.cluster, ex.targets);
    const std::int64_t m = std::int64_t(1) << 13;
    const Rational ratio = Rational(F->multiplicity(m)) / Rational(m * m);
    Rational dev = ratio - Rational(4, 3);
    if (dev < 0) {
        dev = -dev;
    }
    o.require(dev <= Rational(2, 100), "|e(I_m)/m^2 - 4/3| = " + to_decimal(dev) + " at l=14, m=2^13");
    const auto rep = divisor_family_multiplicity(F, m);
    Rational dev2 = rep.estimate - Rational(4, 3);
    if (dev2 < 0) {
        dev2 = -dev2;
    }
    o.require(dev2 <= Rational(2, 100), "family estimate off by " + to_decimal(dev2));
    if (o.ok) {
        o.detail = std::to_string(cases) + " (l, m) cases; e(I_m)/m^2 = " + to_decimal(ratio) + " at l=14, m=2^13";
    }
    return o;
}

Outcome length_formula()
{
    Outcome o;
    std::mt19937_64 rng(314);
    std::uniform_int_distribution<int> size(1, 10);
    std::uniform_int_distribution<int> target(0, 12);
    for (int k = 0; k < 100; ++k) {
        const auto C = random_cluster(rng, size(rng));
        std::vector<Rational> t;
        for (int i = 0; i < C->size(); ++i) {
            t.push_back(Rational(target(rng)));
        }
        const auto D = unload(C, t);
        const auto N = intersection_matrix(*C);
        const auto K = canonical_degrees(N);
        Integer dd = 0, dk = 0, hoskin = 0;
        for (int i = 0; i < N.size(); ++i) {
            for (int j = 0; j < N.size(); ++j) {
                dd += Integer(D.v[i]) * Integer(N.N[i][j]) * Integer(D.v[j]);
            }
            dk += Integer(D.v[i]) * Integer(K[i]);
        }
        // multiplicities from the proximity relation directly
        for (int i = 0; i < C->size(); ++i) {
            Integer mi = D.v[i];
            for (int j = 0; j < i; ++j) {
                if (C->proximate(i, j)) {
                    mi -= D.v[j];
                }
            }
            hoskin += mi * (mi + 1) / 2;
        }
        o.require(is_antinef(N, D.v), "unloaded divisor is not antinef on " + C->str());
        o.require(-(dd + dk) == 2 * hoskin, "length formula fails on " + C->str());
    }
    for (const auto &p : monomial_presets()) {
        const auto D = antinef_divisor(p.cluster, p.v);
        const auto N = intersection_matrix(*p.cluster);
        Integer dd = 0;
        for (int i = 0; i < N.size(); ++i) {
            for (int j = 0; j < N.size(); ++j) {
                dd += Integer(D.v[i]) * Integer(N.N[i][j]) * Integer(D.v[j]);
            }
        }
        o.require(Rational(-dd) == multiplicity_exact(p.ideal), "-(D^2) != e(I) for " + p.name);
        o.require(Rational(divisor_colength(D)) == Rational(colength(p.ideal)), "colength mismatch for " + p.name);
    }
    if (o.ok) {
        o.detail = "100 random divisors, 3 presets";
    }
    return o;
}

Outcome rees_biconditional()
{
    Outcome o;
    int pairs = 0;
    for (const auto &p : rees_corpus()) {
        const auto c = rees_comparison(p.f, p.g, {}, 32);
        o.require(c.comparable && c.e_certified, p.name + ": not comparable or uncertified");
        o.require(c.e_equal == c.saturations_equal, p.name + ": e equal " + std::to_string(c.e_equal) +
                                                        " but saturations equal " + std::to_string(c.saturations_equal));
        ++pairs;
    }
    auto [f, g] = rees_pair();
    const auto c = rees_comparison(f, g, {WeightValuation({1})}, 64);
    o.require(c.e_equal && c.saturations_equal && !c.closures_equal, "k[t] pair: closures should differ");
    if (o.ok) {
        o.detail = std::to_string(pairs) + " pairs; k[t] pair has equal saturations and different closures";
    }
    return o;
}

Outcome closure_chain()
{
    Outcome o;
    int families = 0;
    for (const auto &F : family_corpus()) {
        if (F.family->ambient()->has_quotient()) {
            continue;
        }
        const auto sat = saturation(F.family, default_valuation_set(F.family, 16), 40);
        for (std::int64_t n = 1; n <= 20; ++n) {
            const auto In = F.family->at(n);
            const auto cl = integral_closure(In);
            const auto star = family_integral_closure(F.family, n, 6).ideal;
            const auto tilde = sat.level(F.family->ambient(), n);
            o.require(In.subset_of(cl) && cl.subset_of(star) && star.subset_of(tilde),
                      F.name + ": chain breaks at n=" + std::to_string(n));
        }
        ++families;
    }
    const auto t = AmbientRing::polynomial(1);
    auto [f, g] = rees_pair();
    (void)g;
    const auto sat = saturation(f, {WeightValuation({1})}, 64);
    for (std::int64_t n = 1; n <= 20; ++n) {
        o.require(family_integral_closure(f, n, 6).ideal == MonomialIdeal(t, {{n + 1}}),
                  "I*_n != (t^(n+1)) at n=" + std::to_string(n));
        o.require(sat.level(t, n) == MonomialIdeal(t, {{n}}), "saturation != (t^n) at n=" + std::to_string(n));
    }
    if (o.ok) {
        o.detail = std::to_string(families) + " families nested for n <= 20; k[t] example exact";
    }
    return o;
}

Outcome oned()
{
    Outcome o;
    for (std::int64_t n = 2; n <= 6; ++n) {
        auto [I, J] = two_branch_example(n);
        const auto rep = curve_family_report(curve_adic(I), curve_adic(J), 16);
        o.require(rep.f.multiplicity == n + 1 && rep.g.multiplicity == n + 1, "e != n+1 at n=" + std::to_string(n));
        o.require(rep.fg.multiplicity == 2 * (n + 1) && rep.minkowski_equality,
                  "Minkowski equality fails at n=" + std::to_string(n));
        o.require(rep.proportional.size() == 2 && !rep.proportional[0] && !rep.proportional[1],
                  "proportionality should fail on both branches at n=" + std::to_string(n));
    }
    if (o.ok) {
        o.detail = "n = 2..6";
    }
    return o;
}

Outcome inf_corpus()
{
    Outcome o;
    int count = 0;
    for (const auto &F : family_corpus()) {
        const auto c = inf_property(F, 64);
        o.require(c.verdict == Verdict::pass, c.name);
        ++count;
    }
    if (o.ok) {
        o.detail = std::to_string(count) + " families";
    }
    return o;
}

Outcome twists()
{
    Outcome o;
    std::mt19937_64 rng(12);
    int checks = 0;
    for (int k = 0; k < 8; ++k) {
        const int d = 2 + k % 2;
        const auto I = random_monomial_ideal(rng, d, d == 2 ? 6 : 4);
        const auto F = adic(I);
        const auto e = multiplicity_exact(I);
        for (auto c : {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)}) {
            const auto T = twist(F, c);
            const auto rep = family_multiplicity(T, 16);
            const Rational expected = ratio_pow(c, d) * e;
            o.require(rep.certificate == Certificate::exact && rep.estimate == expected,
                      T->description() + ": e = " + to_string(rep.estimate));
            // e(I^(cn))/n^d = c^d e(I) exactly where cn is an integer
            for (std::int64_t n = 2; n <= 6; n += 2) {
                o.require(multiplicity(T->at(n)) / ratio_pow(Rational(n), d) == expected,
                          T->description() + ": level " + std::to_string(n));
            }
            for (const auto &v : default_valuation_set(F, 4)) {
                const auto base = value_on_ideal(v, I);
                const auto tv = family_value(v, T, 16);
                o.require(tv.exact && tv.value == c * Rational(base), T->description() + ": v" + v.str());
                ++checks;
            }
            ++checks;
        }
    }
    if (o.ok) {
        o.detail = std::to_string(checks) + " identities";
    }
    return o;
}

struct Criterion
{
    int id;
    const char *name;
    double budget;
    std::function<Outcome()> run;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "volume-gap family: exact multiplicity", 10, volex_exact},
        {2, "volume-gap family: volume window and strict gap", 60, volex_gap},
        {3, "polyhedral vs colength-sequence multiplicity", 120, oracle_equivalence},
        {4, "mixed multiplicities", 10, mixed},
        {5, "Minkowski inequalities on 200 random pairs", 300, minkowski_suite},
        {6, "free chain unloading and limit 4/3", 60, chain},
        {7, "length formula and -(D^2) = e(I)", 30, length_formula},
        {8, "multiplicity vs saturation biconditional", 30, rees_biconditional},
        {9, "saturation and closure chain", 10, closure_chain},
        {10, "two-branch curve example", 1, oned},
        {11, "inf property on the corpus", 120, inf_corpus},
        {12, "twist identities", 10, twists},
    };
    int failed = 0;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.budget;
        if (!in_time && o.ok) {
            o.detail = "over the time budget";
        }
        const bool pass = o.ok && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s criterion %2d: %s (%.2f s, budget %.0f s) -- %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    c.budget, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
