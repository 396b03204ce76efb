#include "multfam/theorem_lab.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "multfam/catalog.hpp"
#include "multfam/curves.hpp"
#include "multfam/newton.hpp"

namespace multfam {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass:
        return "pass";
    case Verdict::fail:
        return "fail";
    case Verdict::undecided:
        return "undecided";
    }
    return "undecided";
}

Claim make_claim(std::string name, std::string reference, std::string expected, std::optional<Rational> computed,
                 bool ok)
{
    return {std::move(name), std::move(reference), std::move(expected), std::move(computed),
            ok ? Verdict::pass : Verdict::fail};
}

bool LabReport::passed() const
{
    return std::none_of(claims.begin(), claims.end(), [](const Claim &c) { return c.verdict == Verdict::fail; });
}

void LabReport::append(const std::vector<Claim> &more) { claims.insert(claims.end(), more.begin(), more.end()); }

namespace {

Rational rpow(const Rational &q, int e) { return pow(q, static_cast<unsigned>(e)); }

Rational normalized(const Rational &x, std::int64_t n, int d) { return x / rpow(Rational(n), d); }

std::string idx(const char *stem, int i) { return std::string(stem) + "_i=" + std::to_string(i); }

} // namespace

int compare_root_sum(const Rational &c, const Rational &a, const Rational &b, unsigned d)
{
    if (a < 0 || b < 0 || c < 0) {
        throw std::domain_error("root comparison of a negative number");
    }
    auto sign = [](const Rational &x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); };
    if (a == 0) {
        return sign(b - c);
    }
    if (b == 0) {
        return sign(a - c);
    }
    Rational r;
    if (exact_root(a / b, d, r)) {
        // (a^(1/d) + b^(1/d))^d = b (1 + r)^d
        return sign(b * pow(1 + r, d) - c);
    }
    // a^(1/d), b^(1/d) have irrational ratio, so no rational c gives equality
    Rational width = make_rational(1, Integer(10) * 100000000000);
    for (int round = 0; round < 12; ++round) {
        Rational la, ha, lb, hb;
        root_bracket(a, d, width, la, ha);
        root_bracket(b, d, width, lb, hb);
        if (pow(la + lb, d) > c) {
            return 1;
        }
        if (pow(ha + hb, d) < c) {
            return -1;
        }
        width /= 1000000;
    }
    throw std::logic_error("root comparison did not separate " + to_string(c) + " from the root sum");
}

MinkowskiReport minkowski_report(const Family &F, const Family &G, std::int64_t nmax)
{
    if (!same_ambient(F->ambient(), G->ambient())) {
        throw std::invalid_argument("Minkowski report over different rings");
    }
    MinkowskiReport rep;
    const int d = F->dim();
    rep.d = d;
    const auto FG = product(F, G);
    auto cm = certified_mixed({F, G});
    auto cp = certified_multiplicity(FG);
    if (cm && cp) {
        rep.certified = true;
        for (int i = 0; i <= d; ++i) {
            rep.e.push_back(cm->at({d - i, i}));
        }
        rep.e_product = *cp;
    } else {
        rep.level = sampling_ladder(nmax, 0).back();
        const auto mixed = mixed_multiplicities({F->at(rep.level), G->at(rep.level)});
        for (int i = 0; i <= d; ++i) {
            rep.e.push_back(normalized(mixed.at({d - i, i}), rep.level, d));
        }
        rep.e_product = normalized(multiplicity(FG->at(rep.level)), rep.level, d);
    }
    const auto &e = rep.e;
    const std::string ref = "Minkowski inequalities for mixed multiplicities of families";
    for (int i = 1; i < d; ++i) {
        const Rational slack = e[i - 1] * e[i + 1] - e[i] * e[i];
        rep.claims.push_back(make_claim(idx("minkowski_1", i), ref, "e_i^2 <= e_(i-1) e_(i+1)", slack, slack >= 0));
    }
    for (int i = 1; i < d; ++i) {
        const Rational slack = e[0] * e[d] - e[i] * e[d - i];
        rep.claims.push_back(make_claim(idx("minkowski_2", i), ref, "e_i e_(d-i) <= e_0 e_d", slack, slack >= 0));
    }
    for (int i = 1; i < d; ++i) {
        const Rational slack = rpow(e[0], d - i) * rpow(e[d], i) - rpow(e[i], d);
        rep.claims.push_back(make_claim(idx("minkowski_3", i), ref, "e_i^d <= e_0^(d-i) e_d^i", slack, slack >= 0));
    }
    const int s = compare_root_sum(rep.e_product, e[0], e[d], static_cast<unsigned>(d));
    rep.equality = s == 0;
    rep.claims.push_back(make_claim("minkowski_4", ref, "e(FG)^(1/d) <= e_0^(1/d) + e_d^(1/d)", rep.e_product, s >= 0));
    return rep;
}

EqualityDiagnostic minkowski_equality_diagnostic(const Family &F, const Family &G,
                                                 const std::vector<WeightValuation> &valuations, std::int64_t nmax)
{
    EqualityDiagnostic out;
    const auto mr = minkowski_report(F, G, nmax);
    const int d = mr.d;
    out.minkowski_equality = mr.equality;
    out.equality_certified = mr.certified;
    out.valuations = valuations;
    const Rational &eF = mr.e.front();
    const Rational &eG = mr.e.back();
    out.all_proportional = true;
    bool values_exact = true;
    for (const auto &v : valuations) {
        const auto vf = family_value(v, F, nmax);
        const auto vg = family_value(v, G, nmax);
        values_exact = values_exact && vf.exact && vg.exact;
        const bool p = eG * rpow(vf.value, d) == eF * rpow(vg.value, d);
        out.proportional.push_back(p);
        out.all_proportional = out.all_proportional && p;
    }
    Rational c;
    if (eG > 0 && exact_root(eF / eG, static_cast<unsigned>(d), c)) {
        out.ratio = c;
        const auto sf = saturation(F, valuations, nmax);
        const auto sg = saturation(twist(G, c), valuations, nmax);
        out.saturations_match = true;
        for (std::int64_t n = 1; n <= 6; ++n) {
            out.saturations_match = out.saturations_match && sf.level(F->ambient(), n) == sg.level(G->ambient(), n);
        }
    }
    const bool decided = out.equality_certified && values_exact;
    const std::string ref = "Minkowski equality and proportional valuation vectors";
    if (d >= 2) {
        Claim bic = make_claim("equality_iff_proportional", ref, "equality <=> e(G) v(F)^d = e(F) v(G)^d for all v",
                               std::nullopt, out.minkowski_equality == out.all_proportional);
        if (!decided && bic.verdict == Verdict::fail) {
            bic.verdict = Verdict::undecided;
        }
        out.claims.push_back(bic);
        const bool twist_form = out.ratio.has_value() && out.saturations_match;
        Claim sat = make_claim("equality_iff_twisted_saturation", ref, "equality <=> sat(F) = sat(G)^(c)", out.ratio,
                               out.minkowski_equality == twist_form);
        if (!decided && sat.verdict == Verdict::fail) {
            sat.verdict = Verdict::undecided;
        }
        out.claims.push_back(sat);
    } else {
        out.claims.push_back({"equality_iff_proportional", ref,
                              "biconditional needs d >= 2; in dimension one equality always holds", std::nullopt,
                              Verdict::undecided});
    }
    return out;
}

ReesComparison rees_comparison(const Family &F, const Family &G, const std::vector<WeightValuation> &valuations,
                               std::int64_t nmax)
{
    ReesComparison out;
    const std::int64_t N = std::min<std::int64_t>(nmax, 12);
    const std::string ref = "equal multiplicity iff equal saturation for F inside G";
    out.comparable = contained_in(F, G, N);
    if (!out.comparable) {
        out.claims.push_back({"containment", ref, "F_n inside G_n for n <= " + std::to_string(N) + " (incomparable)",
                              std::nullopt, Verdict::undecided});
        return out;
    }
    out.valuations = valuations;
    if (out.valuations.empty()) {
        std::set<WeightValuation> all;
        for (const auto &v : default_valuation_set(F, 16)) {
            all.insert(v);
        }
        for (const auto &v : default_valuation_set(G, 16)) {
            all.insert(v);
        }
        out.valuations.assign(all.begin(), all.end());
    }
    const auto mf = family_multiplicity(F, nmax);
    const auto mg = family_multiplicity(G, nmax);
    out.e_f = mf.estimate;
    out.e_g = mg.estimate;
    out.e_certified = mf.certificate == Certificate::exact && mg.certificate == Certificate::exact;
    out.e_equal = out.e_f == out.e_g;

    const auto sf = saturation(F, out.valuations, nmax);
    const auto sg = saturation(G, out.valuations, nmax);
    out.saturations_equal = true;
    for (std::int64_t n = 1; n <= N; ++n) {
        out.saturations_equal = out.saturations_equal && sf.level(F->ambient(), n) == sg.level(G->ambient(), n);
    }
    out.closures_equal = true;
    for (std::int64_t n = 1; n <= std::min<std::int64_t>(N, 6); ++n) {
        out.closures_equal = out.closures_equal &&
                             family_integral_closure(F, n, 4).ideal == family_integral_closure(G, n, 4).ideal;
    }
    const bool exact_values = !sf.approximate && !sg.approximate;

    Claim main = make_claim("e_equal_iff_saturations_equal", ref, "(e(F) = e(G)) <=> (sat(F) = sat(G))",
                            out.e_f - out.e_g, out.e_equal == out.saturations_equal);
    if (main.verdict == Verdict::fail && !(out.e_certified && exact_values)) {
        main.verdict = Verdict::undecided;
    }
    out.claims.push_back(main);

    bool values_equal = true;
    bool dominated = true;
    for (std::size_t i = 0; i < out.valuations.size(); ++i) {
        values_equal = values_equal && sf.values[i].value == sg.values[i].value;
        dominated = dominated && sg.values[i].value <= sf.values[i].value;
    }
    Claim vals = make_claim("equal_e_gives_equal_values", "equal multiplicity forces equal asymptotic values",
                            "e(F) = e(G) => v(F) = v(G)", std::nullopt, !out.e_equal || values_equal);
    if (vals.verdict == Verdict::fail && !(out.e_certified && exact_values)) {
        vals.verdict = Verdict::undecided;
    }
    out.claims.push_back(vals);
    Claim dom = make_claim("dominated_values_bound_e", "smaller asymptotic values give smaller multiplicity",
                           "v(G) <= v(F) for all v => e(G) <= e(F)", out.e_f - out.e_g,
                           !dominated || out.e_g <= out.e_f);
    if (dom.verdict == Verdict::fail && !out.e_certified) {
        dom.verdict = Verdict::undecided;
    }
    out.claims.push_back(dom);
    return out;
}

namespace {

VolMultReport assemble_vol_mult(ConvergenceReport vol, ConvergenceReport mult)
{
    VolMultReport out{std::move(vol), std::move(mult), 0, false, {}};
    out.gap = out.multiplicity.estimate - out.volume.estimate;
    const bool both = out.volume.certificate == Certificate::exact && out.multiplicity.certificate == Certificate::exact;
    const std::string ref = "volume is bounded by multiplicity";
    Claim bound = make_claim("vol_le_e", ref, "vol(F) <= e(F)", out.gap, out.gap >= 0);
    if (bound.verdict == Verdict::fail && !both) {
        // finite levels overshoot the limit by O(1/n)
        bound.verdict = Verdict::undecided;
    }
    out.claims.push_back(bound);
    out.strict_gap = out.multiplicity.certificate == Certificate::exact &&
                     out.volume.certificate != Certificate::exact && out.volume.window_sup < out.multiplicity.estimate;
    out.claims.push_back({"gap", ref, out.strict_gap ? "strict gap in the sampled window" : "no strict gap observed",
                          out.gap, Verdict::pass});
    return out;
}

} // namespace

VolMultReport vol_vs_mult(const Family &F, std::int64_t nmax)
{
    return assemble_vol_mult(family_volume(F, nmax), family_multiplicity(F, nmax));
}

VolMultReport vol_vs_mult(const DivisorFamilyPtr &F, std::int64_t nmax)
{
    return assemble_vol_mult(divisor_family_volume(F, nmax), divisor_family_multiplicity(F, nmax));
}

std::vector<NamedFamily> family_corpus()
{
    const auto R2 = AmbientRing::polynomial(2);
    const auto m2 = MonomialIdeal::maximal(R2);
    const MonomialIdeal i23(R2, {{2, 0}, {0, 3}});
    const MonomialIdeal i3(AmbientRing::polynomial(3), {{2, 0, 0}, {0, 2, 0}, {0, 0, 3}, {1, 1, 1}});
    return {
        {"adic(x^2,y^3)", adic(i23)},
        {"twist(adic(x,y),3/2)", twist(adic(m2), Rational(3, 2))},
        {"product(adic(x,y),adic(x^2,y^3))", product(adic(m2), adic(i23))},
        {"valuative((1,1),(1,2);2,3)", valuative(R2, {{1, 1}, {1, 2}}, {Rational(2), Rational(3)})},
        {"shift(adic(x,y),1)", shift(adic(m2), 1)},
        {"closure(adic(x^2,y^3))", closure_family(adic(i23))},
        {"adic(x^2,y^2,z^3,xyz)", adic(i3)},
        {"parity", parity_family()},
        {"sigma(builtin)", sigma_family(SigmaSchedule::builtin())},
        {"volex(d=2,tower)", volex_family(2, SigmaSchedule::tower())},
    };
}

std::vector<NamedPair> rees_corpus()
{
    const auto R2 = AmbientRing::polynomial(2);
    const auto m2 = MonomialIdeal::maximal(R2);
    const MonomialIdeal i23(R2, {{2, 0}, {0, 3}});
    const MonomialIdeal i22(R2, {{2, 0}, {0, 2}});
    const MonomialIdeal i14(R2, {{4, 0}, {1, 1}, {0, 4}});
    auto [rf, rg] = rees_pair();
    auto [sf, sg] = shifted_maximal_pair(2);
    return {
        {"adic(x^2,y^3) vs closure", adic(i23), closure_family(adic(i23))},
        {"adic(x^4,xy,y^4) vs closure", adic(i14), closure_family(adic(i14))},
        {"k[t]: t^(n+1) vs t^n", rf, rg},
        {"m^(n+1) vs m^n", sf, sg},
        {"parity vs adic(t)", parity_family(), adic(MonomialIdeal::maximal(AmbientRing::polynomial(1)))},
        {"adic(x^2,y^2) vs adic(x,y)", adic(i22), adic(m2)},
        {"adic(x^2,y^3) vs adic(x,y)", adic(i23), adic(m2)},
        {"k[t]: t^(2n) vs t^n", adic(MonomialIdeal(AmbientRing::polynomial(1), {{2}})),
         adic(MonomialIdeal::maximal(AmbientRing::polynomial(1)))},
    };
}

MonomialIdeal random_monomial_ideal(std::mt19937_64 &rng, int d, std::int64_t maxexp)
{
    std::uniform_int_distribution<std::int64_t> pure(1, maxexp);
    std::uniform_int_distribution<std::int64_t> mixed(0, maxexp - 1);
    std::uniform_int_distribution<int> extra(0, 2);
    std::vector<ExponentVector> gens;
    for (int i = 0; i < d; ++i) {
        ExponentVector g(static_cast<std::size_t>(d), 0);
        g[static_cast<std::size_t>(i)] = pure(rng);
        gens.push_back(g);
    }
    for (int k = extra(rng); k > 0; --k) {
        ExponentVector g;
        for (int i = 0; i < d; ++i) {
            g.push_back(mixed(rng));
        }
        if (std::any_of(g.begin(), g.end(), [](auto x) { return x > 0; })) {
            gens.push_back(g);
        }
    }
    return MonomialIdeal(AmbientRing::polynomial(d), std::move(gens));
}

std::vector<NamedPair> random_family_pairs(std::mt19937_64 &rng, int count)
{
    const Rational scales[] = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)};
    std::uniform_int_distribution<int> pick(0, 3);
    std::vector<NamedPair> out;
    for (int k = 0; k < count; ++k) {
        const int d = 2 + k % 2;
        const std::int64_t maxexp = d == 2 ? 6 : 4;
        const auto I = random_monomial_ideal(rng, d, maxexp);
        const auto J = random_monomial_ideal(rng, d, maxexp);
        const auto &c = scales[pick(rng)];
        Family f;
        Family g;
        bool eq = false;
        switch (k % 5) {
        case 0:
            f = adic(I);
            g = adic(J);
            break;
        case 1:
            f = twist(adic(I), c);
            g = adic(J);
            break;
        case 2:
            f = product(adic(I), adic(J));
            g = twist(adic(random_monomial_ideal(rng, d, maxexp)), c);
            break;
        case 3:
            f = adic(I);
            g = f;
            eq = true;
            break;
        default:
            f = adic(I);
            g = twist(f, c);
            eq = true;
            break;
        }
        out.push_back({f->description() + " | " + g->description(), f, g, eq});
    }
    return out;
}

Claim inf_property(const NamedFamily &F, std::int64_t nmax)
{
    const int d = F.family->dim();
    std::map<std::int64_t, Rational> cache;
    auto ratio = [&](std::int64_t n) {
        auto it = cache.find(n);
        if (it == cache.end()) {
            it = cache.emplace(n, normalized(multiplicity(F.family->at(n)), n, d)).first;
        }
        return it->second;
    };
    bool ok = true;
    Rational worst = 0;
    bool first = true;
    for (auto n : sampling_ladder(nmax, 0)) {
        for (std::int64_t m = 2; m * n <= nmax && m <= 4; ++m) {
            const Rational slack = ratio(n) - ratio(m * n);
            ok = ok && slack >= 0;
            if (first || slack < worst) {
                worst = slack;
                first = false;
            }
        }
    }
    return make_claim("inf_property: " + F.name, "family multiplicity is an infimum over multiples",
                      "e(I_mn)/(mn)^d <= e(I_n)/n^d", first ? std::nullopt : std::optional<Rational>(worst), ok);
}

namespace {

LabReport reproduce_volex()
{
    LabReport r{"volex", {}};
    const auto F = volex_family(2, SigmaSchedule::tower());
    bool exact = true;
    for (std::int64_t n = 1; n <= 40; ++n) {
        exact = exact && multiplicity(F->at(n)) == Rational(2 * n * n);
    }
    const std::string ref = "volume-gap example";
    r.claims.push_back(make_claim("e(J_n) = 2n^2, n <= 40", ref, "2n^2", std::nullopt, exact));
    const auto vm = vol_vs_mult(F, 1024);
    const auto &m = vm.multiplicity;
    r.claims.push_back(make_claim("e", ref, "2 (exact)", m.estimate,
                                  m.certificate == Certificate::exact && m.estimate == 2));
    r.claims.push_back(make_claim("vol_sup", ref, ">= 1.5 observed", vm.volume.window_sup,
                                  vm.volume.window_sup >= Rational(3, 2)));
    r.claims.push_back(make_claim("vol_inf", ref, "<= 1.12 observed", vm.volume.window_inf,
                                  vm.volume.window_inf <= Rational(112, 100)));
    r.claims.push_back(make_claim("strict_gap", ref, "vol < e", vm.gap, vm.strict_gap));
    return r;
}

LabReport reproduce_reesex()
{
    LabReport r{"reesex", {}};
    auto [f, g] = rees_pair();
    const auto c = rees_comparison(f, g, {WeightValuation({1})}, 64);
    const std::string ref = "k[t] pair with equal multiplicity";
    r.claims.push_back(make_claim("e(I)", ref, "1", c.e_f, c.e_certified && c.e_f == 1));
    r.claims.push_back(make_claim("e(J)", ref, "1", c.e_g, c.e_certified && c.e_g == 1));
    r.claims.push_back(make_claim("saturations_equal", ref, "true", std::nullopt, c.saturations_equal));
    r.claims.push_back(make_claim("closures_differ", ref, "true", std::nullopt, !c.closures_equal));
    r.append(c.claims);
    return r;
}

LabReport reproduce_oned_branch()
{
    LabReport r{"oned_branch", {}};
    const std::string ref = "two-branch curve example";
    for (std::int64_t n = 2; n <= 6; ++n) {
        auto [I, J] = two_branch_example(n);
        const auto rep = curve_family_report(curve_adic(I), curve_adic(J), 16);
        const std::string tag = " (n=" + std::to_string(n) + ")";
        r.claims.push_back(make_claim("e(I)" + tag, ref, std::to_string(n + 1), rep.f.multiplicity,
                                      rep.f.multiplicity == n + 1));
        r.claims.push_back(make_claim("e(J)" + tag, ref, std::to_string(n + 1), rep.g.multiplicity,
                                      rep.g.multiplicity == n + 1));
        r.claims.push_back(make_claim("minkowski_equality" + tag, ref, "e(IJ) = e(I) + e(J)", rep.fg.multiplicity,
                                      rep.minkowski_equality));
        const bool none = std::none_of(rep.proportional.begin(), rep.proportional.end(), [](bool b) { return b; });
        r.claims.push_back(make_claim("proportionality_fails" + tag, ref, "fails on both branches", std::nullopt,
                                      none && rep.proportional.size() == 2));
    }
    return r;
}

LabReport reproduce_kt_saturation()
{
    LabReport r{"kt_saturation", {}};
    const std::string ref = "k[t] saturation example";
    const auto P = parity_family();
    const WeightValuation ord({1});
    const auto v = family_value(ord, P, 64);
    r.claims.push_back(make_claim("v", ref, "1", v.value, v.exact && v.value == 1));
    const auto R = P->ambient();
    bool closure_ok = true;
    bool sat_ok = true;
    const auto sat = saturation(P, {ord}, 64);
    for (std::int64_t n = 1; n <= 20; ++n) {
        closure_ok = closure_ok && family_integral_closure(P, n, 6).ideal == MonomialIdeal(R, {{n + 1}});
        sat_ok = sat_ok && sat.level(R, n) == MonomialIdeal(R, {{n}});
    }
    r.claims.push_back(make_claim("closure_n", ref, "(t^(n+1)), n <= 20", std::nullopt, closure_ok));
    r.claims.push_back(make_claim("saturation_n", ref, "(t^n), n <= 20", std::nullopt, sat_ok && !sat.approximate));
    return r;
}

LabReport reproduce_sigma_slopes()
{
    LabReport r{"sigma_slopes", {}};
    const std::string ref = "k[t] family with sigma(m) = m/2 or (m+1)/2";
    const auto S = SigmaSchedule::builtin();
    const auto F = sigma_family(S);
    r.claims.push_back(make_claim("sigma(4)", ref, "2", Rational(S(4)), S(4) == 2));
    r.claims.push_back(make_claim("sigma(5)", ref, "3", Rational(S(5)), S(5) == 3));
    bool even_fail = true;
    bool odd_hold = true;
    for (std::int64_t m = 1; m <= 20; ++m) {
        const bool inside = ideal_power(F->at(m), m + 1).subset_of(ideal_power(F->at(m + 1), m));
        if (m % 2 == 0) {
            even_fail = even_fail && !inside;
        } else {
            odd_hold = odd_hold && inside;
        }
    }
    r.claims.push_back(make_claim("I_m^(m+1) not inside I_(m+1)^m, m even", ref, "true for m <= 20", std::nullopt,
                                  even_fail));
    r.claims.push_back(make_claim("I_m^(m+1) inside I_(m+1)^m, m odd", "derived", "true for m <= 20", std::nullopt,
                                  odd_hold));
    const auto v = family_value(WeightValuation({1}), F, 64);
    r.claims.push_back(make_claim("v", ref, "1/2", v.value, v.exact && v.value == Rational(1, 2)));
    return r;
}

LabReport reproduce_divisor_chain()
{
    LabReport r{"divisor_chain", {}};
    const std::string ref = "free chain with v_i >= m(2^i-1)/2^(i-1)";
    bool table = true;
    for (int l = 1; l <= 12; ++l) {
        auto ex = chain_example(l);
        auto F = divisorial_family_2d(ex.cluster, ex.targets);
        const std::int64_t top = std::min<std::int64_t>(64, (std::int64_t{1} << (l - 1)) - 1);
        for (std::int64_t m = 1; m <= top; ++m) {
            table = table && F->at(m).v == chain_expected_values(l, m);
        }
    }
    r.claims.push_back(make_claim("v-table", ref, "ceil(m(2^n-1)/2^(n-1)), l <= 12, m <= 64", std::nullopt, table));
    auto ex = chain_example(14);
    auto F = divisorial_family_2d(ex.cluster, ex.targets);
    const auto vm = vol_vs_mult(F, std::int64_t{1} << 13);
    const Rational dev = abs(vm.multiplicity.window_inf - Rational(4, 3));
    r.claims.push_back(make_claim("e -> 4/3 (l=14, m=2^13)", "closed form sum of m_i^2",
                                  "|estimate - 4/3| <= 0.02", vm.multiplicity.window_inf, dev <= Rational(2, 100)));
    r.claims.push_back(make_claim("closed form at m=2^13", "closed form sum of m_i^2", to_string(chain_closed_form(14)),
                                  Rational(F->multiplicity(std::int64_t{1} << 13)) / rpow(Rational(8192), 2),
                                  Rational(F->multiplicity(std::int64_t{1} << 13)) / rpow(Rational(8192), 2) ==
                                      chain_closed_form(14)));
    r.claims.push_back(make_claim("vol = e", "regular surface", "gap 0", vm.gap, vm.gap == 0));
    for (int i = 0; i < 14; ++i) {
        const auto v = divisor_family_value(F, i, 256);
        r.claims.push_back(make_claim("v_E" + std::to_string(i + 1), ref, to_string(ex.targets[i]), v.value,
                                      v.exact && v.value == ex.targets[i]));
    }
    return r;
}

LabReport reproduce_shifted_maximal()
{
    LabReport r{"shifted_maximal", {}};
    const std::string ref = "m^(n+1) against m^n";
    auto [f, g] = shifted_maximal_pair(2);
    const auto diag = minkowski_equality_diagnostic(f, g, {WeightValuation({1, 1})}, 32);
    r.claims.push_back(make_claim("minkowski_equality", ref, "e(FG)^(1/2) = e(F)^(1/2) + e(G)^(1/2)", std::nullopt,
                                  diag.minkowski_equality && diag.equality_certified));
    bool differ = true;
    for (std::int64_t n = 1; n <= 6; ++n) {
        differ = differ && !(family_integral_closure(f, n, 4).ideal == family_integral_closure(g, n, 4).ideal);
    }
    r.claims.push_back(make_claim("closures_differ", ref, "true", std::nullopt, differ));
    r.claims.push_back(make_claim("saturations_agree", ref, "true", diag.ratio, diag.saturations_match));
    r.append(diag.claims);
    return r;
}

} // namespace

std::vector<std::string> registry_ids()
{
    return {"volex", "reesex", "oned_branch", "kt_saturation", "sigma_slopes", "divisor_chain", "shifted_maximal"};
}

LabReport reproduce(const std::string &id)
{
    if (id == "volex") {
        return reproduce_volex();
    }
    if (id == "reesex") {
        return reproduce_reesex();
    }
    if (id == "oned_branch") {
        return reproduce_oned_branch();
    }
    if (id == "kt_saturation") {
        return reproduce_kt_saturation();
    }
    if (id == "sigma_slopes") {
        return reproduce_sigma_slopes();
    }
    if (id == "divisor_chain") {
        return reproduce_divisor_chain();
    }
    if (id == "shifted_maximal") {
        return reproduce_shifted_maximal();
    }
    throw std::invalid_argument("unknown example id '" + id + "'");
}

std::vector<LabReport> run_suite(std::uint64_t seed, int pairs)
{
    std::vector<LabReport> out;
    std::mt19937_64 rng(seed);

    LabReport mink{"minkowski_random_pairs", {}};
    for (const auto &p : random_family_pairs(rng, pairs)) {
        const auto rep = minkowski_report(p.f, p.g, 8);
        const bool ok = std::all_of(rep.claims.begin(), rep.claims.end(),
                                    [](const Claim &c) { return c.verdict == Verdict::pass; });
        mink.claims.push_back(make_claim(p.name, "Minkowski inequalities", "all four hold", rep.e_product, ok));
        if (p.expect_equality) {
            mink.claims.push_back(make_claim(p.name + " equality", "Minkowski equality for proportional families",
                                             "equality detected", std::nullopt, rep.equality));
        }
    }
    out.push_back(std::move(mink));

    LabReport rees{"rees_corpus", {}};
    for (const auto &p : rees_corpus()) {
        const auto c = rees_comparison(p.f, p.g, {}, 32);
        for (auto claim : c.claims) {
            claim.name = p.name + ": " + claim.name;
            rees.claims.push_back(std::move(claim));
        }
    }
    out.push_back(std::move(rees));

    LabReport chain{"closure_chain", {}};
    LabReport inf{"inf_property", {}};
    for (const auto &F : family_corpus()) {
        inf.claims.push_back(inf_property(F, 64));
        if (F.family->ambient()->has_quotient()) {
            continue;
        }
        const auto sat = saturation(F.family, default_valuation_set(F.family, 16), 32);
        bool ok = true;
        for (std::int64_t n = 1; n <= 12; ++n) {
            const auto In = F.family->at(n);
            const auto cl = integral_closure(In);
            const auto star = family_integral_closure(F.family, n, 6).ideal;
            ok = ok && In.subset_of(cl) && cl.subset_of(star) && star.subset_of(sat.level(F.family->ambient(), n));
        }
        chain.claims.push_back(make_claim(F.name, "closure and saturation chain", "I_n, closure, I*_n, sat nested",
                                          std::nullopt, ok));
    }
    out.push_back(std::move(chain));
    out.push_back(std::move(inf));

    LabReport tw{"twist_identities", {}};
    for (int k = 0; k < 6; ++k) {
        const int d = 2 + k % 2;
        const auto F = adic(random_monomial_ideal(rng, d, d == 2 ? 6 : 4));
        const auto e = family_multiplicity(F, 16).estimate;
        const auto vals = default_valuation_set(F, 4);
        for (auto c : {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)}) {
            const auto T = twist(F, c);
            const auto et = family_multiplicity(T, 16);
            tw.claims.push_back(make_claim(T->description() + " e", "twist scales e by c^d", "c^d e(F)", et.estimate,
                                           et.certificate == Certificate::exact && et.estimate == rpow(c, d) * e));
            for (const auto &v : vals) {
                const auto base = family_value(v, F, 16);
                const auto tv = family_value(v, T, 16);
                tw.claims.push_back(make_claim(T->description() + " v" + v.str(), "twist scales v by c", "c v(F)",
                                               tv.value, tv.exact && tv.value == c * base.value));
            }
        }
    }
    out.push_back(std::move(tw));
    return out;
}

} // namespace multfam
