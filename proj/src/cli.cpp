#include "multfam/cli.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "multfam/blowups.hpp"
#include "multfam/curves.hpp"
#include "multfam/io.hpp"
#include "multfam/multiplicities.hpp"
#include "multfam/report.hpp"
#include "multfam/theorem_lab.hpp"
#include "multfam/valuations.hpp"

namespace multfam {

namespace {

struct Options
{
    std::int64_t nmax = 64;
    std::int64_t mmax = 12;
    int depth = 6;
    std::int64_t levels = 6;
    std::uint64_t seed = 7;
    int pairs = 40;
    std::string format = "table";
    std::string out;
    std::int64_t audit = 0;
    std::vector<std::string> inputs;
};

struct Outcome
{
    Json json;
    std::string table;
    std::string csv;
    std::vector<Claim> claims;
};

const char *kReference = "computed";

Json claims_json(const std::vector<Claim> &claims)
{
    Json a = Json::array();
    for (const auto &c : claims) {
        a.push_back(to_json(c));
    }
    return a;
}

bool any_failed(const std::vector<Claim> &claims)
{
    return std::any_of(claims.begin(), claims.end(), [](const Claim &c) { return c.verdict == Verdict::fail; });
}

void finish(Outcome &o)
{
    o.json["claims"] = claims_json(o.claims);
    o.json["passed"] = !any_failed(o.claims);
    if (!o.claims.empty()) {
        o.table += "claims\n" + claims_table(o.claims);
    }
    if (o.csv.empty()) {
        o.csv = claims_csv(o.claims);
    }
}

Json vector_json(const std::vector<std::int64_t> &v)
{
    Json a = Json::array();
    for (auto x : v) {
        a.push_back(x);
    }
    return a;
}

Json ideal_json(const MonomialIdeal &I)
{
    Json a = Json::array();
    for (const auto &g : I.gens()) {
        a.push_back(vector_json(g));
    }
    return a;
}

std::string join(const std::vector<std::int64_t> &v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + std::to_string(v[i]);
    }
    return s + ")";
}

std::string join(const std::vector<Rational> &v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + to_string(v[i]);
    }
    return s + ")";
}

std::string rational_line(const std::string &label, const Rational &q)
{
    std::string s = label + " = " + to_string(q);
    if (q.get_den() != 1) {
        s += " (" + to_decimal(q) + ")";
    }
    return s + "\n";
}

const std::string &input(const Options &o, std::size_t i)
{
    if (o.inputs.size() <= i) {
        throw InputError("missing input file");
    }
    return o.inputs[i];
}

MonomialIdeal load_ideal(const std::string &path)
{
    const auto doc = Document::load(path);
    auto I = ideal_from(doc);
    if (!is_m_primary(I)) {
        throw InputError(path + ": ideal " + I.str() + " is not primary to the maximal ideal");
    }
    return I;
}

struct LoadedFamily
{
    Document doc;
    Family family;
    DivisorFamilyPtr divisor;

    std::string description() const { return family ? family->description() : divisor->description(); }
};

LoadedFamily load_family(const std::string &path, const Options &o)
{
    LoadedFamily L{Document::load(path), nullptr, nullptr};
    if (L.doc.has("size")) {
        auto in = cluster_from(L.doc);
        if (!in.targets) {
            L.doc.fail("size", "a divisorial family needs `targets`");
        }
        L.divisor = divisorial_family_2d(in.cluster, *in.targets);
        return L;
    }
    L.family = family_from(L.doc);
    if (o.audit > 0) {
        audit_or_throw(L.family, o.audit);
    }
    return L;
}

Family load_graded(const std::string &path, const Options &o, Document *doc = nullptr)
{
    auto L = load_family(path, o);
    if (!L.family) {
        throw InputError(path + ": this command needs a monomial family, not a cluster");
    }
    if (doc) {
        *doc = L.doc;
    }
    return L.family;
}

std::vector<WeightValuation> valuations_or_default(const Document &doc, const Family &F, std::int64_t nmax)
{
    auto vals = valuations_from(doc);
    if (vals.empty()) {
        vals = default_valuation_set(F, std::min<std::int64_t>(nmax, 16));
    }
    return vals;
}

std::vector<Claim> report_claims(const ConvergenceReport &r)
{
    std::vector<Claim> out;
    out.push_back(make_claim("monotone_along_multiples", "inf property over sampled pairs",
                             "e(I_mn)/(mn)^d <= e(I_n)/n^d", std::nullopt, r.monotone_along_multiples));
    for (const auto &[name, ok] : r.checks) {
        out.push_back(make_claim(name, kReference, "holds", std::nullopt, ok));
    }
    return out;
}

Json valuation_json(const WeightValuation &v) { return vector_json(v.weights()); }

Outcome cmd_mult(const Options &o)
{
    const auto I = load_ideal(input(o, 0));
    const auto e = multiplicity(I);
    Outcome out;
    out.json["command"] = "mult";
    out.json["ideal"] = I.str();
    out.json["vars"] = I.num_vars();
    out.json["dim"] = I.ambient()->dim();
    out.json["multiplicity"] = rational_json(e);
    out.table = "ideal " + I.str() + "\n" + rational_line("e(I)", e);
    out.csv = "quantity,value_decimal,value_fraction\nmultiplicity," + to_decimal(e) + "," + to_string(e) + "\n";
    finish(out);
    return out;
}

Outcome cmd_mult_seq(const Options &o)
{
    const auto I = load_ideal(input(o, 0));
    const auto r = multiplicity_sequence(I, o.mmax);
    const auto e = multiplicity(I);
    Outcome out;
    out.json["command"] = "mult-seq";
    out.json["ideal"] = I.str();
    out.json["mmax"] = o.mmax;
    out.json["report"] = to_json(r);
    out.json["multiplicity"] = rational_json(e);
    out.table = "ideal " + I.str() + "\n" + report_table(r) + rational_line("e(I) exact", e);
    out.csv = samples_csv(r.samples);
    Claim c = make_claim("sequence_matches_exact", "finite differences of the Hilbert-Samuel function",
                         to_string(e), r.estimate, r.estimate == e);
    if (r.certificate != Certificate::exact) {
        c.verdict = Verdict::undecided;
    }
    out.claims.push_back(c);
    finish(out);
    return out;
}

Outcome cmd_mixed(const Options &o)
{
    if (o.inputs.size() < 2) {
        throw InputError("mixed needs at least two ideal files");
    }
    std::vector<MonomialIdeal> ideals;
    for (const auto &p : o.inputs) {
        ideals.push_back(load_ideal(p));
    }
    for (const auto &I : ideals) {
        if (!same_ambient(I.ambient(), ideals[0].ambient())) {
            throw InputError("mixed needs ideals in the same ring");
        }
    }
    const auto mm = mixed_multiplicities(ideals);
    MonomialIdeal prod = ideals[0];
    for (std::size_t i = 1; i < ideals.size(); ++i) {
        prod = ideal_product(prod, ideals[i]);
    }
    const auto e_prod = multiplicity(prod);
    const auto poly = mm.evaluate(std::vector<Rational>(ideals.size(), Rational(1)));

    Outcome out;
    out.json["command"] = "mixed";
    Json names = Json::array();
    for (const auto &I : ideals) {
        names.push_back(I.str());
    }
    out.json["ideals"] = names;
    out.json["degree"] = mm.degree;
    Json coeffs = Json::array();
    out.csv = "alpha,value_decimal,value_fraction\n";
    bool integral = true;
    bool nonnegative = true;
    for (const auto &[alpha, v] : mm.coefficients) {
        Json c;
        Json a = Json::array();
        std::string key;
        for (auto x : alpha) {
            a.push_back(x);
            key += (key.empty() ? "" : " ") + std::to_string(x);
        }
        c["alpha"] = a;
        c["value"] = rational_json(v);
        coeffs.push_back(c);
        out.table += "e[" + key + "] = " + to_string(v) + "\n";
        out.csv += key + "," + to_decimal(v) + "," + to_string(v) + "\n";
        integral = integral && v.get_den() == 1;
        nonnegative = nonnegative && v >= 0;
    }
    out.json["coefficients"] = coeffs;
    out.json["e_product"] = rational_json(e_prod);
    out.table += rational_line("e(product)", e_prod);
    out.claims.push_back(make_claim("integral", "mixed multiplicities of ideals", "integers", std::nullopt, integral));
    out.claims.push_back(make_claim("nonnegative", "mixed multiplicities of ideals", ">= 0", std::nullopt, nonnegative));
    out.claims.push_back(make_claim("product_polynomial", "e(I_1..I_r) is the mixed polynomial at (1,..,1)",
                                    to_string(poly), e_prod, poly == e_prod));
    finish(out);
    return out;
}

Outcome family_report_cmd(const Options &o, bool volume)
{
    const auto L = load_family(input(o, 0), o);
    ConvergenceReport r;
    if (L.divisor) {
        r = volume ? divisor_family_volume(L.divisor, o.nmax) : divisor_family_multiplicity(L.divisor, o.nmax);
    } else {
        r = volume ? family_volume(L.family, o.nmax) : family_multiplicity(L.family, o.nmax);
    }
    Outcome out;
    out.json["command"] = volume ? "family-vol" : "family-mult";
    out.json["family"] = L.description();
    out.json["nmax"] = o.nmax;
    out.json["report"] = to_json(r);
    out.table = "family " + L.description() + "\n" + report_table(r);
    out.csv = samples_csv(r.samples);
    out.claims = report_claims(r);
    if (volume) {
        out.claims.erase(out.claims.begin());
    }
    finish(out);
    return out;
}

Outcome cmd_value(const Options &o)
{
    const auto L = load_family(input(o, 0), o);
    Outcome out;
    out.json["command"] = "value";
    out.json["family"] = L.description();
    out.json["nmax"] = o.nmax;
    Json vals = Json::array();
    out.table = "family " + L.description() + "\n";
    out.csv = "valuation,value_decimal,value_fraction,lower_bound_fraction,exact\n";
    auto add = [&](const std::string &name, const Rational &value, const Rational &lower, bool exact,
                   const std::optional<std::int64_t> &at) {
        Json v;
        v["valuation"] = name;
        v["value"] = rational_json(value);
        v["lower_bound"] = rational_json(lower);
        v["exact"] = exact;
        v["attained_at"] = at ? Json(*at) : Json(nullptr);
        vals.push_back(v);
        out.table += "v" + name + " = " + to_string(value) + (exact ? "" : " (bound " + to_string(lower) + ")") + "\n";
        out.csv += "\"" + name + "\"," + to_decimal(value) + "," + to_string(value) + "," + to_string(lower) + "," +
                   (exact ? "true" : "false") + "\n";
        out.claims.push_back(make_claim("bounds_ordered_" + name, "value lies above its rigorous bound",
                                        ">= " + to_string(lower), value, lower <= value));
    };
    if (L.divisor) {
        for (int i = 0; i < L.divisor->cluster()->size(); ++i) {
            const auto v = divisor_family_value(L.divisor, i, o.nmax);
            add("E" + std::to_string(i + 1), v.value, v.lower_bound, v.exact, v.attained_at);
        }
    } else {
        for (const auto &w : valuations_or_default(L.doc, L.family, o.nmax)) {
            const auto v = family_value(w, L.family, o.nmax);
            add(w.str(), v.value, v.lower_bound, v.exact, v.attained_at);
        }
    }
    out.json["values"] = vals;
    finish(out);
    return out;
}

Outcome cmd_saturate(const Options &o)
{
    Document doc;
    const auto F = load_graded(input(o, 0), o, &doc);
    const auto vals = valuations_or_default(doc, F, o.nmax);
    const auto S = saturation(F, vals, o.nmax);
    Outcome out;
    out.json["command"] = "saturate";
    out.json["family"] = F->description();
    Json vj = Json::array();
    for (const auto &v : S.values) {
        Json e;
        e["valuation"] = valuation_json(v.valuation);
        e["value"] = rational_json(v.value);
        e["exact"] = v.exact;
        vj.push_back(e);
        out.table += "v" + v.valuation.str() + "(F) = " + to_string(v.value) + "\n";
    }
    out.json["valuations"] = vj;
    out.json["approximate"] = S.approximate;
    Json lv = Json::array();
    out.csv = "n,level,saturated\n";
    for (std::int64_t n = 1; n <= o.levels; ++n) {
        const auto I = F->at(n);
        const auto T = S.level(F->ambient(), n);
        Json e;
        e["n"] = n;
        e["level"] = ideal_json(I);
        e["saturated"] = ideal_json(T);
        lv.push_back(e);
        out.table += "n=" + std::to_string(n) + "  " + I.str() + "  ->  " + T.str() + "\n";
        out.csv += std::to_string(n) + ",\"" + I.str() + "\",\"" + T.str() + "\"\n";
        Claim c = make_claim("level_in_saturation_n=" + std::to_string(n), "I_n lies in its saturation", "contained",
                             std::nullopt, I.subset_of(T));
        if (c.verdict == Verdict::fail && S.approximate) {
            c.verdict = Verdict::undecided;
        }
        out.claims.push_back(c);
    }
    out.json["levels"] = lv;
    finish(out);
    return out;
}

Outcome cmd_closure(const Options &o)
{
    const auto F = load_graded(input(o, 0), o);
    Outcome out;
    out.json["command"] = "closure";
    out.json["family"] = F->description();
    out.json["depth"] = o.depth;
    Json lv = Json::array();
    out.csv = "n,level,closure,stable\n";
    for (std::int64_t n = 1; n <= o.levels; ++n) {
        const auto I = F->at(n);
        const auto C = family_integral_closure(F, n, o.depth);
        Json e;
        e["n"] = n;
        e["level"] = ideal_json(I);
        e["closure"] = ideal_json(C.ideal);
        e["stable"] = C.stable;
        lv.push_back(e);
        out.table += "n=" + std::to_string(n) + "  " + I.str() + "  ->  " + C.ideal.str() +
                     (C.stable ? "" : "  (not stable at this depth)") + "\n";
        out.csv += std::to_string(n) + ",\"" + I.str() + "\",\"" + C.ideal.str() + "\"," + (C.stable ? "true" : "false") +
                   "\n";
        out.claims.push_back(make_claim("level_in_closure_n=" + std::to_string(n), "I_n lies in I*_n", "contained",
                                        std::nullopt, I.subset_of(C.ideal)));
    }
    out.json["levels"] = lv;
    finish(out);
    return out;
}

std::vector<WeightValuation> pair_valuations(const Document &df, const Family &F, const Document &dg, const Family &G,
                                             std::int64_t nmax)
{
    std::set<WeightValuation> s;
    for (auto &v : valuations_from(df)) {
        s.insert(v);
    }
    for (auto &v : valuations_from(dg)) {
        s.insert(v);
    }
    if (s.empty()) {
        for (auto &v : default_valuation_set(F, std::min<std::int64_t>(nmax, 16))) {
            s.insert(v);
        }
        for (auto &v : default_valuation_set(G, std::min<std::int64_t>(nmax, 16))) {
            s.insert(v);
        }
    }
    return {s.begin(), s.end()};
}

Outcome cmd_minkowski(const Options &o)
{
    Document df, dg;
    const auto F = load_graded(input(o, 0), o, &df);
    const auto G = load_graded(input(o, 1), o, &dg);
    if (!same_ambient(F->ambient(), G->ambient())) {
        throw InputError("minkowski needs families over the same ring");
    }
    const auto rep = minkowski_report(F, G, o.nmax);
    const auto diag = minkowski_equality_diagnostic(F, G, pair_valuations(df, F, dg, G, o.nmax), o.nmax);
    Outcome out;
    out.json["command"] = "minkowski";
    out.json["f"] = F->description();
    out.json["g"] = G->description();
    out.json["d"] = rep.d;
    out.json["e"] = rationals_json(rep.e);
    out.json["e_product"] = rational_json(rep.e_product);
    out.json["certified"] = rep.certified;
    out.json["level"] = rep.level;
    out.json["equality"] = rep.equality;
    Json dj;
    Json vj = Json::array();
    for (std::size_t i = 0; i < diag.valuations.size(); ++i) {
        Json e;
        e["valuation"] = valuation_json(diag.valuations[i]);
        e["proportional"] = static_cast<bool>(diag.proportional[i]);
        vj.push_back(e);
    }
    dj["valuations"] = vj;
    dj["all_proportional"] = diag.all_proportional;
    dj["ratio"] = diag.ratio ? rational_json(*diag.ratio) : Json(nullptr);
    dj["saturations_match"] = diag.saturations_match;
    out.json["equality_diagnostic"] = dj;

    out.table = "F = " + F->description() + "\nG = " + G->description() + "\n";
    for (int i = 0; i <= rep.d; ++i) {
        out.table += rational_line("e_" + std::to_string(i), rep.e[i]);
    }
    out.table += rational_line("e(FG)", rep.e_product);
    out.table += std::string(rep.certified ? "limits certified" : "values of level " + std::to_string(rep.level)) +
                 ", equality " + (rep.equality ? "yes" : "no") + "\n";
    out.claims = rep.claims;
    out.claims.insert(out.claims.end(), diag.claims.begin(), diag.claims.end());
    finish(out);
    return out;
}

Outcome cmd_rees(const Options &o)
{
    Document df, dg;
    const auto F = load_graded(input(o, 0), o, &df);
    const auto G = load_graded(input(o, 1), o, &dg);
    if (!same_ambient(F->ambient(), G->ambient())) {
        throw InputError("rees needs families over the same ring");
    }
    std::vector<WeightValuation> vals;
    for (auto &v : valuations_from(df)) {
        vals.push_back(v);
    }
    for (auto &v : valuations_from(dg)) {
        if (std::find(vals.begin(), vals.end(), v) == vals.end()) {
            vals.push_back(v);
        }
    }
    const auto c = rees_comparison(F, G, vals, o.nmax);
    Outcome out;
    out.json["command"] = "rees";
    out.json["f"] = F->description();
    out.json["g"] = G->description();
    out.json["comparable"] = c.comparable;
    out.json["e_f"] = rational_json(c.e_f);
    out.json["e_g"] = rational_json(c.e_g);
    out.json["e_certified"] = c.e_certified;
    out.json["e_equal"] = c.e_equal;
    out.json["saturations_equal"] = c.saturations_equal;
    out.json["closures_equal"] = c.closures_equal;
    Json vj = Json::array();
    for (const auto &v : c.valuations) {
        vj.push_back(valuation_json(v));
    }
    out.json["valuations"] = vj;
    out.table = "F = " + F->description() + "\nG = " + G->description() + "\n";
    if (c.comparable) {
        out.table += rational_line("e(F)", c.e_f) + rational_line("e(G)", c.e_g) +
                     "saturations equal: " + (c.saturations_equal ? "yes" : "no") +
                     ", closures equal: " + (c.closures_equal ? "yes" : "no") + "\n";
    } else {
        out.table += "F is not contained in G levelwise\n";
    }
    out.claims = c.claims;
    finish(out);
    return out;
}

Outcome cmd_blowup(const Options &o)
{
    const auto doc = Document::load(input(o, 0));
    const auto in = cluster_from(doc);
    const auto &C = *in.cluster;
    const auto N = intersection_matrix(C);
    const auto K = canonical_degrees(N);
    Outcome out;
    out.json["command"] = "blowup";
    out.json["cluster"] = C.str();
    Json mat = Json::array();
    out.table = C.str() + "\nintersection matrix\n";
    for (const auto &row : N.N) {
        mat.push_back(vector_json(row));
        out.table += "  " + join(row) + "\n";
    }
    out.json["intersection_matrix"] = mat;
    out.json["canonical_degrees"] = vector_json(K);
    out.claims.push_back(make_claim("negative_definite", "intersection form of an exceptional configuration",
                                    "negative definite", std::nullopt, N.negative_definite()));

    auto describe = [&](const AntinefDivisor &D, const std::string &key) {
        // -(D·(D+K))/2 against Σ m(m+1)/2, and -(D²) against Σ m²
        Integer dd = 0, dk = 0, hoskin = 0, squares = 0;
        for (int i = 0; i < N.size(); ++i) {
            Integer nv = 0;
            for (int j = 0; j < N.size(); ++j) {
                nv += Integer(N.N[i][j]) * Integer(D.v[j]);
            }
            dd += Integer(D.v[i]) * nv;
            dk += Integer(D.v[i]) * Integer(K[i]);
        }
        for (auto m : D.m) {
            hoskin += Integer(m) * Integer(m + 1) / 2;
            squares += Integer(m) * Integer(m);
        }
        const Integer colength = -(dd + dk) / 2;
        Json j;
        j["values"] = vector_json(D.v);
        j["multiplicities"] = vector_json(D.m);
        j["iterations"] = D.iterations;
        j["colength"] = rational_json(Rational(colength));
        j["multiplicity"] = rational_json(Rational(-dd));
        out.json[key] = j;
        out.table += key + ": values " + join(D.v) + ", point multiplicities " + join(D.m) + "\n" +
                     "  colength " + to_string(colength) + ", multiplicity " + to_string(Integer(-dd)) + "\n";
        out.claims.push_back(make_claim(key + "_antinef", "unloading output", "(D.E_i) <= 0", std::nullopt,
                                        is_antinef(N, D.v)));
        out.claims.push_back(make_claim(key + "_length_formula", "-(D.(D+K))/2 = sum m(m+1)/2", to_string(hoskin),
                                        Rational(colength), colength == hoskin));
        out.claims.push_back(make_claim(key + "_multiplicity_formula", "-(D^2) = sum m^2", to_string(squares),
                                        Rational(-dd), -dd == squares));
    };

    if (in.values) {
        const bool antinef = is_antinef(N, *in.values);
        out.json["values_antinef"] = antinef;
        out.table += std::string("given values ") + join(*in.values) + (antinef ? " are" : " are not") + " antinef\n";
        std::vector<Rational> t(in.values->begin(), in.values->end());
        describe(unload(in.cluster, t), "closure_of_values");
    }
    if (in.targets) {
        out.table += "targets " + join(*in.targets) + "\n";
        const auto D = unload(in.cluster, *in.targets);
        describe(D, "unloaded");
        bool met = true;
        for (std::size_t i = 0; i < D.v.size(); ++i) {
            met = met && Rational(D.v[i]) >= (*in.targets)[i];
        }
        out.claims.push_back(make_claim("unloaded_targets_met", "unloading output", "v_i >= t_i", std::nullopt, met));
        const auto F = divisorial_family_2d(in.cluster, *in.targets);
        if (auto lim = F->limit_multiplicity()) {
            out.json["family_multiplicity"] = rational_json(*lim);
            out.table += rational_line("e(family)", *lim);
        }
    }
    finish(out);
    return out;
}

Json curve_limits_json(const CurveLimits &L)
{
    Json j;
    j["values"] = rationals_json(L.values);
    j["multiplicity"] = rational_json(L.multiplicity);
    j["exact"] = L.exact;
    return j;
}

CurveFamilyPtr load_curve(const std::string &path, const Options &o, CurveRingPtr ring = nullptr)
{
    auto F = curve_family_from(Document::load(path), std::move(ring));
    if (o.audit > 0 && !curve_audit(F, o.audit)) {
        throw InputError(path + ": curve family fails the subadditivity audit up to " + std::to_string(o.audit));
    }
    return F;
}

Outcome cmd_curve(const Options &o)
{
    const auto F = load_curve(input(o, 0), o);
    Outcome out;
    out.json["command"] = "curve";
    out.json["f"] = F->description();
    if (o.inputs.size() < 2) {
        const auto L = curve_limits(F, o.nmax);
        out.json["limits"] = curve_limits_json(L);
        out.table = F->description() + "\nvalues " + join(L.values) + "\n" + rational_line("e(F)", L.multiplicity);
        Rational s = 0;
        for (const auto &v : L.values) {
            s += v;
        }
        out.claims.push_back(make_claim("multiplicity_is_sum_of_values", "e = sum over branches of v_i",
                                        to_string(s), L.multiplicity, s == L.multiplicity));
        finish(out);
        return out;
    }
    const auto G = load_curve(input(o, 1), o, F->ring());
    const auto rep = curve_family_report(F, G, o.nmax);
    out.json["g"] = G->description();
    out.json["limits_f"] = curve_limits_json(rep.f);
    out.json["limits_g"] = curve_limits_json(rep.g);
    out.json["limits_fg"] = curve_limits_json(rep.fg);
    out.json["minkowski_equality"] = rep.minkowski_equality;
    Json pj = Json::array();
    for (bool b : rep.proportional) {
        pj.push_back(b);
    }
    out.json["proportional"] = pj;
    out.json["all_proportional"] = rep.all_proportional;
    out.table = "F = " + F->description() + "\nG = " + G->description() + "\n" + rational_line("e(F)", rep.f.multiplicity) +
                rational_line("e(G)", rep.g.multiplicity) + rational_line("e(FG)", rep.fg.multiplicity) +
                "proportional on every branch: " + (rep.all_proportional ? "yes" : "no") + "\n";
    auto c = make_claim("minkowski_equality_dim1", "e(FG) = e(F) + e(G) in dimension one",
                        to_string(rep.f.multiplicity + rep.g.multiplicity), rep.fg.multiplicity,
                        rep.minkowski_equality);
    if (!(rep.f.exact && rep.g.exact && rep.fg.exact) && c.verdict == Verdict::fail) {
        c.verdict = Verdict::undecided;
    }
    out.claims.push_back(c);
    finish(out);
    return out;
}

Outcome lab_outcome(const std::string &command, const std::vector<LabReport> &reports, bool single)
{
    Outcome out;
    if (single) {
        out.json = to_json(reports.front());
    } else {
        out.json["command"] = command;
        Json a = Json::array();
        for (const auto &r : reports) {
            a.push_back(to_json(r));
        }
        out.json["reports"] = a;
    }
    std::vector<Claim> all;
    out.csv = "example,name,expected,computed_fraction,computed_decimal,verdict\n";
    for (const auto &r : reports) {
        out.table += r.example + (r.passed() ? "  PASS" : "  FAIL") + "\n" + claims_table(r.claims);
        const auto rows = claims_csv(r.claims);
        std::istringstream in(rows);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            out.csv += r.example + "," + line + "\n";
        }
        all.insert(all.end(), r.claims.begin(), r.claims.end());
    }
    out.claims = std::move(all);
    if (!single) {
        out.json["passed"] = !any_failed(out.claims);
    }
    return out;
}

Outcome cmd_reproduce(const Options &o)
{
    const auto &id = input(o, 0);
    if (id == "all") {
        std::vector<LabReport> reports;
        for (const auto &r : registry_ids()) {
            reports.push_back(reproduce(r));
        }
        return lab_outcome("reproduce", reports, false);
    }
    try {
        return lab_outcome("reproduce", {reproduce(id)}, true);
    } catch (const std::invalid_argument &) {
        std::string known;
        for (const auto &r : registry_ids()) {
            known += " " + r;
        }
        throw InputError("unknown example '" + id + "'; known:" + known + " all");
    }
}

Outcome cmd_suite(const Options &o)
{
    auto out = lab_outcome("suite", run_suite(o.seed, o.pairs), false);
    out.json["seed"] = o.seed;
    out.json["pairs"] = o.pairs;
    return out;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Multiplicities and volumes of graded families of monomial ideals"};
    app.name("multfam");
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--nmax", o.nmax, "largest family level sampled")->check(CLI::Range(1, 1 << 20));
    app.add_option("--mmax", o.mmax, "largest power for mult-seq")->check(CLI::Range(1, 200));
    app.add_option("--depth", o.depth, "closure depth")->check(CLI::Range(1, 64));
    app.add_option("--levels", o.levels, "levels listed by saturate and closure")->check(CLI::Range(1, 200));
    app.add_option("--seed", o.seed, "seed for suite");
    app.add_option("--pairs", o.pairs, "random Minkowski pairs in suite")->check(CLI::Range(0, 10000));
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--out", o.out, "write the report to this path");
    app.add_option("--audit", o.audit, "audit I_m I_n in I_(m+n) for m+n <= N on load")->check(CLI::Range(0, 4096));

    struct Command
    {
        const char *name;
        const char *help;
        const char *inputs;
        std::size_t min_inputs;
        std::size_t max_inputs;
        Outcome (*fn)(const Options &);
    };
    const std::vector<Command> commands = {
        {"mult", "e(I) of an ideal file", "IDEAL", 1, 1, cmd_mult},
        {"mult-seq", "e(I) from the Hilbert-Samuel sequence up to --mmax", "IDEAL", 1, 1, cmd_mult_seq},
        {"mixed", "mixed multiplicities of two or more ideal files", "IDEAL...", 2, 8, cmd_mixed},
        {"family-mult", "multiplicity of a family or cluster file", "FAMILY", 1, 1,
         [](const Options &x) { return family_report_cmd(x, false); }},
        {"family-vol", "volume of a family or cluster file", "FAMILY", 1, 1,
         [](const Options &x) { return family_report_cmd(x, true); }},
        {"value", "asymptotic valuation values of a family", "FAMILY", 1, 1, cmd_value},
        {"saturate", "saturation of a family", "FAMILY", 1, 1, cmd_saturate},
        {"closure", "levelwise integral closure of a family", "FAMILY", 1, 1, cmd_closure},
        {"minkowski", "Minkowski inequalities and equality diagnostic", "F G", 2, 2, cmd_minkowski},
        {"rees", "multiplicity, saturation and closure comparison for F in G", "F G", 2, 2, cmd_rees},
        {"blowup", "intersection form and unloading for a cluster file", "CLUSTER", 1, 1, cmd_blowup},
        {"curve", "branch values of one curve family, or a pair", "F [G]", 1, 2, cmd_curve},
        {"reproduce", "rerun a registered example, or all of them", "ID", 1, 1, cmd_reproduce},
        {"suite", "property suites with --seed", "", 0, 0, cmd_suite},
    };
    std::vector<CLI::App *> subs;
    for (const auto &c : commands) {
        auto *sub = app.add_subcommand(c.name, c.help);
        if (c.max_inputs > 0) {
            auto *opt = sub->add_option("inputs", o.inputs, c.inputs);
            opt->expected(static_cast<int>(c.min_inputs), static_cast<int>(c.max_inputs));
            if (c.min_inputs > 0) {
                opt->required();
            }
        }
        subs.push_back(sub);
    }

    std::vector<std::string> argv_store{"multfam"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_store) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    const Command *chosen = nullptr;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (subs[i]->parsed()) {
            chosen = &commands[i];
        }
    }
    Outcome result;
    try {
        result = chosen->fn(o);
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    std::string text;
    if (o.format == "json") {
        text = dump(result.json);
    } else if (o.format == "csv") {
        text = result.csv;
    } else {
        text = result.table;
    }
    if (o.out.empty()) {
        out << text;
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f || !(f << text)) {
            err << "error: cannot write '" << o.out << "'\n";
            return 2;
        }
    }
    return any_failed(result.claims) ? 1 : 0;
}

} // namespace multfam
