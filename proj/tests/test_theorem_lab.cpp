#include <doctest.h>

#include <cmath>
#include <random>

#include "multfam/catalog.hpp"
#include "multfam/theorem_lab.hpp"

using namespace multfam;

namespace {

MonomialIdeal poly_ideal(int d, std::vector<ExponentVector> g) { return MonomialIdeal(AmbientRing::polynomial(d), std::move(g)); }

bool all_pass(const std::vector<Claim> &claims)
{
    return std::all_of(claims.begin(), claims.end(), [](const Claim &c) { return c.verdict == Verdict::pass; });
}

double to_double(const Rational &q) { return q.get_d(); }

} // namespace

TEST_CASE("root sums compared exactly")
{
    CHECK(compare_root_sum(11, 1, 6, 2) == 1);
    CHECK(compare_root_sum(4, 1, 1, 2) == 0);
    CHECK(compare_root_sum(18, 2, 8, 2) == 0);
    CHECK(compare_root_sum(19, 2, 8, 2) == -1);
    CHECK(compare_root_sum(27, 1, 8, 3) == 0);
    CHECK(compare_root_sum(28, 1, 8, 3) == -1);
    CHECK(compare_root_sum(5, 0, 5, 3) == 0);
    // √2 + √3 squared is 5 + 2√6 ≈ 9.89898
    CHECK(compare_root_sum(Rational(9898, 1000), 2, 3, 2) == 1);
    CHECK(compare_root_sum(Rational(9899, 1000), 2, 3, 2) == -1);

    std::mt19937_64 rng(113);
    std::uniform_int_distribution<int> num(1, 60);
    for (int trial = 0; trial < 300; ++trial) {
        const Rational a(num(rng));
        const Rational b(num(rng));
        const Rational c(num(rng) * 3);
        const unsigned d = 2 + trial % 2;
        const double lhs = std::pow(std::pow(to_double(a), 1.0 / d) + std::pow(to_double(b), 1.0 / d), d);
        const int s = compare_root_sum(c, a, b, d);
        if (std::abs(lhs - to_double(c)) > 1e-6) {
            CHECK(s == (lhs > to_double(c) ? 1 : -1));
        }
    }
}

TEST_CASE("Minkowski report on the basic pair")
{
    auto F = adic(MonomialIdeal::maximal(AmbientRing::polynomial(2)));
    auto G = adic(poly_ideal(2, {{2, 0}, {0, 3}}));
    auto rep = minkowski_report(F, G, 16);
    CHECK(rep.certified);
    CHECK(rep.e == std::vector<Rational>{1, 2, 6});
    CHECK(rep.e_product == 11);
    CHECK(all_pass(rep.claims));
    CHECK_FALSE(rep.equality);
    CHECK(rep.claims.size() == 4);

    auto same = minkowski_report(G, G, 16);
    CHECK(same.equality);
    CHECK(same.e == std::vector<Rational>{6, 6, 6});
    for (const auto &c : same.claims) {
        CHECK(*c.computed == (c.name == "minkowski_4" ? Rational(24) : Rational(0)));
    }
    auto tw = minkowski_report(G, twist(G, Rational(3, 2)), 16);
    CHECK(tw.equality);
    CHECK(all_pass(tw.claims));
}

TEST_CASE("Minkowski inequalities on random pairs")
{
    std::mt19937_64 rng(127);
    for (const auto &p : random_family_pairs(rng, 30)) {
        auto rep = minkowski_report(p.f, p.g, 8);
        INFO(p.name);
        CHECK(all_pass(rep.claims));
        if (p.expect_equality) {
            CHECK(rep.equality);
        }
        // e(FG) is the mixed polynomial at (1,1)
        if (rep.certified) {
            Rational s = 0;
            for (int i = 0; i <= rep.d; ++i) {
                s += Rational(binomial(rep.d, i)) * rep.e[i];
            }
            CHECK(s == rep.e_product);
        }
    }
}

TEST_CASE("levelwise Minkowski values when no certificate exists")
{
    auto S = volex_family(2, SigmaSchedule::tower());
    auto T = custom_family(S->ambient(), [S](std::int64_t n) { return S->at(n); }, "copy");
    auto rep = minkowski_report(T, T, 8);
    CHECK_FALSE(rep.certified);
    CHECK(rep.level == 8);
    CHECK(all_pass(rep.claims));
}

TEST_CASE("equality diagnostics")
{
    auto F = adic(poly_ideal(2, {{2, 0}, {0, 3}}));
    auto G = twist(F, 2);
    auto diag = minkowski_equality_diagnostic(F, G, default_valuation_set(F, 8), 16);
    CHECK(diag.minkowski_equality);
    CHECK(diag.all_proportional);
    REQUIRE(diag.ratio.has_value());
    CHECK(*diag.ratio == Rational(1, 2));
    CHECK(1 / *diag.ratio == 2);
    CHECK(diag.saturations_match);
    CHECK(all_pass(diag.claims));

    auto [sf, sg] = shifted_maximal_pair(2);
    auto s = minkowski_equality_diagnostic(sf, sg, {WeightValuation({1, 1})}, 16);
    CHECK(s.minkowski_equality);
    CHECK(s.saturations_match);
    CHECK(all_pass(s.claims));

    auto m = adic(MonomialIdeal::maximal(AmbientRing::polynomial(2)));
    std::vector<WeightValuation> vals{WeightValuation({1, 1}), WeightValuation({3, 2})};
    auto n = minkowski_equality_diagnostic(m, F, vals, 16);
    CHECK_FALSE(n.minkowski_equality);
    CHECK_FALSE(n.all_proportional);
    CHECK_FALSE(n.ratio.has_value());
    CHECK(all_pass(n.claims));
}

TEST_CASE("Rees comparisons")
{
    auto I = poly_ideal(2, {{2, 0}, {0, 3}});
    auto c = rees_comparison(adic(I), closure_family(adic(I)), {}, 16);
    CHECK(c.comparable);
    CHECK(c.e_certified);
    CHECK(c.e_equal);
    CHECK(c.saturations_equal);
    CHECK(c.closures_equal);
    CHECK(all_pass(c.claims));

    auto [rf, rg] = rees_pair();
    auto r = rees_comparison(rf, rg, {WeightValuation({1})}, 32);
    CHECK(r.e_f == 1);
    CHECK(r.e_g == 1);
    CHECK(r.saturations_equal);
    CHECK_FALSE(r.closures_equal);
    CHECK(all_pass(r.claims));

    auto drop = rees_comparison(adic(poly_ideal(2, {{2, 0}, {0, 2}})),
                                adic(MonomialIdeal::maximal(AmbientRing::polynomial(2))), {}, 16);
    CHECK(drop.e_f == 4);
    CHECK(drop.e_g == 1);
    CHECK_FALSE(drop.saturations_equal);
    CHECK(all_pass(drop.claims));

    auto bad = rees_comparison(adic(MonomialIdeal::maximal(AmbientRing::polynomial(2))), adic(I), {}, 16);
    CHECK_FALSE(bad.comparable);
    REQUIRE(bad.claims.size() == 1);
    CHECK(bad.claims[0].verdict == Verdict::undecided);

    for (const auto &p : rees_corpus()) {
        INFO(p.name);
        auto rc = rees_comparison(p.f, p.g, {}, 32);
        CHECK(rc.comparable);
        CHECK(rc.e_certified);
        CHECK(all_pass(rc.claims));
        CHECK(rc.e_equal == rc.saturations_equal);
    }
}

TEST_CASE("volume against multiplicity")
{
    auto A = vol_vs_mult(adic(poly_ideal(2, {{2, 0}, {0, 3}})), 32);
    CHECK(A.gap == 0);
    CHECK_FALSE(A.strict_gap);
    CHECK(all_pass(A.claims));

    auto ex = chain_example(6);
    auto D = vol_vs_mult(divisorial_family_2d(ex.cluster, ex.targets), 64);
    CHECK(D.gap == 0);
    CHECK(D.multiplicity.estimate == chain_closed_form(6));
    CHECK(all_pass(D.claims));
}

TEST_CASE("inf property on the corpus")
{
    for (const auto &F : family_corpus()) {
        auto c = inf_property(F, 48);
        INFO(F.name);
        CHECK(c.verdict == Verdict::pass);
    }
}

TEST_CASE("registry")
{
    CHECK(registry_ids().size() == 7);
    CHECK_THROWS_AS(reproduce("nope"), std::invalid_argument);
    for (const char *id : {"reesex", "oned_branch", "kt_saturation", "sigma_slopes", "shifted_maximal"}) {
        auto r = reproduce(id);
        INFO(id);
        CHECK(r.example == id);
        CHECK_FALSE(r.claims.empty());
        CHECK(all_pass(r.claims));
    }
}

TEST_CASE("suite passes on a small seed")
{
    for (const auto &r : run_suite(7, 10)) {
        INFO(r.example);
        CHECK(r.passed());
        for (const auto &c : r.claims) {
            INFO(c.name);
            CHECK(c.verdict != Verdict::fail);
        }
    }
}
