#include <doctest.h>

#include <random>

#include "multfam/catalog.hpp"
#include "multfam/newton.hpp"
#include "multfam/valuations.hpp"
#include "oracles.hpp"

using namespace multfam;

namespace {

MonomialIdeal poly_ideal(int d, std::vector<ExponentVector> g) { return MonomialIdeal(AmbientRing::polynomial(d), std::move(g)); }

MonomialIdeal t_power(std::int64_t k) { return MonomialIdeal(AmbientRing::polynomial(1), {{k}}); }

} // namespace

TEST_CASE("weight valuations")
{
    CHECK_THROWS_AS(WeightValuation({2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(WeightValuation({1, 0}), std::invalid_argument);
    CHECK(value_on_ideal(WeightValuation({1, 1}), poly_ideal(2, {{2, 0}, {0, 3}})) == 2);
    CHECK(value_on_ideal(WeightValuation({3, 2}), poly_ideal(2, {{2, 0}, {0, 3}})) == 6);
    CHECK(value_on_ideal(WeightValuation({1, 2}), poly_ideal(2, {{3, 0}, {1, 1}, {0, 2}})) == 3);
    CHECK_THROWS(value_on_ideal(WeightValuation({1, 1}), MonomialIdeal::zero(AmbientRing::polynomial(2))));
}

TEST_CASE("asymptotic values")
{
    auto A = adic(poly_ideal(2, {{2, 0}, {0, 3}}));
    auto va = family_value(WeightValuation({3, 2}), A, 16);
    CHECK(va.value == 6);
    CHECK(va.exact);
    CHECK(va.attained_at == 1);

    auto S = sigma_family(SigmaSchedule::builtin());
    auto vs = family_value(WeightValuation({1}), S, 32);
    CHECK(vs.value == Rational(1, 2));
    CHECK(vs.exact);
    REQUIRE(vs.attained_at.has_value());
    CHECK(*vs.attained_at % 2 == 0);

    auto P = parity_family();
    auto vp = family_value(WeightValuation({1}), P, 64);
    CHECK(vp.value == 1);
    CHECK(vp.exact);
    CHECK(vp.bound_gap == 0);
    CHECK_FALSE(vp.attained_at.has_value());
}

TEST_CASE("values of valuative families come from the polyhedron")
{
    auto F = valuative(AmbientRing::polynomial(2), {{1, 1}, {1, 2}}, {Rational(2), Rational(3)});
    auto v = family_value(WeightValuation({2, 1}), F, 32);
    // vertices (1,1), (3,0), (0,2): min of 2a+b is 2
    CHECK(v.value == 2);
    CHECK(v.exact);
    auto u = family_value(WeightValuation({1, 3}), F, 32);
    CHECK(u.value == 3);
    CHECK(u.exact);
}

TEST_CASE("values scale under twists")
{
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 10; ++trial) {
        auto I = poly_ideal(2, oracle::random_m_primary(rng, 2, 5, 2));
        auto F = adic(I);
        for (auto w : rees_weights(I)) {
            WeightValuation v(w.first);
            auto base = family_value(v, F, 16);
            for (auto c : {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)}) {
                auto tv = family_value(v, twist(F, c), 32);
                CHECK(tv.exact);
                CHECK(tv.value == c * base.value);
            }
        }
    }
}

TEST_CASE("values are subadditive along sampled pairs")
{
    auto F = product(twist(adic(poly_ideal(2, {{1, 0}, {0, 1}})), Rational(3, 2)), adic(poly_ideal(2, {{2, 0}, {0, 3}})));
    WeightValuation v({3, 2});
    for (std::int64_t m = 1; m <= 8; ++m) {
        for (std::int64_t n = 1; n <= 8; ++n) {
            CHECK(value_on_ideal(v, F->at(m + n)) <= value_on_ideal(v, F->at(m)) + value_on_ideal(v, F->at(n)));
        }
    }
}

TEST_CASE("closure family on the parity example")
{
    auto P = parity_family();
    auto c = family_integral_closure(P, 3, 2);
    CHECK(c.ideal == t_power(4));
    for (std::int64_t n = 1; n <= 20; ++n) {
        auto full = family_integral_closure(P, n, 6);
        CHECK(full.ideal == t_power(n + 1));
    }
    auto S = sigma_family(SigmaSchedule::builtin());
    CHECK(family_integral_closure(S, 1, 2).ideal == t_power(1));
    auto A = adic(poly_ideal(2, {{2, 0}, {0, 3}}));
    for (std::int64_t n = 1; n <= 4; ++n) {
        CHECK(family_integral_closure(A, n, 1).ideal == integral_closure(A->at(n)));
        CHECK(family_integral_closure(A, n, 3).ideal == integral_closure(A->at(n)));
    }
}

TEST_CASE("closure through the exact shape matches the levelwise hulls")
{
    std::mt19937_64 rng(223);
    for (int trial = 0; trial < 12; ++trial) {
        const int d = 2 + trial % 2;
        auto I = MonomialIdeal(AmbientRing::polynomial(d), oracle::random_m_primary(rng, d, 4, 1 + trial % 3));
        auto J = MonomialIdeal(AmbientRing::polynomial(d), oracle::random_m_primary(rng, d, 3, 1));
        for (const auto &F : {adic(I), product(adic(I), adic(J)), twist(adic(J), 2), closure_family(adic(I))}) {
            REQUIRE(F->asymptotics().exact_shape);
            // same levels, no structural knowledge
            auto plain = custom_family(F->ambient(), [F](std::int64_t n) { return F->at(n); }, "plain");
            for (std::int64_t n = 1; n <= 2; ++n) {
                INFO(F->description(), " n=", n);
                const auto fast = family_integral_closure(F, n, 3);
                const auto slow = family_integral_closure(plain, n, 3);
                CHECK(fast.ideal == slow.ideal);
                CHECK(slow.stable);
            }
        }
    }
    CHECK_FALSE(twist(adic(poly_ideal(2, {{1, 0}, {0, 1}})), Rational(3, 2))->asymptotics().exact_shape);
    CHECK_FALSE(shift(adic(poly_ideal(2, {{1, 0}, {0, 1}})), 1)->asymptotics().exact_shape);
}

TEST_CASE("saturation examples")
{
    auto P = parity_family();
    std::vector<WeightValuation> ord{WeightValuation({1})};
    for (std::int64_t n = 1; n <= 20; ++n) {
        auto s = saturate(P, ord, 64, n);
        CHECK(s.ideal == t_power(n));
        CHECK_FALSE(s.approximate);
    }

    std::vector<ExponentVector> W{{1, 1}, {1, 2}};
    auto F = valuative(AmbientRing::polynomial(2), W, {Rational(2), Rational(3)});
    std::vector<WeightValuation> wv{WeightValuation({1, 1}), WeightValuation({1, 2})};
    auto sat = saturation(F, wv, 16);
    CHECK_FALSE(sat.approximate);
    for (std::int64_t n = 1; n <= 10; ++n) {
        CHECK(sat.level(F->ambient(), n) == F->at(n));
    }

    auto A = adic(poly_ideal(2, {{2, 0}, {0, 3}}));
    auto sa = saturation(A, {WeightValuation({3, 2})}, 8);
    for (std::int64_t n = 1; n <= 6; ++n) {
        CHECK(sa.level(A->ambient(), n) == integral_closure(A->at(n)));
    }
}

TEST_CASE("default valuation sets")
{
    auto A = adic(poly_ideal(2, {{2, 0}, {0, 3}}));
    auto a = default_valuation_set(A, 8);
    REQUIRE(a.size() == 1);
    CHECK(a[0].weights() == ExponentVector{3, 2});
    auto m = adic(poly_ideal(2, {{1, 0}, {0, 1}}));
    CHECK(default_valuation_set(m, 8).at(0).weights() == ExponentVector{1, 1});
    auto p = default_valuation_set(product(m, A), 8);
    REQUIRE(p.size() == 2);
    CHECK(p[0].weights() == ExponentVector{1, 1});
    CHECK(p[1].weights() == ExponentVector{3, 2});
}

TEST_CASE("saturations are integrally closed and idempotent")
{
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 8; ++trial) {
        auto I = poly_ideal(2, oracle::random_m_primary(rng, 2, 5, 2));
        auto F = twist(adic(I), Rational(1 + trial % 3, 2));
        auto vals = default_valuation_set(F, 8);
        auto sat = saturation(F, vals, 16);
        REQUIRE_FALSE(sat.approximate);
        auto again_family = custom_family(
            F->ambient(), [sat, R = F->ambient()](std::int64_t n) { return sat.level(R, n); }, "saturated");
        auto again = saturation(again_family, vals, 16);
        for (std::int64_t n = 1; n <= 6; ++n) {
            auto level = sat.level(F->ambient(), n);
            CHECK(integral_closure(level) == level);
            CHECK(again.level(F->ambient(), n) == level);
        }
    }
}

TEST_CASE("containment chain up to the saturation")
{
    std::vector<Family> corpus{parity_family(), adic(poly_ideal(2, {{2, 0}, {0, 3}})),
                               twist(adic(poly_ideal(2, {{1, 0}, {0, 1}})), Rational(3, 2)),
                               sigma_family(SigmaSchedule::builtin())};
    for (const auto &F : corpus) {
        auto sat = saturation(F, default_valuation_set(F, 16), 32);
        for (std::int64_t n = 1; n <= 12; ++n) {
            auto In = F->at(n);
            auto closure = integral_closure(In);
            auto star = family_integral_closure(F, n, 6).ideal;
            auto tilde = sat.level(F->ambient(), n);
            CHECK(In.subset_of(closure));
            CHECK(closure.subset_of(star));
            CHECK(star.subset_of(tilde));
        }
    }
}
