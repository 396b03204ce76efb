#include <doctest.h>

#include "multfam/curves.hpp"
#include "multfam/multiplicities.hpp"

using namespace multfam;

TEST_CASE("branch ideal arithmetic")
{
    auto R2 = BranchedCurveRing::make(2);
    auto R3 = BranchedCurveRing::make(3);
    for (std::int64_t n = 2; n <= 6; ++n) {
        auto [I, J] = two_branch_example(n);
        CHECK(curve_multiplicity(I) == n + 1);
        CHECK(curve_product(I, J).orders() == std::vector<std::int64_t>{n + 1, n + 1});
    }
    CHECK(curve_multiplicity(BranchIdeal(R2, {1, 1})) == 2);
    CHECK(curve_multiplicity(BranchIdeal(R3, {3, 2, 5})) == 10);
    CHECK(curve_product(BranchIdeal(R2, {2, 3}), BranchIdeal(R2, {4, 1})).orders() ==
          std::vector<std::int64_t>{6, 4});
    BranchIdeal I(R2, {2, 3});
    CHECK(curve_product(I, BranchIdeal::unit(R2)) == I);
    CHECK_THROWS_AS(curve_multiplicity(BranchIdeal::unit(R2)), std::invalid_argument);
    CHECK_THROWS_AS(curve_product(I, BranchIdeal(R3, {1, 1, 1})), std::invalid_argument);
    CHECK_THROWS_AS(BranchIdeal(R2, {1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(BranchIdeal(R2, {1}), std::invalid_argument);
}

TEST_CASE("branch contributions agree with one-variable monomial multiplicities")
{
    auto R = BranchedCurveRing::make(3);
    BranchIdeal I(R, {3, 2, 5});
    Rational total = 0;
    for (auto o : I.orders()) {
        total += multiplicity_exact(MonomialIdeal(AmbientRing::polynomial(1), {{o}}));
    }
    CHECK(total == curve_multiplicity(I));
}

TEST_CASE("two-branch families break proportionality but keep Minkowski equality")
{
    for (std::int64_t n = 2; n <= 6; ++n) {
        auto [I, J] = two_branch_example(n);
        auto rep = curve_family_report(curve_adic(I), curve_adic(J), 16);
        CHECK(rep.f.multiplicity == n + 1);
        CHECK(rep.g.multiplicity == n + 1);
        CHECK(rep.minkowski_equality);
        CHECK_FALSE(rep.proportional[0]);
        CHECK_FALSE(rep.proportional[1]);
        CHECK(rep.f.values[0] == n);
        CHECK(rep.g.values[0] == 1);
    }
}

TEST_CASE("proportional curve families")
{
    auto R1 = BranchedCurveRing::make(1);
    auto F = curve_adic(BranchIdeal(R1, {3}));
    CHECK(curve_family_report(F, F, 8).all_proportional);
    auto R2 = BranchedCurveRing::make(2);
    auto rep = curve_family_report(curve_adic(BranchIdeal(R2, {2, 2})), curve_adic(BranchIdeal(R2, {1, 1})), 8);
    CHECK(rep.all_proportional);
    CHECK(rep.f.multiplicity == 2 * rep.g.multiplicity);
}

TEST_CASE("curve families: twists, tables and the audit")
{
    auto R2 = BranchedCurveRing::make(2);
    auto F = curve_adic(BranchIdeal(R2, {2, 1}));
    auto T = curve_twist(F, Rational(3, 2));
    CHECK(T->at(3).orders() == std::vector<std::int64_t>{10, 5});
    auto lim = curve_limits(T, 8);
    CHECK(lim.exact);
    CHECK(lim.multiplicity == Rational(9, 2));
    CHECK(curve_audit(T, 20));
    std::vector<BranchIdeal> levels;
    for (std::int64_t n = 1; n <= 12; ++n) {
        levels.emplace_back(R2, std::vector<std::int64_t>{n % 2 ? n + 2 : n + 1, n});
    }
    auto tab = curve_table(R2, levels);
    CHECK(curve_audit(tab, 12));
    auto tl = curve_limits(tab, 12);
    CHECK_FALSE(tl.exact);
    CHECK(tl.values[1] == 1);
    CHECK(curve_family_report(F, tab, 12).minkowski_equality);
    std::vector<BranchIdeal> bad{BranchIdeal(R2, {1, 1}), BranchIdeal(R2, {3, 3})};
    CHECK_FALSE(curve_audit(curve_table(R2, bad), 2));
}
