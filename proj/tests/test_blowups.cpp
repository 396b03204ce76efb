#include <doctest.h>

#include <random>

#include "multfam/blowups.hpp"
#include "multfam/multiplicities.hpp"

using namespace multfam;

namespace {

using Matrix = std::vector<std::vector<std::int64_t>>;

// Geometric rule: blowing up p_k subtracts 1 from E_j² for every curve through
// it, and separates the two curves of a satellite.
Matrix blowup_oracle(const ProximityCluster &C)
{
    const int l = C.size();
    Matrix N(l, std::vector<std::int64_t>(l, 0));
    for (int k = 0; k < l; ++k) {
        N[k][k] = -1;
        const auto S = C.proximate_to(k);
        for (int j : S) {
            N[j][j] -= 1;
            N[j][k] = N[k][j] = 1;
        }
        if (S.size() == 2) {
            N[S[0]][S[1]] = N[S[1]][S[0]] = 0;
        }
    }
    return N;
}

bool antinef_oracle(const Matrix &N, const std::vector<std::int64_t> &v)
{
    for (std::size_t i = 0; i < N.size(); ++i) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < N.size(); ++j) {
            s += N[i][j] * v[j];
        }
        if (s > 0) {
            return false;
        }
    }
    return true;
}

// Componentwise minimum of every antinef vector in [lo, lo + span]^l.
std::vector<std::int64_t> minimal_antinef_oracle(const Matrix &N, const std::vector<std::int64_t> &lo, std::int64_t span)
{
    const auto l = lo.size();
    std::vector<std::int64_t> best(l, -1);
    std::vector<std::int64_t> v(lo);
    for (;;) {
        if (antinef_oracle(N, v)) {
            for (std::size_t i = 0; i < l; ++i) {
                best[i] = best[i] < 0 ? v[i] : std::min(best[i], v[i]);
            }
        }
        std::size_t i = 0;
        while (i < l && v[i] == lo[i] + span) {
            v[i] = lo[i];
            ++i;
        }
        if (i == l) {
            break;
        }
        ++v[i];
    }
    return best;
}

std::int64_t chain_ceiling(std::int64_t m, int i)
{
    const std::int64_t p = std::int64_t{1} << (i - 1);
    return (m * (2 * p - 1) + p - 1) / p;
}

std::vector<Rational> random_targets(std::mt19937_64 &rng, int l, int maxnum)
{
    std::uniform_int_distribution<int> num(0, maxnum);
    std::uniform_int_distribution<int> den(1, 4);
    std::vector<Rational> t;
    for (int i = 0; i < l; ++i) {
        t.push_back(make_rational(num(rng), den(rng)));
    }
    return t;
}

} // namespace

TEST_CASE("intersection matrices")
{
    auto chain = intersection_matrix(*ProximityCluster::free_chain(3));
    CHECK(chain.N == Matrix{{-2, 1, 0}, {1, -2, 1}, {0, 1, -1}});
    CHECK(intersection_matrix(*ProximityCluster::free_chain(1)).N == Matrix{{-1}});
    auto sat = intersection_matrix(*ProximityCluster::from_pairs(3, {{2, 1}, {3, 2}, {3, 1}}));
    CHECK(sat.N == Matrix{{-3, 0, 1}, {0, -2, 1}, {1, 1, -1}});
    CHECK(sat.negative_definite());
    CHECK(canonical_degrees(sat) == std::vector<std::int64_t>{1, 0, -1});

    CHECK_THROWS_AS(ProximityCluster::from_pairs(2, {}), std::invalid_argument);
    CHECK_THROWS_AS(ProximityCluster::from_pairs(2, {{1, 2}}), std::invalid_argument);
    // p3 cannot lie on E1 and E2 once p2 has been blown up off E1... here E1, E2 meet, but
    // a fourth point on E1 ∩ E2 is impossible after p3 separated them
    CHECK_THROWS_AS(ProximityCluster::from_pairs(4, {{2, 1}, {3, 2}, {3, 1}, {4, 2}, {4, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(ProximityCluster::from_pairs(4, {{2, 1}, {3, 1}, {4, 3}, {4, 2}}), std::invalid_argument);
}

TEST_CASE("random clusters: formula matches blowing up, form is negative definite")
{
    std::mt19937_64 rng(97);
    int satellites = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int l = 1 + trial % 12;
        auto C = random_cluster(rng, l);
        const auto F = intersection_matrix(*C);
        CHECK(F.N == blowup_oracle(*C));
        CHECK(F.negative_definite());
        for (int i = 0; i < l; ++i) {
            satellites += C->satellite(i) ? 1 : 0;
            if (i > 0) {
                CHECK(C->proximate(i, C->parent(i)));
            }
        }
        auto again = ProximityCluster::from_pairs(l, C->pairs());
        CHECK(again->pairs() == C->pairs());
    }
    CHECK(satellites > 20);
}

TEST_CASE("point multiplicities and values determine each other")
{
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        auto C = random_cluster(rng, 1 + trial % 9);
        auto D = unload(C, random_targets(rng, C->size(), 12));
        CHECK(divisor_values(*C, D.m) == D.v);
        CHECK(point_multiplicities(*C, D.v) == D.m);
        // antinef ⟺ proximity inequalities
        for (int i = 0; i < C->size(); ++i) {
            std::int64_t s = 0;
            for (int j = i + 1; j < C->size(); ++j) {
                s += C->proximate(j, i) ? D.m[j] : 0;
            }
            CHECK(D.m[i] >= s);
        }
    }
}

TEST_CASE("unloading examples")
{
    auto one = unload(ProximityCluster::free_chain(1), {Rational(1)});
    CHECK(one.v == std::vector<std::int64_t>{1});
    auto chain = unload(ProximityCluster::free_chain(3), {Rational(0), Rational(0), Rational(1)});
    CHECK(chain.v == std::vector<std::int64_t>{1, 1, 1});
    CHECK(chain.v == minimal_antinef_oracle(blowup_oracle(*chain.cluster), {0, 0, 1}, 4));
    CHECK(chain.iterations == 2);

    auto ex = chain_example(5);
    std::vector<Rational> t;
    for (const auto &a : ex.targets) {
        t.emplace_back(a * 4);
    }
    CHECK(unload(ex.cluster, t).v == std::vector<std::int64_t>{4, 6, 7, 8, 8});
    CHECK_THROWS_AS(unload(ex.cluster, {Rational(1)}), std::invalid_argument);
    CHECK_THROWS_AS(unload(ProximityCluster::free_chain(1), {Rational(-1)}), std::invalid_argument);
}

TEST_CASE("unloading is the minimal antinef majorant")
{
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 60; ++trial) {
        auto C = random_cluster(rng, 1 + trial % 4);
        auto t = random_targets(rng, C->size(), 6);
        auto D = unload(C, t);
        std::vector<std::int64_t> lo;
        for (const auto &x : t) {
            lo.push_back(ceil_i64(x));
        }
        const auto N = blowup_oracle(*C);
        std::int64_t span = 0;
        for (std::size_t i = 0; i < lo.size(); ++i) {
            span = std::max(span, D.v[i] - lo[i] + 1);
        }
        CHECK(antinef_oracle(N, D.v));
        CHECK(D.v == minimal_antinef_oracle(N, lo, span));
    }
}

TEST_CASE("unloading is confluent")
{
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 100; ++trial) {
        auto C = random_cluster(rng, 1 + trial % 10);
        auto t = random_targets(rng, C->size(), 20);
        auto swept = unload(C, t);
        for (int k = 0; k < 3; ++k) {
            auto shuffled = unload(C, t, &rng);
            CHECK(shuffled.v == swept.v);
        }
    }
}

TEST_CASE("lengths and multiplicities of antinef divisors")
{
    auto point = ProximityCluster::free_chain(1);
    CHECK(divisor_colength(antinef_divisor(point, {1})) == 1);
    CHECK(divisor_colength(antinef_divisor(point, {2})) == 3);
    CHECK(divisor_multiplicity(antinef_divisor(point, {1})) == 1);
    CHECK(divisor_multiplicity(antinef_divisor(point, {2})) == 4);

    auto ex = chain_example(4);
    std::vector<Rational> t;
    for (const auto &a : ex.targets) {
        t.emplace_back(a * 2);
    }
    auto D = unload(ex.cluster, t);
    CHECK(D.v == std::vector<std::int64_t>{2, 3, 4, 4});
    CHECK(D.m == std::vector<std::int64_t>{2, 1, 1, 0});
    CHECK(divisor_colength(D) == 5);
    CHECK_THROWS_AS(antinef_divisor(ex.cluster, {1, 3, 0, 0}), std::invalid_argument);

    std::mt19937_64 rng(109);
    for (int trial = 0; trial < 100; ++trial) {
        auto C = random_cluster(rng, 1 + trial % 10);
        auto R = unload(C, random_targets(rng, C->size(), 15));
        // both formulas are evaluated and compared inside
        CHECK(divisor_colength(R) >= 0);
        CHECK(divisor_multiplicity(R) >= 0);
    }
}

TEST_CASE("monomial presets agree with the polyhedral multiplicity")
{
    auto presets = monomial_presets();
    REQUIRE(presets.size() == 3);
    const std::vector<std::int64_t> lengths{1, 3, 5};
    for (std::size_t i = 0; i < presets.size(); ++i) {
        const auto &p = presets[i];
        auto D = antinef_divisor(p.cluster, p.v);
        CHECK(Rational(divisor_multiplicity(D)) == multiplicity_exact(p.ideal));
        CHECK(divisor_colength(D) == colength(p.ideal));
        CHECK(divisor_colength(D) == lengths[i]);
    }
    CHECK(divisor_multiplicity(antinef_divisor(presets[2].cluster, presets[2].v)) == 6);
}

TEST_CASE("chain example reproduces the ceiling formula")
{
    CHECK(chain_example(1).targets == std::vector<Rational>{Rational(1)});
    CHECK(chain_example(3).targets == std::vector<Rational>{Rational(1), Rational(3, 2), Rational(7, 4)});
    for (int l = 1; l <= 12; ++l) {
        auto ex = chain_example(l);
        auto F = divisorial_family_2d(ex.cluster, ex.targets);
        const std::int64_t top = std::min<std::int64_t>(64, (std::int64_t{1} << (l - 1)) - 1);
        for (std::int64_t m = 1; m <= top; ++m) {
            auto D = F->at(m);
            for (int i = 1; i <= l; ++i) {
                CHECK(D.v[i - 1] == chain_ceiling(m, i));
            }
            CHECK(D.v == chain_expected_values(l, m));
        }
    }
}

TEST_CASE("chain family multiplicity and volume")
{
    for (int l : {3, 6, 9}) {
        auto ex = chain_example(l);
        auto F = divisorial_family_2d(ex.cluster, ex.targets);
        const std::int64_t top = std::int64_t{1} << (l - 1);
        // closed form from m_i = v_i - v_{i-1}
        auto v = chain_expected_values(l, top);
        Integer sum = 0;
        std::int64_t prev = 0;
        for (auto x : v) {
            sum += Integer(x - prev) * (x - prev);
            prev = x;
        }
        CHECK(make_rational(sum, Integer(top) * top) == chain_closed_form(l));
        CHECK(Rational(F->multiplicity(top)) / (top * top) == chain_closed_form(l));
        REQUIRE(F->limit_multiplicity().has_value());
        CHECK(*F->limit_multiplicity() == chain_closed_form(l));
    }
    auto ex = chain_example(12);
    auto F = divisorial_family_2d(ex.cluster, ex.targets);
    auto rep = divisor_family_multiplicity(F, 2048);
    CHECK(rep.certificate == Certificate::exact);
    CHECK(abs(rep.estimate - Rational(4, 3)) <= Rational(1, 100));
    CHECK(abs(rep.window_inf - Rational(4, 3)) <= Rational(2, 100));
    auto vol = divisor_family_volume(F, 2048);
    CHECK(vol.estimate == rep.estimate);
    CHECK(abs(vol.window_inf - Rational(4, 3)) <= Rational(2, 100));

    auto point = divisorial_family_2d(ProximityCluster::free_chain(1), {Rational(1)});
    CHECK(divisor_family_multiplicity(point, 64).estimate == 1);
    CHECK(point->multiplicity(5) == 25);
}

TEST_CASE("divisor family values equal the targets")
{
    auto ex = chain_example(8);
    auto F = divisorial_family_2d(ex.cluster, ex.targets);
    for (int i = 0; i < 8; ++i) {
        auto val = divisor_family_value(F, i, 256);
        CHECK(val.exact);
        CHECK(val.value == ex.targets[i]);
        REQUIRE(val.attained_at.has_value());
        for (const auto &s : val.samples) {
            CHECK(s.value >= ex.targets[i]);
        }
    }
    CHECK_THROWS_AS(divisor_family_value(F, 8, 16), std::out_of_range);
}
