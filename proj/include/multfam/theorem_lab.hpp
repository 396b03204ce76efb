#ifndef MULTFAM_THEOREM_LAB_HPP
#define MULTFAM_THEOREM_LAB_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "multfam/blowups.hpp"
#include "multfam/family.hpp"
#include "multfam/multiplicities.hpp"
#include "multfam/rational.hpp"
#include "multfam/valuations.hpp"

namespace multfam {

enum class Verdict { pass, fail, undecided };

std::string to_string(Verdict v);

/// One checked statement. `reference` is a short neutral description of
/// where the expectation comes from.
struct Claim
{
    std::string name;
    std::string reference;
    std::string expected;
    std::optional<Rational> computed;
    Verdict verdict = Verdict::undecided;
};

Claim make_claim(std::string name, std::string reference, std::string expected, std::optional<Rational> computed,
                 bool ok);

struct LabReport
{
    std::string example;
    std::vector<Claim> claims;

    /// No claim failed (undecided claims do not fail a report).
    bool passed() const;
    void append(const std::vector<Claim> &more);
};

struct MinkowskiReport
{
    int d = 0;
    /// e_i = e(F^[d-i], G^[i]), i = 0..d
    std::vector<Rational> e;
    Rational e_product;
    /// All values are limits fixed by construction; otherwise they are the
    /// normalized values of the single level `level`, where the inequalities
    /// hold for ideals as well.
    bool certified = false;
    std::int64_t level = 0;
    /// Equality in e(FG)^(1/d) <= e_0^(1/d) + e_d^(1/d).
    bool equality = false;
    std::vector<Claim> claims;
};

MinkowskiReport minkowski_report(const Family &F, const Family &G, std::int64_t nmax);

/// Exact comparison of c^(1/d) with a^(1/d) + b^(1/d) for a, b, c >= 0:
/// returns -1, 0, 1. Equality is decided by rationality of (a/b)^(1/d); the
/// strict cases by bracketing the roots.
int compare_root_sum(const Rational &c, const Rational &a, const Rational &b, unsigned d);

struct EqualityDiagnostic
{
    bool minkowski_equality = false;
    bool equality_certified = false;
    std::vector<WeightValuation> valuations;
    /// e(G) v(F)^d == e(F) v(G)^d per valuation
    std::vector<bool> proportional;
    bool all_proportional = false;
    /// (e(F)/e(G))^(1/d) when rational; then F̃ = G̃^(c) is tested.
    std::optional<Rational> ratio;
    bool saturations_match = false;
    std::vector<Claim> claims;
};

EqualityDiagnostic minkowski_equality_diagnostic(const Family &F, const Family &G,
                                                 const std::vector<WeightValuation> &valuations, std::int64_t nmax);

struct ReesComparison
{
    bool comparable = false;
    Rational e_f;
    Rational e_g;
    bool e_certified = false;
    bool e_equal = false;
    bool saturations_equal = false;
    bool closures_equal = false;
    std::vector<WeightValuation> valuations;
    std::vector<Claim> claims;
};

/// Expects F ⊆ G levelwise; otherwise reports "incomparable". Saturations
/// and closures are compared for n <= min(nmax, 12).
ReesComparison rees_comparison(const Family &F, const Family &G, const std::vector<WeightValuation> &valuations,
                               std::int64_t nmax);

struct VolMultReport
{
    ConvergenceReport volume;
    ConvergenceReport multiplicity;
    Rational gap;
    bool strict_gap = false;
    std::vector<Claim> claims;
};

VolMultReport vol_vs_mult(const Family &F, std::int64_t nmax);
VolMultReport vol_vs_mult(const DivisorFamilyPtr &F, std::int64_t nmax);

struct NamedFamily
{
    std::string name;
    Family family;
};

struct NamedPair
{
    std::string name;
    Family f;
    Family g;
    /// G is F or a twist of F.
    bool expect_equality = false;
};

/// Families used by the property suites.
std::vector<NamedFamily> family_corpus();
/// F ⊆ G pairs: adic vs levelwise closure, the k[t] shift pair, strict drops.
std::vector<NamedPair> rees_corpus();

/// Random m-primary monomial ideal of k[x_1..x_d]: pure powers plus a few
/// mixed generators, exponents <= maxexp.
MonomialIdeal random_monomial_ideal(std::mt19937_64 &rng, int d, std::int64_t maxexp);
/// Adic, twist and product families over random ideals, with F = G and twist
/// pairs mixed in as equality cases.
std::vector<NamedPair> random_family_pairs(std::mt19937_64 &rng, int count);

/// e(I_mn)/(mn)^d <= e(I_n)/n^d over sampled (n, m).
Claim inf_property(const NamedFamily &F, std::int64_t nmax);

std::vector<std::string> registry_ids();
/// Throws std::invalid_argument on an unknown id.
LabReport reproduce(const std::string &id);

/// Property suites with a fixed seed; `pairs` random Minkowski pairs.
std::vector<LabReport> run_suite(std::uint64_t seed, int pairs = 40);

} // namespace multfam

#endif
