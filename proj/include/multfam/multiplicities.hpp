#ifndef MULTFAM_MULTIPLICITIES_HPP
#define MULTFAM_MULTIPLICITIES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multfam/family.hpp"
#include "multfam/monomial_ideal.hpp"
#include "multfam/rational.hpp"

namespace multfam {

enum class Certificate { exact, extrapolated };

std::string to_string(Certificate c);

struct Sample
{
    std::int64_t n = 0;
    Rational value;
};

/// Sampled approach to a limit. `estimate` is exact only when certified by
/// construction or by a stabilized finite difference; otherwise it lies in
/// [window_inf, window_sup], the range of the samples with n >= sqrt(nmax).
struct ConvergenceReport
{
    std::vector<Sample> samples;
    Rational window_sup;
    Rational window_inf;
    Rational estimate;
    /// e(I_mn)/(mn)^d <= e(I_n)/n^d on every sampled pair (n, mn).
    bool monotone_along_multiples = true;
    Certificate certificate = Certificate::extrapolated;
    std::int64_t checked_pairs = 0;
    /// Named pass/fail checks made while building the report.
    std::vector<std::pair<std::string, bool>> checks;
    std::string note;
};

/// Degree-d coefficients e(I_1^[d_1], ..., I_r^[d_r]), indexed by (d_1..d_r).
struct MixedMultiplicities
{
    int degree = 0;
    std::map<std::vector<int>, Rational> coefficients;

    /// Σ d!/(d_1!..d_r!) e_α n^α
    Rational evaluate(const std::vector<Rational> &n) const;
    const Rational &at(const std::vector<int> &alpha) const;
};

/// {1..8} ∪ {2^k, 3·2^k} ∪ {base, 2·base, ..., 8·base}, capped at nmax.
std::vector<std::int64_t> sampling_ladder(std::int64_t nmax, std::int64_t base = 3);

/// d!·covolume(NP(I)); polynomial ambient only.
Rational multiplicity_exact(const MonomialIdeal &I);

/// e(I) in any monomial quotient via associativity over the top-dimensional
/// minimal primes of the ambient.
Rational multiplicity(const MonomialIdeal &I);

/// Fits ℓ(R/I^m), m <= mmax, by its d-th finite differences.
ConvergenceReport multiplicity_sequence(const MonomialIdeal &I, std::int64_t mmax);

/// e(I; ⊕ R/Q_j) with d = dim M; an empty summand stands for R itself.
Rational multiplicity_module(const MonomialIdeal &I, const std::vector<std::vector<ExponentVector>> &summands);

/// True when dim N(R) < dim R for the (complete) monomial ambient, so that
/// vol = e for every graded family.
bool volume_equals_multiplicity(const AmbientRing &R);

/// e(F) when it is fixed by the family's construction.
std::optional<Rational> certified_multiplicity(const Family &F);

/// e of the limit polyhedron Σ c_j NP(B_j).
Rational shape_multiplicity(const AdicShape &shape);

/// Shared estimators over precomputed samples e(I_n)/n^d (resp. d!ℓ/n^d), so
/// that families not backed by monomial ideals reuse the same reporting.
ConvergenceReport multiplicity_report(std::vector<Sample> samples, std::int64_t nmax,
                                      const std::optional<Rational> &certified);
ConvergenceReport volume_report(std::vector<Sample> samples, std::int64_t nmax, const std::optional<Rational> &certified);

ConvergenceReport family_multiplicity(const Family &F, std::int64_t nmax, std::int64_t base = 3);
ConvergenceReport family_volume(const Family &F, std::int64_t nmax, std::int64_t base = 3);

MixedMultiplicities mixed_multiplicities(const std::vector<MonomialIdeal> &ideals);

struct FamilyMixedResult
{
    MixedMultiplicities mixed;
    /// Same keys as mixed.coefficients.
    std::map<std::vector<int>, ConvergenceReport> reports;
    /// max |lim e(∏ F_i,{m n_i})/m^d - P(n)| over small n, at the largest sampled m.
    Rational polynomial_deviation;
};

/// Mixed multiplicities of families whose limits are fixed by their shapes.
std::optional<MixedMultiplicities> certified_mixed(const std::vector<Family> &families);

FamilyMixedResult family_mixed_multiplicities(const std::vector<Family> &families, std::int64_t nmax);

} // namespace multfam

#endif
