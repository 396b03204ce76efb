#ifndef MULTFAM_BLOWUPS_HPP
#define MULTFAM_BLOWUPS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "multfam/monomial_ideal.hpp"
#include "multfam/multiplicities.hpp"
#include "multfam/rational.hpp"

namespace multfam {

/// Points p_1..p_l infinitely near the closed point of a regular local surface,
/// blown up in order. Indices are 0-based in the API.
class ProximityCluster
{
public:
    /// Pairs (i, j) with i > j, 1-based as in cluster files: p_i is proximate
    /// to p_j. Throws std::invalid_argument on a malformed relation.
    static std::shared_ptr<const ProximityCluster> from_pairs(int size, const std::vector<std::pair<int, int>> &pairs);
    /// Every point free on the exceptional curve of the previous one.
    static std::shared_ptr<const ProximityCluster> free_chain(int size);

    int size() const { return static_cast<int>(prox_.size()); }
    bool proximate(int i, int j) const { return prox_[i][j]; }
    /// The points p_i is proximate to, ascending.
    std::vector<int> proximate_to(int i) const;
    bool satellite(int i) const { return proximate_to(i).size() == 2; }
    /// Immediate predecessor in the branch; -1 for the origin.
    int parent(int i) const;
    std::vector<std::pair<int, int>> pairs() const;
    std::string str() const;

private:
    explicit ProximityCluster(std::vector<std::vector<bool>> prox) : prox_(std::move(prox)) {}
    std::vector<std::vector<bool>> prox_;
};

using ClusterPtr = std::shared_ptr<const ProximityCluster>;

/// N_ij = (E_i·E_j) for the strict transforms on the last blowup.
struct IntersectionForm
{
    std::vector<std::vector<std::int64_t>> N;

    int size() const { return static_cast<int>(N.size()); }
    /// Leading principal minors alternate in sign starting negative.
    bool negative_definite() const;
};

IntersectionForm intersection_matrix(const ProximityCluster &C);

/// K·E_i = -2 - E_i² by adjunction.
std::vector<std::int64_t> canonical_degrees(const IntersectionForm &N);

/// m_k = v_k - Σ_{p_k prox p_j} v_j and its inverse.
std::vector<std::int64_t> point_multiplicities(const ProximityCluster &C, const std::vector<std::int64_t> &v);
std::vector<std::int64_t> divisor_values(const ProximityCluster &C, const std::vector<std::int64_t> &m);

struct AntinefDivisor
{
    ClusterPtr cluster;
    std::vector<std::int64_t> v;
    std::vector<std::int64_t> m;
    /// Number of unit bumps the unloading performed.
    std::int64_t iterations = 0;
};

/// (D·E_i) <= 0 for every i.
bool is_antinef(const IntersectionForm &N, const std::vector<std::int64_t> &v);

/// Wraps v; throws std::invalid_argument unless it is antinef.
AntinefDivisor antinef_divisor(ClusterPtr C, std::vector<std::int64_t> v);

/// Minimal antinef D with v_i(D) >= ⌈t_i⌉. With a generator the violated curve
/// is drawn at random and bumped by one, otherwise curves are swept in order
/// and bumped by the least amount the inequality forces.
AntinefDivisor unload(ClusterPtr C, const std::vector<Rational> &targets, std::mt19937_64 *schedule = nullptr);

/// ℓ(R/I) via -(D·(D+K))/2, checked against Σ m_i(m_i+1)/2.
Integer divisor_colength(const AntinefDivisor &D);
/// e(I) = -(D²), checked against Σ m_i².
Integer divisor_multiplicity(const AntinefDivisor &D);

/// n ↦ unload(C, n·a): the valuation ideals {f : v_{E_i}(f) >= n a_i}.
class DivisorFamily
{
public:
    DivisorFamily(ClusterPtr cluster, std::vector<Rational> targets);

    const ClusterPtr &cluster() const { return cluster_; }
    const std::vector<Rational> &targets() const { return targets_; }
    const IntersectionForm &form() const { return form_; }
    AntinefDivisor at(std::int64_t n) const;
    Integer multiplicity(std::int64_t n) const { return divisor_multiplicity(at(n)); }
    Integer colength(std::int64_t n) const { return divisor_colength(at(n)); }
    /// Whether a itself is antinef, which makes v_i(F) = a_i and e(F) = -(a·Na).
    bool targets_antinef() const;
    std::optional<Rational> limit_multiplicity() const;
    std::string description() const;

private:
    ClusterPtr cluster_;
    std::vector<Rational> targets_;
    IntersectionForm form_;
    mutable std::mutex memo_mutex_;
    mutable std::map<std::int64_t, AntinefDivisor> memo_;
};

using DivisorFamilyPtr = std::shared_ptr<const DivisorFamily>;

DivisorFamilyPtr divisorial_family_2d(ClusterPtr C, std::vector<Rational> targets);

ConvergenceReport divisor_family_multiplicity(const DivisorFamilyPtr &F, std::int64_t nmax, std::int64_t base = 3);
/// The ambient is regular, so vol = e and the certificate carries over.
ConvergenceReport divisor_family_volume(const DivisorFamilyPtr &F, std::int64_t nmax, std::int64_t base = 3);

struct DivisorValue
{
    int index = 0;
    Rational value;
    Rational lower_bound;
    bool exact = false;
    std::optional<std::int64_t> attained_at;
    std::vector<Sample> samples;
};

/// v_{E_i}(F) = inf v_i(D_n)/n, bounded below by a_i.
DivisorValue divisor_family_value(const DivisorFamilyPtr &F, int index, std::int64_t nmax);

/// Free chain of length l with a_i = (2^i - 1)/2^(i-1).
struct ChainExample
{
    ClusterPtr cluster;
    std::vector<Rational> targets;
};

ChainExample chain_example(int l);
/// ⌈m(2^i - 1)/2^(i-1)⌉ for i = 1..l.
std::vector<std::int64_t> chain_expected_values(int l, std::int64_t m);
/// e(I_m)/m² at m = 2^(l-1): 1 + (1 - 4^(1-l))/3.
Rational chain_closed_form(int l);

/// Complete monomial ideals with their hand-derived clusters.
struct MonomialPreset
{
    std::string name;
    MonomialIdeal ideal;
    ClusterPtr cluster;
    std::vector<std::int64_t> v;
};

std::vector<MonomialPreset> monomial_presets();

/// Each new point is free on an earlier exceptional curve, or with probability
/// `satellite` the intersection of two that currently meet.
ClusterPtr random_cluster(std::mt19937_64 &rng, int size, double satellite = 0.35);

} // namespace multfam

#endif
