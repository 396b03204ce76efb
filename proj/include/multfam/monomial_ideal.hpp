#ifndef MULTFAM_MONOMIAL_IDEAL_HPP
#define MULTFAM_MONOMIAL_IDEAL_HPP

#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "multfam/rational.hpp"

namespace multfam {

/// Exponents of x_1..x_d of a monomial.
using ExponentVector = std::vector<std::int64_t>;

/// Componentwise a <= b, i.e. x^a divides x^b.
bool divides(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

/// Minimal elements of `vs` under divisibility, sorted lexicographically.
std::vector<ExponentVector> antichain(std::vector<ExponentVector> vs);

/// k[x_1..x_n] / Q with Q monomial (possibly absent), localized at the
/// irrelevant ideal.
class AmbientRing
{
public:
    static std::shared_ptr<const AmbientRing> polynomial(int num_vars);
    static std::shared_ptr<const AmbientRing> quotient(int num_vars, std::vector<ExponentVector> q);

    int num_vars() const { return num_vars_; }
    /// Krull dimension.
    int dim() const { return dim_; }
    bool has_quotient() const { return !quotient_.empty(); }
    const std::vector<ExponentVector> &quotient_gens() const { return quotient_; }
    bool in_quotient(std::span<const std::int64_t> m) const;

    bool operator==(const AmbientRing &other) const
    {
        return num_vars_ == other.num_vars_ && quotient_ == other.quotient_;
    }

private:
    AmbientRing(int n, std::vector<ExponentVector> q);

    int num_vars_;
    int dim_;
    std::vector<ExponentVector> quotient_;
};

using AmbientPtr = std::shared_ptr<const AmbientRing>;

bool same_ambient(const AmbientPtr &a, const AmbientPtr &b);

class MonomialIdeal
{
public:
    /// Normalizing constructor; see normalize().
    MonomialIdeal(AmbientPtr ambient, std::vector<ExponentVector> gens);

    static MonomialIdeal unit(AmbientPtr ambient);
    static MonomialIdeal zero(AmbientPtr ambient);
    /// (x_1, ..., x_n)
    static MonomialIdeal maximal(AmbientPtr ambient);

    const std::vector<ExponentVector> &gens() const { return gens_; }
    const AmbientPtr &ambient() const { return ambient_; }
    int num_vars() const { return ambient_->num_vars(); }

    bool is_zero() const { return gens_.empty(); }
    bool is_unit() const;

    bool contains(std::span<const std::int64_t> m) const;
    /// this ⊆ other (same ambient)
    bool subset_of(const MonomialIdeal &other) const;

    bool operator==(const MonomialIdeal &other) const
    {
        return gens_ == other.gens_ && same_ambient(ambient_, other.ambient_);
    }

    std::string str() const;

private:
    AmbientPtr ambient_;
    std::vector<ExponentVector> gens_;
};

std::ostream &operator<<(std::ostream &os, const MonomialIdeal &I);

MonomialIdeal normalize(std::vector<ExponentVector> gens, AmbientPtr ambient);
MonomialIdeal ideal_product(const MonomialIdeal &I, const MonomialIdeal &J);
MonomialIdeal ideal_power(const MonomialIdeal &I, std::int64_t n);
MonomialIdeal ideal_sum(const MonomialIdeal &I, const MonomialIdeal &J);
bool contains(const MonomialIdeal &I, std::span<const std::int64_t> m);
bool is_m_primary(const MonomialIdeal &I);

/// ℓ(R/I); throws std::domain_error when I is not m-primary.
Integer colength(const MonomialIdeal &I);

/// Standard-monomial count of a monomial ideal of k[x_1..x_d] given by
/// generators, by slicing on the last variable. Throws std::domain_error if
/// infinite.
Integer staircase_count(std::vector<ExponentVector> gens, int d);

struct CoordinatePrime
{
    std::vector<int> vars; ///< sorted variable indices; empty = zero prime
    int codim() const { return static_cast<int>(vars.size()); }
    bool operator==(const CoordinatePrime &) const = default;
};

struct MinimalPrime
{
    CoordinatePrime prime;
    Integer localized_length; ///< ℓ(R_P / Q_P)
    int dim;                  ///< dim R/P
};

/// Minimal primes of k[x]/Q for a proper monomial ideal Q of the polynomial
/// ring with n variables. Throws std::invalid_argument on the unit ideal.
std::vector<MinimalPrime> minimal_primes(const std::vector<ExponentVector> &q, int n);
std::vector<MinimalPrime> minimal_primes(const MonomialIdeal &q);

/// Image of I in k[x_j : j ∉ P] = k[x]/P (generators touching P vanish).
MonomialIdeal restrict_mod_prime(const MonomialIdeal &I, const CoordinatePrime &p);

} // namespace multfam

#endif
