#ifndef MULTFAM_FAMILY_HPP
#define MULTFAM_FAMILY_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "multfam/monomial_ideal.hpp"
#include "multfam/rational.hpp"

namespace multfam {

enum class FamilyKind { adic, twist, product, valuative, table, sigma, volex, shift, closure, custom };

std::string to_string(FamilyKind k);

class GradedFamily;
using Family = std::shared_ptr<const GradedFamily>;

/// Families whose levels agree asymptotically with n ↦ ∏ B_j^{c_j n}.
/// Limits (multiplicity, valuation values, mixed multiplicities) of such a
/// family are those of the real Newton polyhedron Σ c_j NP(B_j).
struct AdicShape
{
    std::vector<MonomialIdeal> bases;
    std::vector<Rational> scales;
};

/// What a constructor knows about the limits of its family.
struct Asymptotics
{
    std::optional<AdicShape> shape;
    /// NP(I_n) = n·NP(∏ B_j^{c_j}) at every level, with integral scales.
    bool exact_shape = false;
    /// e(F) when fixed by construction.
    std::optional<Rational> multiplicity;
    /// Rigorous lower bound on v_w(F) for a positive weight vector w.
    std::function<Rational(const ExponentVector &)> value_lower;
    /// Rigorous upper bound on v_w(F) (may be absent).
    std::function<Rational(const ExponentVector &)> value_upper;
    /// sub ⊆ F ⊆ super levelwise (either may be null).
    Family sub;
    Family super;
};

/// n ↦ I_n with I_0 = R, I_n m-primary for n > 0 and I_m I_n ⊆ I_{m+n}.
/// Levels are memoized; evaluation is safe from several threads.
class GradedFamily
{
public:
    using Evaluator = std::function<MonomialIdeal(std::int64_t)>;

    GradedFamily(AmbientPtr ambient, FamilyKind kind, Evaluator eval, std::string description,
                 Asymptotics asymptotics = {});

    /// I_n; n = 0 is the unit ideal. Throws std::out_of_range for n < 0.
    MonomialIdeal at(std::int64_t n) const;

    const AmbientPtr &ambient() const { return ambient_; }
    int dim() const { return ambient_->dim(); }
    FamilyKind kind() const { return kind_; }
    const std::string &description() const { return description_; }
    const Asymptotics &asymptotics() const { return asym_; }

private:
    AmbientPtr ambient_;
    FamilyKind kind_;
    Evaluator eval_;
    std::string description_;
    Asymptotics asym_;
    mutable std::mutex memo_mutex_;
    mutable std::map<std::int64_t, MonomialIdeal> memo_;
};

/// σ for the sigma and volume-gap families.
class SigmaSchedule
{
public:
    /// σ(m) = m/2 for m even, (m+1)/2 for m odd.
    static SigmaSchedule builtin();
    /// Breakpoints a_0 < b_0 < a_1 < b_1 < ...: σ(n) = ⌊n/2⌋ up to a_0,
    /// constant on [a_k, b_k], slope 1/2 on [b_k, a_{k+1}].
    static SigmaSchedule from_breakpoints(std::vector<std::int64_t> breakpoints);
    /// Breakpoints a_0 = 64 with gap factors 16, 32, 64, ... so σ(n)/n
    /// swings ever closer to 0 and to 1/2.
    static SigmaSchedule tower();

    std::int64_t operator()(std::int64_t n) const;

    bool is_builtin() const { return builtin_; }
    const std::vector<std::int64_t> &breakpoints() const { return breaks_; }
    /// Rigorous lower bound for inf σ(n)/n.
    Rational ratio_lower_bound() const;
    std::string str() const;

private:
    bool builtin_ = false;
    std::vector<std::int64_t> breaks_;
};

struct ScheduleCheck
{
    bool ok = true;
    std::string failure;
};

/// Nondecreasing and 0 <= σ(n) <= n/2 on 1..horizon; σ/n dips below 0.05
/// and rises above 0.45 somewhere in range.
ScheduleCheck check_volex_schedule(const SigmaSchedule &s, std::int64_t horizon);
/// σ(m)+σ(n) >= σ(m+n) and nondecreasing for m+n <= horizon.
ScheduleCheck check_subadditive_schedule(const SigmaSchedule &s, std::int64_t horizon);

Family adic(const MonomialIdeal &I);
Family twist(const Family &F, const Rational &c);
Family product(const Family &F, const Family &G);
/// I_n = {a : w_i·a >= n·a_i for all i}
Family valuative(AmbientPtr ambient, std::vector<ExponentVector> weights, std::vector<Rational> targets);
/// I_n = (t^σ(n)) in k[t].
Family sigma_family(const SigmaSchedule &s);
/// J_n = (N_n, y·N_{n-σ(n)-⌈n/4⌉}) in k[x_1..x_d, y]/(y²), N_i the degree-i
/// monomials in the x's.
Family volex_family(int d, const SigmaSchedule &s);
/// Explicit levels I_1..I_N; evaluation beyond N throws std::out_of_range.
Family table_family(AmbientPtr ambient, std::vector<MonomialIdeal> levels);
/// I_n = F_{n+s} for n > 0.
Family shift(const Family &F, std::int64_t s);
/// n ↦ integral closure of F_n.
Family closure_family(const Family &F);
Family custom_family(AmbientPtr ambient, GradedFamily::Evaluator eval, std::string description,
                     Asymptotics asymptotics = {});

struct SubadditivityReport
{
    bool passed = true;
    std::int64_t checked_pairs = 0;
    std::int64_t witness_m = 0;
    std::int64_t witness_n = 0;
};

/// Checks I_m I_n ⊆ I_{m+n} for m, n >= 1 with m + n <= N.
SubadditivityReport audit_subadditive(const Family &F, std::int64_t N);

/// Levelwise F_n ⊆ G_n for 1 <= n <= N.
bool contained_in(const Family &F, const Family &G, std::int64_t N);

} // namespace multfam

#endif
