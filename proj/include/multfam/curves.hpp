#ifndef MULTFAM_CURVES_HPP
#define MULTFAM_CURVES_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "multfam/rational.hpp"

namespace multfam {

/// One-dimensional local ring with r smooth analytic branches; V(R) has one
/// order valuation per branch.
class BranchedCurveRing
{
public:
    static std::shared_ptr<const BranchedCurveRing> make(int branches, std::vector<std::string> names = {});

    int branches() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string> &names() const { return names_; }

private:
    explicit BranchedCurveRing(std::vector<std::string> names) : names_(std::move(names)) {}
    std::vector<std::string> names_;
};

using CurveRingPtr = std::shared_ptr<const BranchedCurveRing>;

/// An m-primary ideal recorded by its order on each branch.
class BranchIdeal
{
public:
    BranchIdeal(CurveRingPtr ring, std::vector<std::int64_t> orders);
    static BranchIdeal unit(CurveRingPtr ring);
    static BranchIdeal maximal(CurveRingPtr ring);

    const CurveRingPtr &ring() const { return ring_; }
    const std::vector<std::int64_t> &orders() const { return orders_; }
    bool is_unit() const;
    std::string str() const;

    bool operator==(const BranchIdeal &o) const { return ring_ == o.ring_ && orders_ == o.orders_; }

private:
    CurveRingPtr ring_;
    std::vector<std::int64_t> orders_;
};

/// e(I) = Σ orders; throws on the unit ideal.
std::int64_t curve_multiplicity(const BranchIdeal &I);
BranchIdeal curve_product(const BranchIdeal &I, const BranchIdeal &J);

class CurveFamily;
using CurveFamilyPtr = std::shared_ptr<const CurveFamily>;

/// Graded family of branch ideals; `limit_orders` holds v_i(F) when known.
class CurveFamily
{
public:
    using Evaluator = std::function<BranchIdeal(std::int64_t)>;

    CurveFamily(CurveRingPtr ring, Evaluator eval, std::string description,
                std::optional<std::vector<Rational>> limit_orders = std::nullopt);

    BranchIdeal at(std::int64_t n) const;
    const CurveRingPtr &ring() const { return ring_; }
    const std::string &description() const { return description_; }
    const std::optional<std::vector<Rational>> &limit_orders() const { return limits_; }

private:
    CurveRingPtr ring_;
    Evaluator eval_;
    std::string description_;
    std::optional<std::vector<Rational>> limits_;
    mutable std::mutex memo_mutex_;
    mutable std::map<std::int64_t, BranchIdeal> memo_;
};

CurveFamilyPtr curve_adic(const BranchIdeal &I);
CurveFamilyPtr curve_twist(const CurveFamilyPtr &F, const Rational &c);
CurveFamilyPtr curve_product_family(const CurveFamilyPtr &F, const CurveFamilyPtr &G);
/// Explicit levels I_1..I_N.
CurveFamilyPtr curve_table(CurveRingPtr ring, std::vector<BranchIdeal> levels);

/// orders(m) + orders(n) >= orders(m+n) for m + n <= N.
bool curve_audit(const CurveFamilyPtr &F, std::int64_t N);

struct CurveLimits
{
    std::vector<Rational> values; ///< v_i(F) per branch
    Rational multiplicity;        ///< e(F) = Σ v_i(F)
    bool exact = false;
};

/// v_i(F) = inf orders_i(n)/n over 1..nmax unless fixed by construction.
CurveLimits curve_limits(const CurveFamilyPtr &F, std::int64_t nmax);

struct CurveFamilyReport
{
    CurveLimits f;
    CurveLimits g;
    CurveLimits fg;
    /// e(FG) = e(F) + e(G)
    bool minkowski_equality = false;
    /// e(G) v_i(F) = e(F) v_i(G), per branch
    std::vector<bool> proportional;
    bool all_proportional = false;
};

CurveFamilyReport curve_family_report(const CurveFamilyPtr &F, const CurveFamilyPtr &G, std::int64_t nmax);

/// R = k[[x,y]]/(y²-x²), I = (y-x, x^n), J = (y+x, x^n) as order tuples
/// (n, 1) and (1, n) on the branches y = x and y = -x.
std::pair<BranchIdeal, BranchIdeal> two_branch_example(std::int64_t n);

} // namespace multfam

#endif
