#include "multfam/curves.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace multfam {

CurveRingPtr BranchedCurveRing::make(int branches, std::vector<std::string> names)
{
    if (branches < 1) {
        throw std::invalid_argument("a curve ring needs at least one branch");
    }
    if (names.empty()) {
        for (int i = 1; i <= branches; ++i) {
            names.push_back("v" + std::to_string(i));
        }
    }
    if (static_cast<int>(names.size()) != branches) {
        throw std::invalid_argument("branch name count does not match the branch count");
    }
    return CurveRingPtr(new BranchedCurveRing(std::move(names)));
}

BranchIdeal::BranchIdeal(CurveRingPtr ring, std::vector<std::int64_t> orders)
    : ring_(std::move(ring)), orders_(std::move(orders))
{
    if (static_cast<int>(orders_.size()) != ring_->branches()) {
        throw std::invalid_argument("exponent arity: expected " + std::to_string(ring_->branches()) +
                                    " branch orders, got " + std::to_string(orders_.size()));
    }
    const bool any_zero = std::any_of(orders_.begin(), orders_.end(), [](auto o) { return o == 0; });
    const bool all_zero = std::all_of(orders_.begin(), orders_.end(), [](auto o) { return o == 0; });
    if (std::any_of(orders_.begin(), orders_.end(), [](auto o) { return o < 0; }) || (any_zero && !all_zero)) {
        throw std::invalid_argument("branch orders must be all positive (m-primary) or all zero (unit)");
    }
}

BranchIdeal BranchIdeal::unit(CurveRingPtr ring)
{
    const auto r = static_cast<std::size_t>(ring->branches());
    return {std::move(ring), std::vector<std::int64_t>(r, 0)};
}

BranchIdeal BranchIdeal::maximal(CurveRingPtr ring)
{
    const auto r = static_cast<std::size_t>(ring->branches());
    return {std::move(ring), std::vector<std::int64_t>(r, 1)};
}

bool BranchIdeal::is_unit() const { return orders_.front() == 0; }

std::string BranchIdeal::str() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        os << (i ? "," : "") << orders_[i];
    }
    os << ')';
    return os.str();
}

std::int64_t curve_multiplicity(const BranchIdeal &I)
{
    if (I.is_unit()) {
        throw std::invalid_argument("multiplicity of the unit ideal");
    }
    std::int64_t e = 0;
    for (auto o : I.orders()) {
        e += o;
    }
    return e;
}

BranchIdeal curve_product(const BranchIdeal &I, const BranchIdeal &J)
{
    if (I.ring() != J.ring()) {
        throw std::invalid_argument("product of branch ideals over different rings");
    }
    auto o = I.orders();
    for (std::size_t i = 0; i < o.size(); ++i) {
        o[i] += J.orders()[i];
    }
    return {I.ring(), std::move(o)};
}

CurveFamily::CurveFamily(CurveRingPtr ring, Evaluator eval, std::string description,
                         std::optional<std::vector<Rational>> limit_orders)
    : ring_(std::move(ring)), eval_(std::move(eval)), description_(std::move(description)),
      limits_(std::move(limit_orders))
{
}

BranchIdeal CurveFamily::at(std::int64_t n) const
{
    if (n < 0) {
        throw std::out_of_range("negative family level");
    }
    if (n == 0) {
        return BranchIdeal::unit(ring_);
    }
    {
        std::lock_guard lock(memo_mutex_);
        if (auto it = memo_.find(n); it != memo_.end()) {
            return it->second;
        }
    }
    BranchIdeal value = eval_(n);
    if (value.ring() != ring_) {
        throw std::logic_error("curve family evaluator returned an ideal of another ring");
    }
    std::lock_guard lock(memo_mutex_);
    memo_.emplace(n, value);
    return value;
}

CurveFamilyPtr curve_adic(const BranchIdeal &I)
{
    if (I.is_unit()) {
        throw std::invalid_argument("adic curve family of the unit ideal");
    }
    std::vector<Rational> lim;
    for (auto o : I.orders()) {
        lim.emplace_back(o);
    }
    return std::make_shared<CurveFamily>(
        I.ring(),
        [I](std::int64_t n) {
            auto o = I.orders();
            for (auto &x : o) {
                x *= n;
            }
            return BranchIdeal(I.ring(), std::move(o));
        },
        "adic" + I.str(), std::move(lim));
}

CurveFamilyPtr curve_twist(const CurveFamilyPtr &F, const Rational &c)
{
    if (c < 0) {
        throw std::invalid_argument("twist by a negative scale");
    }
    std::optional<std::vector<Rational>> lim;
    if (F->limit_orders()) {
        lim = *F->limit_orders();
        for (auto &x : *lim) {
            x *= c;
        }
    }
    auto ring = F->ring();
    CurveFamily::Evaluator eval;
    if (c == 0) {
        eval = [ring](std::int64_t) { return BranchIdeal::maximal(ring); };
    } else {
        eval = [F, c](std::int64_t n) { return F->at(to_i64(ceil_of(c * n))); };
    }
    return std::make_shared<CurveFamily>(ring, std::move(eval),
                                         "twist(" + F->description() + ", " + to_string(c) + ")", std::move(lim));
}

CurveFamilyPtr curve_product_family(const CurveFamilyPtr &F, const CurveFamilyPtr &G)
{
    if (F->ring() != G->ring()) {
        throw std::invalid_argument("product of curve families over different rings");
    }
    std::optional<std::vector<Rational>> lim;
    if (F->limit_orders() && G->limit_orders()) {
        lim = *F->limit_orders();
        for (std::size_t i = 0; i < lim->size(); ++i) {
            (*lim)[i] += (*G->limit_orders())[i];
        }
    }
    return std::make_shared<CurveFamily>(
        F->ring(), [F, G](std::int64_t n) { return curve_product(F->at(n), G->at(n)); },
        "product(" + F->description() + ", " + G->description() + ")", std::move(lim));
}

CurveFamilyPtr curve_table(CurveRingPtr ring, std::vector<BranchIdeal> levels)
{
    for (const auto &I : levels) {
        if (I.ring() != ring || I.is_unit()) {
            throw std::invalid_argument("curve table level is not an m-primary ideal of this ring");
        }
    }
    const auto N = static_cast<std::int64_t>(levels.size());
    return std::make_shared<CurveFamily>(
        ring,
        [levels = std::move(levels), N](std::int64_t n) {
            if (n > N) {
                throw std::out_of_range("curve table has no level " + std::to_string(n));
            }
            return levels[static_cast<std::size_t>(n - 1)];
        },
        "table(N=" + std::to_string(N) + ")");
}

bool curve_audit(const CurveFamilyPtr &F, std::int64_t N)
{
    for (std::int64_t m = 1; m < N; ++m) {
        for (std::int64_t n = m; m + n <= N; ++n) {
            const auto a = F->at(m).orders();
            const auto b = F->at(n).orders();
            const auto c = F->at(m + n).orders();
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i] + b[i] < c[i]) {
                    return false;
                }
            }
        }
    }
    return true;
}

CurveLimits curve_limits(const CurveFamilyPtr &F, std::int64_t nmax)
{
    CurveLimits out;
    if (F->limit_orders()) {
        out.values = *F->limit_orders();
        out.exact = true;
    } else {
        // orders are subadditive in n, so inf orders_i(n)/n is the limit
        const auto r = static_cast<std::size_t>(F->ring()->branches());
        out.values.assign(r, Rational(0));
        for (std::int64_t n = 1; n <= nmax; ++n) {
            const auto o = F->at(n).orders();
            for (std::size_t i = 0; i < r; ++i) {
                Rational q = make_rational(o[i], n);
                if (n == 1 || q < out.values[i]) {
                    out.values[i] = q;
                }
            }
        }
    }
    out.multiplicity = 0;
    for (const auto &v : out.values) {
        out.multiplicity += v;
    }
    return out;
}

CurveFamilyReport curve_family_report(const CurveFamilyPtr &F, const CurveFamilyPtr &G, std::int64_t nmax)
{
    CurveFamilyReport rep;
    rep.f = curve_limits(F, nmax);
    rep.g = curve_limits(G, nmax);
    rep.fg = curve_limits(curve_product_family(F, G), nmax);
    rep.minkowski_equality = rep.fg.multiplicity == rep.f.multiplicity + rep.g.multiplicity;
    rep.all_proportional = true;
    for (std::size_t i = 0; i < rep.f.values.size(); ++i) {
        const bool p = rep.g.multiplicity * rep.f.values[i] == rep.f.multiplicity * rep.g.values[i];
        rep.proportional.push_back(p);
        rep.all_proportional = rep.all_proportional && p;
    }
    return rep;
}

std::pair<BranchIdeal, BranchIdeal> two_branch_example(std::int64_t n)
{
    if (n < 1) {
        throw std::invalid_argument("two-branch example needs n >= 1");
    }
    auto ring = BranchedCurveRing::make(2, {"y=x", "y=-x"});
    return {BranchIdeal(ring, {n, 1}), BranchIdeal(ring, {1, n})};
}

} // namespace multfam
