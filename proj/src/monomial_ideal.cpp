#include "multfam/monomial_ideal.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace multfam {

bool divides(std::span<const std::int64_t> a, std::span<const std::int64_t> b)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
    }
    return true;
}

std::vector<ExponentVector> antichain(std::vector<ExponentVector> vs)
{
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    // a | b implies a <=lex b, so each survivor only needs checking against
    // earlier survivors.
    std::vector<ExponentVector> kept;
    kept.reserve(vs.size());
    for (auto &v : vs) {
        bool redundant = false;
        for (const auto &k : kept) {
            if (divides(k, v)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) {
            kept.push_back(std::move(v));
        }
    }
    return kept;
}

namespace {

void check_arity(const ExponentVector &v, int n)
{
    if (static_cast<int>(v.size()) != n) {
        throw std::invalid_argument("exponent arity: expected " + std::to_string(n) +
                                    " entries, got " + std::to_string(v.size()));
    }
    for (auto e : v) {
        if (e < 0) {
            throw std::invalid_argument("negative exponent");
        }
    }
}

int quotient_dim(int n, const std::vector<ExponentVector> &q)
{
    if (q.empty()) {
        return n;
    }
    int best = -1;
    for (const auto &p : minimal_primes(q, n)) {
        best = std::max(best, p.dim);
    }
    return best;
}

} // namespace

AmbientRing::AmbientRing(int n, std::vector<ExponentVector> q)
    : num_vars_(n), dim_(0), quotient_(std::move(q))
{
    dim_ = quotient_dim(n, quotient_);
}

std::shared_ptr<const AmbientRing> AmbientRing::polynomial(int num_vars)
{
    if (num_vars < 0) {
        throw std::invalid_argument("negative variable count");
    }
    return std::shared_ptr<const AmbientRing>(new AmbientRing(num_vars, {}));
}

std::shared_ptr<const AmbientRing> AmbientRing::quotient(int num_vars, std::vector<ExponentVector> q)
{
    for (const auto &v : q) {
        check_arity(v, num_vars);
    }
    q = antichain(std::move(q));
    for (const auto &v : q) {
        if (std::all_of(v.begin(), v.end(), [](auto e) { return e == 0; })) {
            throw std::invalid_argument("quotient by the unit ideal");
        }
    }
    return std::shared_ptr<const AmbientRing>(new AmbientRing(num_vars, std::move(q)));
}

bool AmbientRing::in_quotient(std::span<const std::int64_t> m) const
{
    for (const auto &g : quotient_) {
        if (divides(g, m)) {
            return true;
        }
    }
    return false;
}

bool same_ambient(const AmbientPtr &a, const AmbientPtr &b)
{
    return a == b || (a && b && *a == *b);
}

MonomialIdeal::MonomialIdeal(AmbientPtr ambient, std::vector<ExponentVector> gens)
    : ambient_(std::move(ambient))
{
    if (!ambient_) {
        throw std::invalid_argument("null ambient ring");
    }
    for (const auto &g : gens) {
        check_arity(g, ambient_->num_vars());
    }
    if (ambient_->has_quotient()) {
        std::erase_if(gens, [&](const ExponentVector &g) { return ambient_->in_quotient(g); });
    }
    gens_ = antichain(std::move(gens));
}

MonomialIdeal MonomialIdeal::unit(AmbientPtr ambient)
{
    const int n = ambient->num_vars();
    return MonomialIdeal(std::move(ambient), {ExponentVector(static_cast<std::size_t>(n), 0)});
}

MonomialIdeal MonomialIdeal::zero(AmbientPtr ambient) { return MonomialIdeal(std::move(ambient), {}); }

MonomialIdeal MonomialIdeal::maximal(AmbientPtr ambient)
{
    const int n = ambient->num_vars();
    std::vector<ExponentVector> gens;
    for (int i = 0; i < n; ++i) {
        ExponentVector e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(i)] = 1;
        gens.push_back(std::move(e));
    }
    return MonomialIdeal(std::move(ambient), std::move(gens));
}

bool MonomialIdeal::is_unit() const
{
    return gens_.size() == 1 && std::all_of(gens_[0].begin(), gens_[0].end(), [](auto e) { return e == 0; });
}

bool MonomialIdeal::contains(std::span<const std::int64_t> m) const
{
    if (static_cast<int>(m.size()) != num_vars()) {
        throw std::invalid_argument("exponent arity mismatch in membership test");
    }
    for (const auto &g : gens_) {
        if (divides(g, m)) {
            return true;
        }
    }
    return ambient_->in_quotient(m);
}

bool MonomialIdeal::subset_of(const MonomialIdeal &other) const
{
    if (!same_ambient(ambient_, other.ambient_)) {
        throw std::invalid_argument("ambient mismatch");
    }
    return std::all_of(gens_.begin(), gens_.end(), [&](const ExponentVector &g) { return other.contains(g); });
}

std::string MonomialIdeal::str() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (i) {
            os << ',';
        }
        os << '[';
        for (std::size_t j = 0; j < gens_[i].size(); ++j) {
            if (j) {
                os << ',';
            }
            os << gens_[i][j];
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

std::ostream &operator<<(std::ostream &os, const MonomialIdeal &I) { return os << I.str(); }

MonomialIdeal normalize(std::vector<ExponentVector> gens, AmbientPtr ambient)
{
    if (gens.empty()) {
        throw std::invalid_argument("normalize: empty generator list");
    }
    return MonomialIdeal(std::move(ambient), std::move(gens));
}

MonomialIdeal ideal_product(const MonomialIdeal &I, const MonomialIdeal &J)
{
    if (!same_ambient(I.ambient(), J.ambient())) {
        throw std::invalid_argument("ambient mismatch");
    }
    std::vector<ExponentVector> sums;
    sums.reserve(I.gens().size() * J.gens().size());
    for (const auto &a : I.gens()) {
        for (const auto &b : J.gens()) {
            ExponentVector s(a.size());
            for (std::size_t k = 0; k < a.size(); ++k) {
                s[k] = a[k] + b[k];
            }
            sums.push_back(std::move(s));
        }
    }
    return MonomialIdeal(I.ambient(), std::move(sums));
}

MonomialIdeal ideal_power(const MonomialIdeal &I, std::int64_t n)
{
    if (n < 0) {
        throw std::invalid_argument("negative ideal power");
    }
    MonomialIdeal result = MonomialIdeal::unit(I.ambient());
    MonomialIdeal base = I;
    // binary powering; products are normalized at every step
    while (n > 0) {
        if (n & 1) {
            result = ideal_product(result, base);
        }
        n >>= 1;
        if (n > 0) {
            base = ideal_product(base, base);
        }
    }
    return result;
}

MonomialIdeal ideal_sum(const MonomialIdeal &I, const MonomialIdeal &J)
{
    if (!same_ambient(I.ambient(), J.ambient())) {
        throw std::invalid_argument("ambient mismatch");
    }
    auto gens = I.gens();
    gens.insert(gens.end(), J.gens().begin(), J.gens().end());
    return MonomialIdeal(I.ambient(), std::move(gens));
}

bool contains(const MonomialIdeal &I, std::span<const std::int64_t> m) { return I.contains(m); }

namespace {

struct InfiniteColength
{
};

Integer count_rec(std::vector<ExponentVector> gens, int d);

Integer count_2d(std::vector<ExponentVector> gens)
{
    // antichain sorted by first coordinate => second strictly decreasing
    if (gens.empty() || gens.front()[0] != 0 || gens.back()[1] != 0) {
        throw InfiniteColength{};
    }
    Integer total = 0;
    for (std::size_t i = 0; i + 1 < gens.size(); ++i) {
        total += Integer(gens[i + 1][0] - gens[i][0]) * Integer(gens[i][1]);
    }
    return total;
}

Integer count_rec(std::vector<ExponentVector> gens, int d)
{
    gens = antichain(std::move(gens));
    if (d == 0) {
        return gens.empty() ? Integer(1) : Integer(0);
    }
    if (gens.empty()) {
        throw InfiniteColength{};
    }
    if (d == 1) {
        return Integer(gens.front()[0]);
    }
    if (d == 2) {
        return count_2d(std::move(gens));
    }
    const auto last = static_cast<std::size_t>(d - 1);
    std::sort(gens.begin(), gens.end(),
              [last](const ExponentVector &a, const ExponentVector &b) { return a[last] < b[last]; });
    if (gens.front()[last] != 0) {
        throw InfiniteColength{};
    }
    Integer total = 0;
    std::vector<ExponentVector> slice;
    std::size_t i = 0;
    while (i < gens.size()) {
        const std::int64_t level = gens[i][last];
        while (i < gens.size() && gens[i][last] == level) {
            slice.emplace_back(gens[i].begin(), gens[i].end() - 1);
            ++i;
        }
        slice = antichain(std::move(slice));
        const Integer layer = count_rec(slice, d - 1);
        if (layer == 0) {
            return total;
        }
        if (i == gens.size()) {
            throw InfiniteColength{};
        }
        total += layer * Integer(gens[i][last] - level);
    }
    throw InfiniteColength{};
}

} // namespace

Integer staircase_count(std::vector<ExponentVector> gens, int d)
{
    try {
        return count_rec(std::move(gens), d);
    } catch (const InfiniteColength &) {
        throw std::domain_error("infinite colength: ideal is not m-primary");
    }
}

Integer colength(const MonomialIdeal &I)
{
    auto gens = I.gens();
    const auto &q = I.ambient()->quotient_gens();
    gens.insert(gens.end(), q.begin(), q.end());
    return staircase_count(std::move(gens), I.num_vars());
}

bool is_m_primary(const MonomialIdeal &I)
{
    auto gens = I.gens();
    const auto &q = I.ambient()->quotient_gens();
    gens.insert(gens.end(), q.begin(), q.end());
    const int n = I.num_vars();
    for (int i = 0; i < n; ++i) {
        bool pure = false;
        for (const auto &g : gens) {
            bool ok = true;
            for (int j = 0; j < n && ok; ++j) {
                ok = (j == i) || g[static_cast<std::size_t>(j)] == 0;
            }
            if (ok) {
                pure = true;
                break;
            }
        }
        if (!pure) {
            return false;
        }
    }
    return true;
}

std::vector<MinimalPrime> minimal_primes(const std::vector<ExponentVector> &q, int n)
{
    if (n > 20) {
        throw std::invalid_argument("minimal_primes: too many variables");
    }
    const auto qa = antichain(q);
    for (const auto &g : qa) {
        if (std::all_of(g.begin(), g.end(), [](auto e) { return e == 0; })) {
            throw std::invalid_argument("minimal_primes: unit ideal");
        }
    }
    std::vector<unsigned> covers;
    const unsigned total = 1u << n;
    for (unsigned mask = 0; mask < total; ++mask) {
        bool hits_all = true;
        for (const auto &g : qa) {
            bool hit = false;
            for (int j = 0; j < n && !hit; ++j) {
                hit = (mask >> j & 1u) && g[static_cast<std::size_t>(j)] > 0;
            }
            if (!hit) {
                hits_all = false;
                break;
            }
        }
        if (hits_all) {
            covers.push_back(mask);
        }
    }
    std::vector<MinimalPrime> out;
    for (unsigned mask : covers) {
        bool minimal = true;
        for (unsigned other : covers) {
            if (other != mask && (other & mask) == other) {
                minimal = false;
                break;
            }
        }
        if (!minimal) {
            continue;
        }
        CoordinatePrime p;
        for (int j = 0; j < n; ++j) {
            if (mask >> j & 1u) {
                p.vars.push_back(j);
            }
        }
        // localize: variables outside P become units
        std::vector<ExponentVector> local;
        for (const auto &g : qa) {
            ExponentVector r;
            for (int j : p.vars) {
                r.push_back(g[static_cast<std::size_t>(j)]);
            }
            local.push_back(std::move(r));
        }
        Integer len = p.vars.empty() ? Integer(1) : staircase_count(local, p.codim());
        out.push_back({p, len, n - p.codim()});
    }
    std::sort(out.begin(), out.end(),
              [](const MinimalPrime &a, const MinimalPrime &b) { return a.prime.vars < b.prime.vars; });
    return out;
}

std::vector<MinimalPrime> minimal_primes(const MonomialIdeal &q)
{
    return minimal_primes(q.gens(), q.num_vars());
}

MonomialIdeal restrict_mod_prime(const MonomialIdeal &I, const CoordinatePrime &p)
{
    const int n = I.num_vars();
    std::vector<bool> in_p(static_cast<std::size_t>(n), false);
    for (int j : p.vars) {
        in_p[static_cast<std::size_t>(j)] = true;
    }
    auto ring = AmbientRing::polynomial(n - p.codim());
    std::vector<ExponentVector> gens;
    for (const auto &g : I.gens()) {
        bool vanishes = false;
        ExponentVector r;
        for (int j = 0; j < n; ++j) {
            if (in_p[static_cast<std::size_t>(j)]) {
                vanishes = vanishes || g[static_cast<std::size_t>(j)] > 0;
            } else {
                r.push_back(g[static_cast<std::size_t>(j)]);
            }
        }
        if (!vanishes) {
            gens.push_back(std::move(r));
        }
    }
    return MonomialIdeal(ring, std::move(gens));
}

} // namespace multfam
