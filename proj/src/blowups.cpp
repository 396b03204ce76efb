#include "multfam/blowups.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"

namespace multfam {

namespace {

using Matrix = std::vector<std::vector<std::int64_t>>;

// Intersection form built one blowup at a time; nullopt when some point
// cannot sit where its proximities put it.
std::optional<Matrix> blow_up_in_order(const std::vector<std::vector<int>> &prox)
{
    Matrix N;
    for (std::size_t k = 0; k < prox.size(); ++k) {
        const auto &S = prox[k];
        if (k == 0 ? !S.empty() : (S.empty() || S.size() > 2)) {
            return std::nullopt;
        }
        if (S.size() == 2 && N[S[0]][S[1]] != 1) {
            return std::nullopt;
        }
        for (auto &row : N) {
            row.push_back(0);
        }
        N.emplace_back(k + 1, 0);
        N[k][k] = -1;
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

Integer determinant(std::vector<std::vector<Integer>> a)
{
    // Bareiss elimination, exact over Z
    const auto n = a.size();
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) {
                ++r;
            }
            if (r == n) {
                return 0;
            }
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

std::vector<std::int64_t> times(const Matrix &N, const std::vector<std::int64_t> &v)
{
    std::vector<std::int64_t> out(N.size(), 0);
    for (std::size_t i = 0; i < N.size(); ++i) {
        for (std::size_t j = 0; j < N.size(); ++j) {
            out[i] += N[i][j] * v[j];
        }
    }
    return out;
}

Integer self_intersection(const Matrix &N, const std::vector<std::int64_t> &v)
{
    Integer s = 0;
    for (std::size_t i = 0; i < N.size(); ++i) {
        for (std::size_t j = 0; j < N.size(); ++j) {
            s += Integer(N[i][j]) * v[i] * v[j];
        }
    }
    return s;
}

void check_size(const ProximityCluster &C, std::size_t n, const char *what)
{
    if (static_cast<int>(n) != C.size()) {
        throw std::invalid_argument(std::string(what) + " has " + std::to_string(n) + " entries, cluster has " +
                                    std::to_string(C.size()) + " points");
    }
}

} // namespace

ClusterPtr ProximityCluster::from_pairs(int size, const std::vector<std::pair<int, int>> &pairs)
{
    if (size < 1) {
        throw std::invalid_argument("a cluster needs at least one point");
    }
    std::vector<std::vector<bool>> prox(size, std::vector<bool>(size, false));
    for (auto [i, j] : pairs) {
        if (j < 1 || i <= j || i > size) {
            throw std::invalid_argument("malformed proximity: pair [" + std::to_string(i) + "," + std::to_string(j) +
                                        "] must satisfy 1 <= j < i <= " + std::to_string(size));
        }
        prox[i - 1][j - 1] = true;
    }
    ProximityCluster C(std::move(prox));
    std::vector<std::vector<int>> lists;
    for (int i = 0; i < size; ++i) {
        lists.push_back(C.proximate_to(i));
    }
    if (!blow_up_in_order(lists)) {
        throw std::invalid_argument("malformed proximity: every later point needs one or two proximities, and a "
                                    "satellite must lie on two exceptional curves that still meet");
    }
    return std::shared_ptr<const ProximityCluster>(new ProximityCluster(std::move(C)));
}

ClusterPtr ProximityCluster::free_chain(int size)
{
    std::vector<std::pair<int, int>> pairs;
    for (int i = 2; i <= size; ++i) {
        pairs.emplace_back(i, i - 1);
    }
    return from_pairs(size, pairs);
}

std::vector<int> ProximityCluster::proximate_to(int i) const
{
    std::vector<int> out;
    for (int j = 0; j < i; ++j) {
        if (prox_[i][j]) {
            out.push_back(j);
        }
    }
    return out;
}

int ProximityCluster::parent(int i) const
{
    const auto p = proximate_to(i);
    return p.empty() ? -1 : p.back();
}

std::vector<std::pair<int, int>> ProximityCluster::pairs() const
{
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i) {
        for (int j : proximate_to(i)) {
            out.emplace_back(i + 1, j + 1);
        }
    }
    return out;
}

std::string ProximityCluster::str() const
{
    std::ostringstream os;
    os << "cluster(l=" << size();
    for (auto [i, j] : pairs()) {
        os << "; " << i << ">" << j;
    }
    os << ')';
    return os.str();
}

bool IntersectionForm::negative_definite() const
{
    for (int k = 1; k <= size(); ++k) {
        std::vector<std::vector<Integer>> minor(k, std::vector<Integer>(k));
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                minor[i][j] = N[i][j];
            }
        }
        const Integer det = determinant(std::move(minor));
        if ((k % 2 == 1 && det >= 0) || (k % 2 == 0 && det <= 0)) {
            return false;
        }
    }
    return true;
}

IntersectionForm intersection_matrix(const ProximityCluster &C)
{
    const int l = C.size();
    IntersectionForm F{Matrix(l, std::vector<std::int64_t>(l, 0))};
    for (int i = 0; i < l; ++i) {
        std::int64_t count = 0;
        for (int j = i + 1; j < l; ++j) {
            count += C.proximate(j, i) ? 1 : 0;
        }
        F.N[i][i] = -1 - count;
        for (int j = i + 1; j < l; ++j) {
            if (!C.proximate(j, i)) {
                continue;
            }
            bool separated = false;
            for (int k = j + 1; k < l && !separated; ++k) {
                separated = C.proximate(k, i) && C.proximate(k, j);
            }
            F.N[i][j] = F.N[j][i] = separated ? 0 : 1;
        }
    }
    if (!F.negative_definite()) {
        throw std::logic_error("intersection form of " + C.str() + " is not negative definite");
    }
    return F;
}

std::vector<std::int64_t> canonical_degrees(const IntersectionForm &N)
{
    std::vector<std::int64_t> k;
    for (int i = 0; i < N.size(); ++i) {
        k.push_back(-2 - N.N[i][i]);
    }
    return k;
}

std::vector<std::int64_t> point_multiplicities(const ProximityCluster &C, const std::vector<std::int64_t> &v)
{
    check_size(C, v.size(), "value vector");
    std::vector<std::int64_t> m(v);
    for (int k = 0; k < C.size(); ++k) {
        for (int j : C.proximate_to(k)) {
            m[k] -= v[j];
        }
    }
    return m;
}

std::vector<std::int64_t> divisor_values(const ProximityCluster &C, const std::vector<std::int64_t> &m)
{
    check_size(C, m.size(), "multiplicity vector");
    std::vector<std::int64_t> v(m);
    for (int k = 0; k < C.size(); ++k) {
        for (int j : C.proximate_to(k)) {
            v[k] += v[j];
        }
    }
    return v;
}

bool is_antinef(const IntersectionForm &N, const std::vector<std::int64_t> &v)
{
    const auto d = times(N.N, v);
    return std::all_of(d.begin(), d.end(), [](auto x) { return x <= 0; });
}

AntinefDivisor antinef_divisor(ClusterPtr C, std::vector<std::int64_t> v)
{
    check_size(*C, v.size(), "value vector");
    if (!is_antinef(intersection_matrix(*C), v)) {
        throw std::invalid_argument("divisor is not antinef on " + C->str());
    }
    auto m = point_multiplicities(*C, v);
    return {std::move(C), std::move(v), std::move(m), 0};
}

AntinefDivisor unload(ClusterPtr C, const std::vector<Rational> &targets, std::mt19937_64 *schedule)
{
    check_size(*C, targets.size(), "target vector");
    const auto N = intersection_matrix(*C).N;
    std::vector<std::int64_t> v;
    for (const auto &t : targets) {
        if (t < 0) {
            throw std::invalid_argument("unloading targets must be nonnegative");
        }
        v.push_back(ceil_i64(t));
    }
    std::int64_t iterations = 0;
    for (;;) {
        const auto d = times(N, v);
        std::vector<std::size_t> violated;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] > 0) {
                violated.push_back(i);
            }
        }
        if (violated.empty()) {
            break;
        }
        if (schedule) {
            std::uniform_int_distribution<std::size_t> pick(0, violated.size() - 1);
            ++v[violated[pick(*schedule)]];
            ++iterations;
        } else {
            // any antinef majorant has -N_ii v'_i >= Σ_{j≠i} N_ij v_j
            const auto i = violated.front();
            const auto step = (d[i] + (-N[i][i]) - 1) / (-N[i][i]);
            v[i] += step;
            iterations += step;
        }
    }
    auto m = point_multiplicities(*C, v);
    return {std::move(C), std::move(v), std::move(m), iterations};
}

Integer divisor_colength(const AntinefDivisor &D)
{
    const auto F = intersection_matrix(*D.cluster);
    const auto K = canonical_degrees(F);
    Integer dk = 0;
    for (std::size_t i = 0; i < K.size(); ++i) {
        dk += Integer(D.v[i]) * K[i];
    }
    const Integer twice = -(self_intersection(F.N, D.v) + dk);
    Integer sum = 0;
    for (auto m : D.m) {
        sum += Integer(m) * (m + 1) / 2;
    }
    if (twice != 2 * sum) {
        throw std::logic_error("colength formulas disagree on " + D.cluster->str() + ": " + to_string(twice) +
                               "/2 vs " + to_string(sum));
    }
    return sum;
}

Integer divisor_multiplicity(const AntinefDivisor &D)
{
    const auto F = intersection_matrix(*D.cluster);
    const Integer e = -self_intersection(F.N, D.v);
    Integer sum = 0;
    for (auto m : D.m) {
        sum += Integer(m) * m;
    }
    if (e != sum) {
        throw std::logic_error("-(D^2) = " + to_string(e) + " but sum of squared multiplicities = " + to_string(sum));
    }
    return e;
}

DivisorFamily::DivisorFamily(ClusterPtr cluster, std::vector<Rational> targets)
    : cluster_(std::move(cluster)), targets_(std::move(targets)), form_(intersection_matrix(*cluster_))
{
    check_size(*cluster_, targets_.size(), "target vector");
    for (const auto &t : targets_) {
        if (t < 0) {
            throw std::invalid_argument("divisorial targets must be nonnegative");
        }
    }
}

AntinefDivisor DivisorFamily::at(std::int64_t n) const
{
    if (n < 0) {
        throw std::out_of_range("negative family level");
    }
    {
        std::lock_guard lock(memo_mutex_);
        if (auto it = memo_.find(n); it != memo_.end()) {
            return it->second;
        }
    }
    std::vector<Rational> t;
    for (const auto &a : targets_) {
        t.emplace_back(a * n);
    }
    auto D = unload(cluster_, t);
    std::lock_guard lock(memo_mutex_);
    memo_.emplace(n, D);
    return D;
}

bool DivisorFamily::targets_antinef() const
{
    for (int i = 0; i < form_.size(); ++i) {
        Rational s = 0;
        for (int j = 0; j < form_.size(); ++j) {
            s += form_.N[i][j] * targets_[j];
        }
        if (s > 0) {
            return false;
        }
    }
    return true;
}

std::optional<Rational> DivisorFamily::limit_multiplicity() const
{
    if (!targets_antinef()) {
        return std::nullopt;
    }
    Rational s = 0;
    for (int i = 0; i < form_.size(); ++i) {
        for (int j = 0; j < form_.size(); ++j) {
            s += form_.N[i][j] * targets_[i] * targets_[j];
        }
    }
    return Rational(-s);
}

std::string DivisorFamily::description() const
{
    std::ostringstream os;
    os << "divisorial(" << cluster_->str() << ", a=(";
    for (std::size_t i = 0; i < targets_.size(); ++i) {
        os << (i ? "," : "") << to_string(targets_[i]);
    }
    os << "))";
    return os.str();
}

DivisorFamilyPtr divisorial_family_2d(ClusterPtr C, std::vector<Rational> targets)
{
    return std::make_shared<DivisorFamily>(std::move(C), std::move(targets));
}

namespace {

std::vector<Sample> divisor_samples(const DivisorFamilyPtr &F, std::int64_t nmax, std::int64_t base, bool lengths)
{
    const auto ladder = sampling_ladder(nmax, base);
    auto values = detail::parallel_map(ladder, [&](std::int64_t n) -> Rational {
        const Integer top = lengths ? Integer(2 * F->colength(n)) : F->multiplicity(n);
        return make_rational(top, Integer(n) * n);
    });
    std::vector<Sample> out;
    for (std::size_t i = 0; i < ladder.size(); ++i) {
        out.push_back({ladder[i], values[i]});
    }
    return out;
}

} // namespace

ConvergenceReport divisor_family_multiplicity(const DivisorFamilyPtr &F, std::int64_t nmax, std::int64_t base)
{
    return multiplicity_report(divisor_samples(F, nmax, base, false), nmax, F->limit_multiplicity());
}

ConvergenceReport divisor_family_volume(const DivisorFamilyPtr &F, std::int64_t nmax, std::int64_t base)
{
    return volume_report(divisor_samples(F, nmax, base, true), nmax, F->limit_multiplicity());
}

DivisorValue divisor_family_value(const DivisorFamilyPtr &F, int index, std::int64_t nmax)
{
    if (index < 0 || index >= F->cluster()->size()) {
        throw std::out_of_range("no exceptional curve E_" + std::to_string(index + 1));
    }
    DivisorValue out;
    out.index = index;
    out.lower_bound = F->targets()[index];
    std::optional<Rational> best;
    for (auto n : sampling_ladder(nmax, 2)) {
        Rational r = make_rational(F->at(n).v[index], n);
        out.samples.push_back({n, r});
        if (!best || r < *best) {
            best = r;
        }
    }
    out.value = *best;
    if (F->targets_antinef()) {
        // along multiples of the denominators n·a is integral and antinef, so D_n = n·a there
        out.value = out.lower_bound;
    }
    out.exact = out.value == out.lower_bound;
    for (const auto &s : out.samples) {
        if (s.value == out.value) {
            out.attained_at = s.n;
            break;
        }
    }
    return out;
}

ChainExample chain_example(int l)
{
    if (l < 1) {
        throw std::invalid_argument("chain example needs l >= 1");
    }
    ChainExample ex{ProximityCluster::free_chain(l), {}};
    for (int i = 1; i <= l; ++i) {
        const Integer p = Integer(1) << (i - 1);
        ex.targets.push_back(make_rational(2 * p - 1, p));
    }
    return ex;
}

std::vector<std::int64_t> chain_expected_values(int l, std::int64_t m)
{
    std::vector<std::int64_t> v;
    for (int i = 1; i <= l; ++i) {
        const Integer p = Integer(1) << (i - 1);
        v.push_back(ceil_i64(make_rational(m * (2 * p - 1), p)));
    }
    return v;
}

Rational chain_closed_form(int l)
{
    const Integer p = Integer(1) << (2 * (l - 1));
    return 1 + make_rational(p - 1, 3 * p);
}

std::vector<MonomialPreset> monomial_presets()
{
    const auto R = AmbientRing::polynomial(2);
    const auto point = ProximityCluster::free_chain(1);
    return {
        {"(x,y)", MonomialIdeal(R, {{1, 0}, {0, 1}}), point, {1}},
        {"(x,y)^2", MonomialIdeal(R, {{2, 0}, {1, 1}, {0, 2}}), point, {2}},
        // weight (3,2): the second point is free, the third a satellite
        {"(x^2,xy^2,y^3)", MonomialIdeal(R, {{2, 0}, {1, 2}, {0, 3}}),
         ProximityCluster::from_pairs(3, {{2, 1}, {3, 2}, {3, 1}}), {2, 3, 6}},
    };
}

ClusterPtr random_cluster(std::mt19937_64 &rng, int size, double satellite)
{
    if (size < 1) {
        throw std::invalid_argument("a cluster needs at least one point");
    }
    std::vector<std::vector<int>> lists{{}};
    std::vector<std::pair<int, int>> pairs;
    std::bernoulli_distribution coin(0.5);
    std::bernoulli_distribution sat(satellite);
    for (int k = 1; k < size; ++k) {
        const auto N = *blow_up_in_order(lists);
        int p = k - 1;
        if (coin(rng)) {
            p = std::uniform_int_distribution<int>(0, k - 1)(rng);
        }
        std::vector<int> S{p};
        if (sat(rng)) {
            std::vector<int> meet;
            for (int j = 0; j < k; ++j) {
                if (j != p && N[p][j] == 1) {
                    meet.push_back(j);
                }
            }
            if (!meet.empty()) {
                S.push_back(meet[std::uniform_int_distribution<std::size_t>(0, meet.size() - 1)(rng)]);
                std::sort(S.begin(), S.end());
            }
        }
        for (int j : S) {
            pairs.emplace_back(k + 1, j + 1);
        }
        lists.push_back(S);
    }
    return ProximityCluster::from_pairs(size, pairs);
}

} // namespace multfam
