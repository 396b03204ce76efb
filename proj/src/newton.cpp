#include "multfam/newton.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "linalg.hpp"

namespace multfam {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v)
{
    if (v > INT64_MAX || v < INT64_MIN) {
        throw std::overflow_error("hull arithmetic overflow");
    }
    return static_cast<std::int64_t>(v);
}

i128 det(std::vector<std::vector<i128>> m)
{
    const std::size_t n = m.size();
    if (n == 0) {
        return 1;
    }
    if (n == 1) {
        return m[0][0];
    }
    if (n == 2) {
        return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    }
    i128 total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<i128>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<i128> row;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != c) {
                    row.push_back(m[r][k]);
                }
            }
            minor.push_back(std::move(row));
        }
        const i128 sub = det(std::move(minor));
        total += (c % 2 == 0 ? 1 : -1) * m[0][c] * sub;
    }
    return total;
}

/// Normal of the hyperplane through d points of Z^d (zero if degenerate),
/// reduced to primitive form.
std::vector<i128> hyperplane_normal(const std::vector<const ExponentVector *> &pts, std::size_t d)
{
    std::vector<std::vector<i128>> rows;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        std::vector<i128> r(d);
        for (std::size_t k = 0; k < d; ++k) {
            r[k] = static_cast<i128>((*pts[i])[k]) - (*pts[0])[k];
        }
        rows.push_back(std::move(r));
    }
    std::vector<i128> w(d);
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<std::vector<i128>> m;
        for (const auto &r : rows) {
            std::vector<i128> row;
            for (std::size_t k = 0; k < d; ++k) {
                if (k != j) {
                    row.push_back(r[k]);
                }
            }
            m.push_back(std::move(row));
        }
        w[j] = (j % 2 == 0 ? 1 : -1) * det(std::move(m));
    }
    i128 g = 0;
    for (auto x : w) {
        i128 a = x < 0 ? -x : x;
        while (a != 0) {
            i128 t = g % a;
            g = a;
            a = t;
        }
    }
    if (g > 1) {
        for (auto &x : w) {
            x /= g;
        }
    }
    return w;
}

i128 dot(const std::vector<i128> &w, const ExponentVector &p)
{
    i128 s = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        s += w[k] * p[k];
    }
    return s;
}

/// Drops points that sit above the midpoint of two others; such points are
/// never vertices, and the polyhedron is unchanged.
std::vector<ExponentVector> prune_midpoints(std::vector<ExponentVector> pts)
{
    const std::size_t n = pts.size();
    if (n < 3) {
        return pts;
    }
    std::vector<bool> drop(n, false);
    const std::size_t d = pts[0].size();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n && !drop[p]; ++q) {
            if (q == p || drop[q]) {
                continue;
            }
            for (std::size_t r = q + 1; r < n; ++r) {
                if (r == p || drop[r]) {
                    continue;
                }
                bool below = true;
                for (std::size_t k = 0; k < d && below; ++k) {
                    below = pts[q][k] + pts[r][k] <= 2 * pts[p][k];
                }
                if (below) {
                    drop[p] = true;
                    break;
                }
            }
        }
    }
    std::vector<ExponentVector> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!drop[i]) {
            out.push_back(std::move(pts[i]));
        }
    }
    return out;
}

int rank_of(std::vector<std::vector<Rational>> rows, std::size_t cols)
{
    int rank = 0;
    std::size_t r0 = 0;
    for (std::size_t c = 0; c < cols && r0 < rows.size(); ++c) {
        std::size_t piv = r0;
        while (piv < rows.size() && rows[piv][c] == 0) {
            ++piv;
        }
        if (piv == rows.size()) {
            continue;
        }
        std::swap(rows[piv], rows[r0]);
        for (std::size_t r = r0 + 1; r < rows.size(); ++r) {
            if (rows[r][c] != 0) {
                Rational f = rows[r][c] / rows[r0][c];
                for (std::size_t k = c; k < cols; ++k) {
                    rows[r][k] -= f * rows[r0][k];
                }
            }
        }
        ++r0;
        ++rank;
    }
    return rank;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t> &)> &fn)
{
    if (k > n) {
        return;
    }
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) {
            --i;
        }
        if (i == 0) {
            return;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

void check_pure_powers(const std::vector<ExponentVector> &pts, std::size_t d)
{
    for (std::size_t i = 0; i < d; ++i) {
        bool found = false;
        for (const auto &p : pts) {
            bool pure = p[i] > 0;
            for (std::size_t j = 0; j < d && pure; ++j) {
                pure = j == i || p[j] == 0;
            }
            if (pure) {
                found = true;
                break;
            }
        }
        if (!found) {
            throw std::domain_error("Newton polyhedron: ideal is not m-primary (unbounded covolume)");
        }
    }
}

} // namespace

NewtonPolyhedron::NewtonPolyhedron(int dim, std::vector<ExponentVector> vertices, std::vector<Facet> facets,
                                   std::vector<std::vector<ExponentVector>> facet_points)
    : dim_(dim), vertices_(std::move(vertices)), facets_(std::move(facets)), facet_points_(std::move(facet_points))
{
}

bool NewtonPolyhedron::contains(std::span<const std::int64_t> a) const
{
    for (auto x : a) {
        if (x < 0) {
            return false;
        }
    }
    for (const auto &f : facets_) {
        i128 s = 0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            s += static_cast<i128>(f.normal[k]) * a[k];
        }
        if (s < f.offset) {
            return false;
        }
    }
    return true;
}

NewtonPolyhedron newton_polyhedron(std::vector<ExponentVector> points, int d)
{
    if (d < 1 || d > max_hull_dim) {
        throw std::invalid_argument("Newton polyhedron: dimension " + std::to_string(d) +
                                    " outside supported range 1.." + std::to_string(max_hull_dim));
    }
    const auto ud = static_cast<std::size_t>(d);
    points = antichain(std::move(points));
    for (const auto &p : points) {
        if (std::all_of(p.begin(), p.end(), [](auto e) { return e == 0; })) {
            throw std::domain_error("Newton polyhedron of the unit ideal");
        }
    }
    check_pure_powers(points, ud);

    std::vector<Facet> facets;
    std::vector<std::vector<ExponentVector>> on_facet;

    if (d == 1) {
        facets.push_back({{1}, points.front()[0]});
        on_facet.push_back({points.front()});
        return NewtonPolyhedron(1, {points.front()}, facets, on_facet);
    }

    if (d == 2) {
        // antichain sorted by x => y strictly decreasing; lower convex chain
        std::vector<ExponentVector> hull;
        for (const auto &p : points) {
            while (hull.size() >= 2) {
                const auto &a = hull[hull.size() - 2];
                const auto &b = hull.back();
                const i128 cross = static_cast<i128>(b[0] - a[0]) * (p[1] - a[1]) -
                                   static_cast<i128>(b[1] - a[1]) * (p[0] - a[0]);
                if (cross <= 0) {
                    hull.pop_back();
                } else {
                    break;
                }
            }
            hull.push_back(p);
        }
        for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
            std::int64_t w0 = hull[i][1] - hull[i + 1][1];
            std::int64_t w1 = hull[i + 1][0] - hull[i][0];
            const std::int64_t g = std::gcd(w0, w1);
            w0 /= g;
            w1 /= g;
            const std::int64_t c = narrow(static_cast<i128>(w0) * hull[i][0] + static_cast<i128>(w1) * hull[i][1]);
            facets.push_back({{w0, w1}, c});
            std::vector<ExponentVector> pts;
            for (const auto &p : points) {
                if (static_cast<i128>(w0) * p[0] + static_cast<i128>(w1) * p[1] == c) {
                    pts.push_back(p);
                }
            }
            on_facet.push_back(std::move(pts));
        }
        // keep the lexicographic order contract
        std::vector<std::size_t> order(facets.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return facets[a].normal < facets[b].normal; });
        std::vector<Facet> fs;
        std::vector<std::vector<ExponentVector>> ps;
        for (auto i : order) {
            fs.push_back(facets[i]);
            ps.push_back(on_facet[i]);
        }
        return NewtonPolyhedron(2, hull, std::move(fs), std::move(ps));
    }

    points = prune_midpoints(std::move(points));
    std::map<std::pair<ExponentVector, std::int64_t>, std::vector<ExponentVector>> found;
    std::vector<const ExponentVector *> sel(ud);
    for_each_subset(points.size(), ud, [&](const std::vector<std::size_t> &idx) {
        for (std::size_t i = 0; i < ud; ++i) {
            sel[i] = &points[idx[i]];
        }
        auto w = hyperplane_normal(sel, ud);
        bool pos = std::all_of(w.begin(), w.end(), [](i128 x) { return x > 0; });
        bool neg = std::all_of(w.begin(), w.end(), [](i128 x) { return x < 0; });
        if (!pos && !neg) {
            return;
        }
        if (neg) {
            for (auto &x : w) {
                x = -x;
            }
        }
        const i128 c = dot(w, *sel[0]);
        ExponentVector wn(ud);
        for (std::size_t k = 0; k < ud; ++k) {
            wn[k] = narrow(w[k]);
        }
        auto key = std::make_pair(wn, narrow(c));
        if (found.count(key)) {
            return;
        }
        std::vector<ExponentVector> pts;
        for (const auto &p : points) {
            const i128 v = dot(w, p);
            if (v < c) {
                return;
            }
            if (v == c) {
                pts.push_back(p);
            }
        }
        found.emplace(std::move(key), std::move(pts));
    });

    std::vector<ExponentVector> vertices;
    for (const auto &p : points) {
        std::vector<std::vector<Rational>> active;
        for (const auto &[key, pts] : found) {
            if (std::find(pts.begin(), pts.end(), p) != pts.end()) {
                active.emplace_back(key.first.begin(), key.first.end());
            }
        }
        if (active.empty()) {
            continue;
        }
        for (std::size_t i = 0; i < ud; ++i) {
            if (p[i] == 0) {
                std::vector<Rational> e(ud, Rational(0));
                e[i] = 1;
                active.push_back(std::move(e));
            }
        }
        if (rank_of(std::move(active), ud) == d) {
            vertices.push_back(p);
        }
    }
    for (auto &[key, pts] : found) {
        facets.push_back({key.first, key.second});
        on_facet.push_back(std::move(pts));
    }
    return NewtonPolyhedron(d, std::move(vertices), std::move(facets), std::move(on_facet));
}

NewtonPolyhedron newton_polyhedron(const MonomialIdeal &I)
{
    if (I.ambient()->has_quotient()) {
        throw std::invalid_argument("Newton polyhedron requires a polynomial ambient (no quotient)");
    }
    return newton_polyhedron(I.gens(), I.num_vars());
}

namespace {

using RPoint = std::vector<Rational>;

Rational polygon_area(std::vector<RPoint> pts)
{
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) {
        return 0;
    }
    auto cross = [](const RPoint &o, const RPoint &a, const RPoint &b) {
        return Rational((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]));
    };
    std::vector<RPoint> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) {
            --k;
        }
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) {
            --k;
        }
        hull[k++] = pts[i - 1];
    }
    hull.resize(k - 1);
    Rational twice = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto &a = hull[i];
        const auto &b = hull[(i + 1) % hull.size()];
        twice += a[0] * b[1] - a[1] * b[0];
    }
    return abs(twice) / 2;
}

Rational polytope_volume_3d(const std::vector<RPoint> &pts)
{
    const std::size_t n = pts.size();
    if (n < 4) {
        return 0;
    }
    RPoint centroid(3, Rational(0));
    for (const auto &p : pts) {
        for (std::size_t k = 0; k < 3; ++k) {
            centroid[k] += p[k];
        }
    }
    for (auto &c : centroid) {
        c /= static_cast<long>(n);
    }
    std::vector<std::pair<RPoint, Rational>> seen;
    Rational total = 0;
    for_each_subset(n, 3, [&](const std::vector<std::size_t> &idx) {
        const auto &a = pts[idx[0]];
        const auto &b = pts[idx[1]];
        const auto &c = pts[idx[2]];
        RPoint u{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
        RPoint v{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
        RPoint w{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
        if (w[0] == 0 && w[1] == 0 && w[2] == 0) {
            return;
        }
        auto dotw = [&](const RPoint &p) { return Rational(w[0] * p[0] + w[1] * p[1] + w[2] * p[2]); };
        Rational off = dotw(a);
        // orient so that the centroid lies on the >= side
        if (dotw(centroid) < off) {
            for (auto &x : w) {
                x = -x;
            }
            off = -off;
        }
        // normalize scale: first nonzero entry has magnitude 1
        Rational s = 0;
        for (const auto &x : w) {
            if (x != 0) {
                s = abs(x);
                break;
            }
        }
        for (auto &x : w) {
            x /= s;
        }
        off /= s;
        for (const auto &[sw, so] : seen) {
            if (sw == w && so == off) {
                return;
            }
        }
        std::vector<RPoint> face;
        for (const auto &p : pts) {
            const Rational val = dotw(p);
            if (val < off) {
                return;
            }
            if (val == off) {
                face.push_back(p);
            }
        }
        seen.emplace_back(w, off);
        std::size_t j = 0;
        while (w[j] == 0) {
            ++j;
        }
        std::vector<RPoint> proj;
        for (const auto &p : face) {
            RPoint q;
            for (std::size_t k = 0; k < 3; ++k) {
                if (k != j) {
                    q.push_back(p[k]);
                }
            }
            proj.push_back(std::move(q));
        }
        const Rational height = Rational(w[0] * centroid[0] + w[1] * centroid[1] + w[2] * centroid[2]) - off;
        total += height * polygon_area(std::move(proj)) / abs(w[j]) / 3;
    });
    return total;
}

} // namespace

Rational polytope_volume(const std::vector<std::vector<Rational>> &points, int k)
{
    switch (k) {
    case 0:
        return points.empty() ? Rational(0) : Rational(1);
    case 1: {
        if (points.empty()) {
            return 0;
        }
        Rational lo = points[0][0], hi = points[0][0];
        for (const auto &p : points) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        return hi - lo;
    }
    case 2:
        return polygon_area(points);
    case 3:
        return polytope_volume_3d(points);
    default:
        throw std::invalid_argument("polytope_volume: dimension above 3");
    }
}

Rational covolume(const NewtonPolyhedron &P)
{
    const int d = P.dim();
    const auto ud = static_cast<std::size_t>(d);
    // complement = union of pyramids with apex 0 over the bounded facets
    Rational total = 0;
    for (std::size_t f = 0; f < P.bounded_facets().size(); ++f) {
        const auto &facet = P.bounded_facets()[f];
        const std::size_t j = ud - 1;
        std::vector<std::vector<Rational>> proj;
        for (const auto &p : P.facet_points()[f]) {
            std::vector<Rational> q;
            for (std::size_t k = 0; k < j; ++k) {
                q.emplace_back(p[k]);
            }
            proj.push_back(std::move(q));
        }
        const Rational base = polytope_volume(proj, d - 1);
        total += Rational(facet.offset) * base / Rational(facet.normal[j]) / d;
    }
    return total;
}

MonomialIdeal integral_closure(const MonomialIdeal &I)
{
    const auto P = newton_polyhedron(I);
    std::vector<LinearConstraint> cons;
    for (const auto &f : P.bounded_facets()) {
        cons.push_back({f.normal, Rational(f.offset)});
    }
    return lattice_ideal(I.ambient(), cons);
}

std::vector<std::pair<ExponentVector, std::int64_t>> rees_weights(const MonomialIdeal &I)
{
    const auto P = newton_polyhedron(I);
    std::vector<std::pair<ExponentVector, std::int64_t>> out;
    for (const auto &f : P.bounded_facets()) {
        out.emplace_back(f.normal, f.offset);
    }
    return out;
}

MonomialIdeal lattice_ideal(AmbientPtr ambient, const std::vector<LinearConstraint> &constraints)
{
    const int d = ambient->num_vars();
    const auto ud = static_cast<std::size_t>(d);
    std::vector<const LinearConstraint *> active;
    for (const auto &c : constraints) {
        if (c.weights.size() != ud) {
            throw std::invalid_argument("constraint arity mismatch");
        }
        if (std::any_of(c.weights.begin(), c.weights.end(), [](auto w) { return w < 0; })) {
            throw std::invalid_argument("constraint weights must be nonnegative");
        }
        if (c.threshold > 0) {
            active.push_back(&c);
        }
    }
    if (active.empty()) {
        return MonomialIdeal::unit(ambient);
    }
    if (d == 0) {
        throw std::domain_error("positive threshold in zero variables");
    }
    // box bounds: minimal points have a_i <= B_i
    std::vector<std::int64_t> bound(ud, 0);
    for (std::size_t i = 0; i < ud; ++i) {
        for (const auto *c : active) {
            if (c->weights[i] == 0) {
                throw std::domain_error("lattice_ideal: axis " + std::to_string(i) + " is unbounded");
            }
            bound[i] = std::max(bound[i], ceil_i64(c->threshold / c->weights[i]));
        }
    }
    const std::size_t last = ud - 1;
    std::size_t cells = 1;
    for (std::size_t i = 0; i < last; ++i) {
        cells *= static_cast<std::size_t>(bound[i] + 1);
        if (cells > (std::size_t{1} << 28)) {
            throw std::length_error("lattice_ideal: enumeration box too large");
        }
    }
    std::vector<std::int64_t> height(cells, 0);
    std::vector<std::int64_t> a(last, 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        std::int64_t t = 0;
        for (const auto *c : active) {
            Rational rem = c->threshold;
            for (std::size_t i = 0; i < last; ++i) {
                rem -= c->weights[i] * a[i];
            }
            if (rem > 0) {
                t = std::max(t, ceil_i64(rem / c->weights[last]));
            }
        }
        height[cell] = t;
        for (std::size_t i = 0; i < last; ++i) {
            if (++a[i] <= bound[i]) {
                break;
            }
            a[i] = 0;
        }
    }
    // stride of coordinate i in the mixed-radix cell index
    std::vector<std::size_t> stride(last, 1);
    for (std::size_t i = 1; i < last; ++i) {
        stride[i] = stride[i - 1] * static_cast<std::size_t>(bound[i - 1] + 1);
    }
    std::vector<ExponentVector> gens;
    std::fill(a.begin(), a.end(), 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        bool minimal = true;
        for (std::size_t i = 0; i < last && minimal; ++i) {
            if (a[i] > 0 && height[cell - stride[i]] <= height[cell]) {
                minimal = false;
            }
        }
        if (minimal) {
            ExponentVector g(a.begin(), a.end());
            g.push_back(height[cell]);
            gens.push_back(std::move(g));
        }
        for (std::size_t i = 0; i < last; ++i) {
            if (++a[i] <= bound[i]) {
                break;
            }
            a[i] = 0;
        }
    }
    return MonomialIdeal(std::move(ambient), std::move(gens));
}

Rational min_linear(const ExponentVector &w, const std::vector<LinearConstraint> &constraints)
{
    const std::size_t d = w.size();
    if (std::any_of(w.begin(), w.end(), [](auto x) { return x <= 0; })) {
        throw std::invalid_argument("min_linear needs a strictly positive objective");
    }
    // rows: the constraints, then the coordinate hyperplanes x_i >= 0
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (const auto &c : constraints) {
        if (c.weights.size() != d) {
            throw std::invalid_argument("constraint arity mismatch");
        }
        rows.emplace_back(c.weights.begin(), c.weights.end());
        rhs.push_back(c.threshold);
    }
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<Rational> e(d, Rational(0));
        e[i] = 1;
        rows.push_back(std::move(e));
        rhs.emplace_back(0);
    }
    std::optional<Rational> best;
    std::vector<std::size_t> pick;
    auto rec = [&](auto &&self, std::size_t from) -> void {
        if (pick.size() == d) {
            std::vector<std::vector<Rational>> a;
            std::vector<Rational> b;
            for (auto k : pick) {
                a.push_back(rows[k]);
                b.push_back(rhs[k]);
            }
            auto x = detail::solve_exact(std::move(a), std::move(b));
            if (!x) {
                return;
            }
            for (std::size_t k = 0; k < rows.size(); ++k) {
                Rational v = 0;
                for (std::size_t i = 0; i < d; ++i) {
                    v += rows[k][i] * (*x)[i];
                }
                if (v < rhs[k]) {
                    return;
                }
            }
            Rational obj = 0;
            for (std::size_t i = 0; i < d; ++i) {
                obj += Rational(w[i]) * (*x)[i];
            }
            if (!best || obj < *best) {
                best = obj;
            }
            return;
        }
        for (std::size_t k = from; k < rows.size(); ++k) {
            pick.push_back(k);
            self(self, k + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    if (!best) {
        throw std::logic_error("min_linear: no vertex found");
    }
    return *best;
}

} // namespace multfam
