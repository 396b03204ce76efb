#include "oracles.hpp"

#include <numeric>

namespace oracle {

namespace {

struct Half
{
    std::vector<std::int64_t> w;
    std::int64_t c;
};

// Every hyperplane through d of the points with a positive normal that has
// all points on its upper side.
std::vector<Half> supports(const std::vector<ExponentVector> &pts, int d)
{
    std::vector<Half> out;
    const std::size_t n = pts.size();
    auto try_normal = [&](std::vector<std::int64_t> w, const ExponentVector &p0) {
        bool pos = std::all_of(w.begin(), w.end(), [](auto x) { return x > 0; });
        bool neg = std::all_of(w.begin(), w.end(), [](auto x) { return x < 0; });
        if (!pos && !neg) {
            return;
        }
        if (neg) {
            for (auto &x : w) {
                x = -x;
            }
        }
        std::int64_t c = 0;
        for (int i = 0; i < d; ++i) {
            c += w[i] * p0[i];
        }
        for (const auto &p : pts) {
            std::int64_t v = 0;
            for (int i = 0; i < d; ++i) {
                v += w[i] * p[i];
            }
            if (v < c) {
                return;
            }
        }
        out.push_back({w, c});
    };
    if (d == 2) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                try_normal({pts[a][1] - pts[b][1], pts[b][0] - pts[a][0]}, pts[a]);
            }
        }
    } else if (d == 3) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                for (std::size_t c = b + 1; c < n; ++c) {
                    std::vector<std::int64_t> u(3), v(3);
                    for (int i = 0; i < 3; ++i) {
                        u[i] = pts[b][i] - pts[a][i];
                        v[i] = pts[c][i] - pts[a][i];
                    }
                    std::vector<std::int64_t> w{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                                u[0] * v[1] - u[1] * v[0]};
                    try_normal(w, pts[a]);
                }
            }
        }
    }
    return out;
}

} // namespace

Rational fine_grid_covolume(const std::vector<ExponentVector> &points, int d, int k)
{
    const auto box = pure_power_box(points, static_cast<std::size_t>(d));
    const auto hs = supports(points, d);
    std::vector<std::int64_t> cells(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
        cells[i] = box[i] * k;
    }
    Integer outside = 0;
    // cell midpoints (2a+1)/(2k); compare 2k·w·x = w·(2a+1) against 2k·c
    for_box(cells, [&](const ExponentVector &a) {
        for (const auto &h : hs) {
            std::int64_t v = 0;
            for (int i = 0; i < d; ++i) {
                v += h.w[i] * (2 * a[i] + 1);
            }
            if (v < 2 * k * h.c) {
                ++outside;
                return;
            }
        }
    });
    Integer scale = 1;
    for (int i = 0; i < d; ++i) {
        scale *= k;
    }
    return multfam::make_rational(outside, scale);
}

} // namespace oracle
