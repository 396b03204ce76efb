#ifndef MULTFAM_SRC_LINALG_HPP
#define MULTFAM_SRC_LINALG_HPP

#include <optional>
#include <utility>
#include <vector>

#include "multfam/rational.hpp"

namespace multfam::detail {

/// Exact solve of a square or overdetermined but consistent system.
/// Returns nullopt when the columns are dependent or the rows disagree.
inline std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs)
{
    if (rows.empty()) {
        return std::nullopt;
    }
    const std::size_t cols = rows.front().size();
    const std::size_t m = rows.size();
    std::size_t r = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < cols && r < m; ++c) {
        std::size_t p = r;
        while (p < m && rows[p][c] == 0) {
            ++p;
        }
        if (p == m) {
            return std::nullopt;
        }
        std::swap(rows[p], rows[r]);
        std::swap(rhs[p], rhs[r]);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || rows[i][c] == 0) {
                continue;
            }
            const Rational f = rows[i][c] / rows[r][c];
            for (std::size_t k = c; k < cols; ++k) {
                rows[i][k] -= f * rows[r][k];
            }
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    if (r < cols) {
        return std::nullopt;
    }
    for (std::size_t i = r; i < m; ++i) {
        if (rhs[i] != 0) {
            return std::nullopt;
        }
    }
    std::vector<Rational> x(cols);
    for (std::size_t i = 0; i < r; ++i) {
        x[pivot_col[i]] = rhs[i] / rows[i][pivot_col[i]];
    }
    return x;
}

} // namespace multfam::detail

#endif
