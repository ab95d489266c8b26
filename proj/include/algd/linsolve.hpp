#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "algd/dual.hpp"
#include "algd/errors.hpp"

namespace algd {

/// Infinity-norm condition estimate on a primal matrix (explicit inverse;
/// fine at these sizes).
inline double condition_estimate(const std::vector<std::vector<double>>& a, double norm_a) {
    const std::size_t d = a.size();
    std::vector<std::vector<double>> m = a;
    std::vector<std::vector<double>> inv(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < d; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (m[piv][col] == 0.0) return std::numeric_limits<double>::infinity();
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        double inv_p = 1.0 / m[col][col];
        for (std::size_t j = 0; j < d; ++j) {
            m[col][j] *= inv_p;
            inv[col][j] *= inv_p;
        }
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col) continue;
            double f = m[r][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    double norm_inv = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < d; ++j) row += std::abs(inv[i][j]);
        norm_inv = std::max(norm_inv, row);
    }
    return norm_a * norm_inv;
}

/// Dense Gaussian elimination with partial pivoting, usable on jet scalars
/// (pivot selection compares primal magnitudes, so solves stay differentiable).
/// Desk-scale dimensions only; no blocking, no refinement.
template <class T>
std::vector<T> solve_dense(std::vector<std::vector<T>> a, std::vector<T> rhs,
                           double* condition_out = nullptr) {
    const std::size_t d = a.size();
    if (rhs.size() != d) throw ConfigError("solve_dense: shape mismatch");

    double norm_a = 0.0;
    std::vector<std::vector<double>> prim(d, std::vector<double>(d));
    for (std::size_t i = 0; i < d; ++i) {
        double row = 0.0;
        if (a[i].size() != d) throw ConfigError("solve_dense: ragged matrix");
        for (std::size_t j = 0; j < d; ++j) {
            prim[i][j] = primal_of(a[i][j]);
            row += std::abs(prim[i][j]);
        }
        norm_a = std::max(norm_a, row);
    }

    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        double best = std::abs(primal_of(a[col][col]));
        for (std::size_t r = col + 1; r < d; ++r) {
            double mag = std::abs(primal_of(a[r][col]));
            if (mag > best) {
                best = mag;
                piv = r;
            }
        }
        if (best < 1e-12 * (norm_a > 0 ? norm_a : 1.0))
            throw SolveError("solve_dense: singular matrix (pivot " + std::to_string(best) + ")",
                             best > 0 ? norm_a / best : std::numeric_limits<double>::infinity());
        if (piv != col) {
            std::swap(a[piv], a[col]);
            std::swap(rhs[piv], rhs[col]);
        }
        for (std::size_t r = col + 1; r < d; ++r) {
            T factor = a[r][col] / a[col][col];
            for (std::size_t j = col; j < d; ++j) a[r][j] = a[r][j] - factor * a[col][j];
            rhs[r] = rhs[r] - factor * rhs[col];
        }
    }

    std::vector<T> x(d);
    for (std::size_t ri = d; ri-- > 0;) {
        T acc = rhs[ri];
        for (std::size_t j = ri + 1; j < d; ++j) acc = acc - a[ri][j] * x[j];
        x[ri] = acc / a[ri][ri];
    }

    if (condition_out) *condition_out = condition_estimate(prim, norm_a);
    return x;
}

} // namespace algd
