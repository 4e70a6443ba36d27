#pragma once

// Test-only oracles, independent of the library's computation paths.

#include <vector>

#include "anglerank/intpoly.hpp"

namespace oracles {

using anglerank::IntPoly;
using anglerank::RatPoly;

// Monic polynomial with the given roots, expanded directly.
inline RatPoly poly_from_roots(const std::vector<mpq_class>& roots) {
    std::vector<mpq_class> c{1};
    for (const mpq_class& r : roots) {
        std::vector<mpq_class> next(c.size() + 1, mpq_class(0));
        for (size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    // stored constant first; the loop above already builds it that way
    return RatPoly(std::move(c));
}

// Composed product by direct expansion over all root pairs.
inline RatPoly composed_product_by_roots(const std::vector<mpq_class>& fr,
                                         const std::vector<mpq_class>& gr) {
    std::vector<mpq_class> prods;
    for (const auto& a : fr)
        for (const auto& b : gr) prods.push_back(a * b);
    return poly_from_roots(prods);
}

// ---------------------------------------------------------------------------
// Resultant oracle: H(T) = Res_S(F(S), S^{deg G} G(T/S)) computed as the
// determinant of the Sylvester matrix with entries in Q[T], by fraction-free
// Bareiss elimination.

// entries[i][j] is a polynomial in T
using PolyMatrix = std::vector<std::vector<RatPoly>>;

inline RatPoly poly_matrix_det(PolyMatrix m) {
    const size_t n = m.size();
    RatPoly prev_pivot = RatPoly::one();
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return RatPoly::zero();
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                RatPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                auto [q, r] = divrem(num, prev_pivot);
                if (!r.is_zero()) throw std::logic_error("Bareiss division not exact");
                m[i][j] = q;
            }
            m[i][k] = RatPoly::zero();
        }
        prev_pivot = m[k][k];
    }
    RatPoly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

// S^{deg G} G(T/S) as a polynomial in S with Q[T] coefficients:
// sum_j g_j T^j S^{deg G - j}.  Sylvester matrix of (F(S), that) in S.
inline RatPoly composed_product_by_resultant(const RatPoly& f, const RatPoly& g) {
    const int df = f.degree(), dg = g.degree();
    const size_t n = static_cast<size_t>(df + dg);
    PolyMatrix m(n, std::vector<RatPoly>(n, RatPoly::zero()));
    // rows 0..dg-1: shifts of F's coefficients (constants in T)
    for (int row = 0; row < dg; ++row)
        for (int k = 0; k <= df; ++k) {
            std::vector<mpq_class> c{f.coeff(df - k)};
            m[static_cast<size_t>(row)][static_cast<size_t>(row + k)] = RatPoly(std::move(c));
        }
    // rows dg..dg+df-1: shifts of the second polynomial's S-coefficients;
    // coefficient of S^(dg-j) is g_j T^j
    for (int row = 0; row < df; ++row)
        for (int j = 0; j <= dg; ++j) {
            std::vector<mpq_class> c(static_cast<size_t>(j) + 1, mpq_class(0));
            c.back() = g.coeff(j);
            m[static_cast<size_t>(dg + row)][static_cast<size_t>(row + j)] = RatPoly(std::move(c));
        }
    RatPoly det = poly_matrix_det(std::move(m));
    return det.is_zero() ? det : det.monic();
}

} // namespace oracles
