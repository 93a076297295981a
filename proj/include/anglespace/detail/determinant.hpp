#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace anglespace::detail {

// Determinant of a dense row-major n*n matrix by LU factorization with
// partial pivoting.  The copy is destroyed in place.
inline double lu_determinant(std::vector<double> m, std::size_t n) {
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(m[col * n + col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double cand = std::abs(m[row * n + col]);
            if (cand > best) {
                best = cand;
                pivot = row;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != col) {
            for (std::size_t k = col; k < n; ++k) std::swap(m[pivot * n + k], m[col * n + k]);
            det = -det;
        }
        const double diag = m[col * n + col];
        det *= diag;
        for (std::size_t row = col + 1; row < n; ++row) {
            const double factor = m[row * n + col] / diag;
            if (factor == 0.0) continue;
            for (std::size_t k = col + 1; k < n; ++k) m[row * n + k] -= factor * m[col * n + k];
        }
    }
    return det;
}

inline double max_abs_entry(const std::vector<double>& m) {
    double best = 0.0;
    for (double v : m) best = std::max(best, std::abs(v));
    return best;
}

} // namespace anglespace::detail
