#include "helly/simplex.hpp"

#include <cmath>

#include "helly/errors.hpp"

namespace helly {

SimplexResult simplex_max(const Mat& a, const Vec& b, const Vec& c, double tol) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != m || c.size() != n) throw input_error("simplex_max: shape mismatch");
    for (double bi : b)
        if (bi < 0) throw input_error("simplex_max: requires b >= 0");

    // tableau: m constraint rows + objective row; n vars + m slacks + rhs
    Mat t(m + 1, n + m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t(i, j) = a(i, j);
        t(i, n + i) = 1.0;
        t(i, n + m) = b[i];
    }
    for (std::size_t j = 0; j < n; ++j) t(m, j) = -c[j];

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    SimplexResult res;
    const int max_pivots = 20000 + static_cast<int>(50 * (m + n));
    while (res.pivots < max_pivots) {
        // Bland: entering = lowest-index column with negative reduced cost
        std::size_t enter = n + m;
        for (std::size_t j = 0; j < n + m; ++j)
            if (t(m, j) < -tol) {
                enter = j;
                break;
            }
        if (enter == n + m) {
            res.optimal = true;
            break;
        }
        // leaving: min ratio, ties by lowest basis variable index
        std::size_t leave = m;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t(i, enter) > tol) {
                const double ratio = t(i, n + m) / t(i, enter);
                if (leave == m || ratio < best_ratio - 1e-12 ||
                    (std::fabs(ratio - best_ratio) <= 1e-12 && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave == m) {
            res.unbounded = true;
            break;
        }
        // pivot
        const double piv = t(leave, enter);
        for (std::size_t j = 0; j <= n + m; ++j) t(leave, j) /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = t(i, enter);
            if (std::fabs(f) < 1e-15) continue;
            for (std::size_t j = 0; j <= n + m; ++j) t(i, j) -= f * t(leave, j);
        }
        basis[leave] = enter;
        ++res.pivots;
    }
    if (!res.optimal && !res.unbounded) throw numeric_error("simplex_max: pivot limit reached");

    res.y.assign(n, 0.0);
    if (res.optimal) {
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] < n) res.y[basis[i]] = t(i, n + m);
        res.value = t(m, n + m);
        res.row_duals.assign(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) res.row_duals[i] = t(m, n + i);
    }
    return res;
}

}  // namespace helly
