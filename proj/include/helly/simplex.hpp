#pragma once
#include <vector>

#include "helly/linalg.hpp"

namespace helly {

// Dense tableau simplex for max c^T y s.t. A y <= b, y >= 0, with b >= 0 so
// the slack basis starts feasible. Bland's rule throughout (no cycling).
struct SimplexResult {
    Vec y;        // primal solution
    double value = 0.0;
    Vec row_duals;  // shadow prices of the <= rows
    bool optimal = false;
    bool unbounded = false;
    int pivots = 0;
};

SimplexResult simplex_max(const Mat& a, const Vec& b, const Vec& c, double tol = 1e-9);

}  // namespace helly
