#pragma once
#include <utility>

#include "helly/linalg.hpp"
#include "helly/rng.hpp"

namespace helly {

// Shrinking-perturbation minimization: greedy probes along coordinate axes
// plus seeded random directions, halving the step per level. Derivative-free
// and reproducible; adequate for the low-dimensional convex subproblems here.
struct PatternOptions {
    double step0 = 1.0;
    int levels = 40;
    double shrink = 0.5;
    int random_dirs = 4;
    int max_evals = 200000;
};

template <class F>
std::pair<Vec, double> pattern_minimize(F&& f, Vec x, const PatternOptions& opt, Rng& rng) {
    double best = f(x);
    double step = opt.step0;
    int evals = 1;
    const std::size_t d = x.size();
    for (int level = 0; level < opt.levels && evals < opt.max_evals; ++level) {
        bool improved = true;
        while (improved && evals < opt.max_evals) {
            improved = false;
            for (std::size_t i = 0; i < d; ++i) {
                for (double sgn : {1.0, -1.0}) {
                    Vec cand = x;
                    cand[i] += sgn * step;
                    const double v = f(cand);
                    ++evals;
                    if (v < best - 1e-15) {
                        best = v;
                        x = cand;
                        improved = true;
                    }
                }
            }
            for (int r = 0; r < opt.random_dirs; ++r) {
                Vec dir = rng.unit_vector(d);
                Vec cand = x + step * dir;
                const double v = f(cand);
                ++evals;
                if (v < best - 1e-15) {
                    best = v;
                    x = cand;
                    improved = true;
                }
            }
        }
        step *= opt.shrink;
    }
    return {std::move(x), best};
}

}  // namespace helly
