#include "helly/piercing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "helly/errors.hpp"
#include "helly/rng.hpp"
#include "helly/simplex.hpp"

namespace helly {

namespace {

long long choose(std::size_t n, std::size_t r) {
    if (r > n) return 0;
    long long v = 1;
    for (std::size_t i = 0; i < r; ++i) {
        v = v * static_cast<long long>(n - i) / static_cast<long long>(i + 1);
        if (v > (1LL << 40)) return 1LL << 40;
    }
    return v;
}

void subsets(std::size_t n, std::size_t r, const std::function<void(const std::vector<int>&)>& fn) {
    if (r > n) return;
    std::vector<int> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = static_cast<int>(i);
    while (true) {
        fn(idx);
        long long i = static_cast<long long>(r) - 1;
        while (i >= 0 && idx[i] == static_cast<int>(n - r + i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (std::size_t j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

bool check_pq_condition(const Family& family, std::size_t p, std::size_t k,
                        const SearchConfig& cfg) {
    family.validate();
    const std::size_t n = family.size();
    if (p < k + 2) throw input_error("check_pq_condition: requires p >= k+2");
    if (p > n) throw input_error("check_pq_condition: p exceeds family size");
    if (choose(n, p) > 2000000)
        throw resource_error("check_pq_condition: subset count exceeds budget; rerun with sampling");

    const auto stats = tuple_alpha(family, k, cfg);
    std::set<std::vector<int>> hit;
    for (const TupleRecord& t : stats.table.tuples)
        if (t.hit) hit.insert(t.members);

    bool ok = true;
    subsets(n, p, [&](const std::vector<int>& pick) {
        if (!ok) return;
        bool found = false;
        subsets(p, k + 2, [&](const std::vector<int>& pos) {
            if (found) return;
            std::vector<int> tup(k + 2);
            for (std::size_t a = 0; a < k + 2; ++a) tup[a] = pick[pos[a]];
            std::sort(tup.begin(), tup.end());
            if (hit.count(tup)) found = true;
        });
        if (!found) ok = false;
    });
    return ok;
}

namespace {

std::vector<long long> sphere_canonical_key(const GreatSphere& g, double resolution) {
    const std::size_t amb = g.basis.rows();
    std::vector<long long> key;
    key.reserve(amb * amb);
    for (std::size_t i = 0; i < amb; ++i)
        for (std::size_t j = 0; j < amb; ++j) {
            double p = 0.0;
            for (std::size_t a = 0; a < g.basis.cols(); ++a) p += g.basis(i, a) * g.basis(j, a);
            key.push_back(std::llround(p / resolution));
        }
    return key;
}

}  // namespace

CandidateSet witness_candidates_spherical(const std::vector<SphericalBody>& bodies, std::size_t k,
                                          const SearchConfig& cfg) {
    const std::size_t n = bodies.size();
    if (n < k + 2) throw input_error("witness_candidates_spherical: family smaller than k+2");
    const auto stats = spherical_tuple_alpha(bodies, k, cfg);

    CandidateSet out;
    out.n_bodies = n;
    std::set<std::vector<long long>> seen;
    for (const TupleRecord& t : stats.table.tuples) {
        if (!t.hit || !t.witness || t.witness->kind != WitnessKind::great_sphere) continue;
        const GreatSphere& g = t.witness->sphere;
        // 0-spheres arrive as a single axis column; widen to k+1 columns
        GreatSphere cand = g;
        if (cand.basis.cols() != k + 1) {
            Mat full(cand.basis.rows(), k + 1);
            Mat rest = orthonormal_complement(cand.basis);
            for (std::size_t j = 0; j < cand.basis.cols(); ++j) full.set_col(j, cand.basis.col(j));
            for (std::size_t j = cand.basis.cols(); j <= k; ++j)
                full.set_col(j, rest.col(j - cand.basis.cols()));
            cand = GreatSphere{full};
        }
        if (seen.insert(sphere_canonical_key(cand, 1e-6)).second) out.spheres.push_back(cand);
    }
    if (out.spheres.empty()) return out;

    out.coverage.assign(out.spheres.size(), std::vector<bool>(n, false));
    for (std::size_t i = 0; i < out.spheres.size(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.coverage[i][j] = great_sphere_hits_body(out.spheres[i], bodies[j]).hit;
    return out;
}

CandidateSet witness_candidates(const Family& family, std::size_t k, const SearchConfig& cfg) {
    family.validate();
    const std::size_t n = family.size();
    if (n < k + 2) throw input_error("witness_candidates: family smaller than k+2");

    const auto stats = tuple_alpha(family, k, cfg);
    CandidateSet out;
    out.n_bodies = n;

    std::set<std::vector<long long>> seen;
    auto add = [&](const KFlat& f) {
        const auto key = flat_canonical_key(f, 1e-6);
        if (!seen.insert(key).second) return;
        out.flats.push_back(f);
    };

    for (const TupleRecord& t : stats.table.tuples)
        if (t.hit && t.witness && t.witness->kind == WitnessKind::euclidean_flat)
            add(t.witness->flat);
    if (out.flats.empty()) return out;  // no hit tuples: empty candidate set

    // coverage-refined variants of the best few distinct candidates; the
    // candidate count stays within the C(n, k+2) construction bound
    const auto cap = static_cast<std::size_t>(choose(n, k + 2));
    auto coverage_count = [&](const KFlat& f) {
        std::size_t c = 0;
        for (const Body& b : family.bodies)
            if (flat_hits_body(f, b).hit) ++c;
        return c;
    };
    std::vector<std::pair<std::size_t, std::size_t>> ranked;  // (count, index)
    for (std::size_t i = 0; i < out.flats.size(); ++i) ranked.emplace_back(coverage_count(out.flats[i]), i);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    const std::size_t refine_n = std::min<std::size_t>(5, ranked.size());
    for (std::size_t r = 0; r < refine_n && out.flats.size() < cap; ++r) {
        SearchConfig sc = cfg;
        sc.seed = mix_seed(cfg.seed, 0xabcd00 + r);
        add(refine_flat_coverage(out.flats[ranked[r].second], family, sc));
    }

    out.coverage.assign(out.flats.size(), std::vector<bool>(n, false));
    for (std::size_t i = 0; i < out.flats.size(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.coverage[i][j] = flat_hits_body(out.flats[i], family.bodies[j]).hit;
    return out;
}

LPSolution fractional_transversal_lp(const CandidateSet& cands) {
    const std::size_t m = cands.size();
    const std::size_t n = cands.n_bodies;
    if (m == 0) throw input_error("fractional_transversal_lp: empty candidate set");
    for (std::size_t j = 0; j < n; ++j) {
        bool covered = false;
        for (std::size_t i = 0; i < m && !covered; ++i) covered = cands.coverage[i][j];
        if (!covered)
            throw input_error("fractional_transversal_lp: infeasible, body " + std::to_string(j) +
                              " is covered by no candidate");
    }

    // packing dual: max sum y_H  s.t.  for each flat v, sum_{H hit by v} y_H <= 1
    Mat a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = cands.coverage[i][j] ? 1.0 : 0.0;
    const Vec b(m, 1.0);
    const Vec c(n, 1.0);
    const auto sol = simplex_max(a, b, c);
    if (!sol.optimal) throw numeric_error("fractional_transversal_lp: simplex failed");

    LPSolution out;
    out.dual_weights = sol.y;
    out.dual_value = 0.0;
    for (double y : sol.y) out.dual_value += y;
    out.weights = sol.row_duals;  // covering weights are the packing shadow prices
    out.value = 0.0;
    for (double t : out.weights) out.value += t;
    out.gap = std::fabs(out.value - out.dual_value);

    // feasibility audit of the recovered covering weights
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (cands.coverage[i][j]) s += out.weights[i];
        if (s < 1.0 - 1e-6)
            throw numeric_error("fractional_transversal_lp: covering constraint violated after solve");
    }
    return out;
}

namespace {

std::vector<long long> candidate_key(const CandidateSet& cands, std::size_t i) {
    return cands.spherical() ? sphere_canonical_key(cands.spheres[i], 1e-9)
                             : flat_canonical_key(cands.flats[i], 1e-9);
}

std::vector<std::size_t> greedy_cover(const CandidateSet& cands) {
    const std::size_t m = cands.size();
    const std::size_t n = cands.n_bodies;
    std::vector<bool> covered(n, false);
    std::size_t remaining = n;
    std::vector<std::size_t> picked;
    while (remaining > 0) {
        std::size_t best = m;
        std::size_t best_gain = 0;
        std::vector<long long> best_key;
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t gain = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (!covered[j] && cands.coverage[i][j]) ++gain;
            if (gain == 0) continue;
            const auto key = candidate_key(cands, i);
            if (best == m || gain > best_gain || (gain == best_gain && key < best_key)) {
                best = i;
                best_gain = gain;
                best_key = key;
            }
        }
        if (best == m) break;  // uncoverable remainder (callers pre-check)
        picked.push_back(best);
        for (std::size_t j = 0; j < n; ++j)
            if (cands.coverage[best][j]) {
                if (!covered[j]) --remaining;
                covered[j] = true;
            }
    }
    return picked;
}

}  // namespace

PiercingResult round_piercing(const CandidateSet& cands, const LPSolution& lp,
                              RoundingMethod method, std::uint64_t seed) {
    const std::size_t m = cands.size();
    const std::size_t n = cands.n_bodies;
    if (m == 0) throw input_error("round_piercing: empty candidate set");

    PiercingResult out;
    out.method = method;
    out.tau_star = lp.value;

    std::vector<std::size_t> picked;
    if (method == RoundingMethod::greedy) {
        picked = greedy_cover(cands);
    } else {
        Rng rng(seed);
        double total = 0.0;
        for (double w : lp.weights) total += w;
        std::vector<double> cum(m, 0.0);
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            acc += lp.weights[i] / std::max(total, 1e-12);
            cum[i] = acc;
        }
        const int per_round = std::max<int>(
            1, static_cast<int>(std::ceil(2.0 * lp.value * std::log(std::max(2.0, static_cast<double>(n))))));
        std::set<std::size_t> chosen;
        std::vector<bool> covered(n, false);
        auto is_covered = [&]() {
            for (std::size_t j = 0; j < n; ++j)
                if (!covered[j]) return false;
            return true;
        };
        bool done = false;
        for (int round = 0; round < 100 && !done; ++round) {
            for (int s = 0; s < per_round; ++s) {
                const double u = rng.uniform();
                std::size_t pick = m - 1;
                for (std::size_t i = 0; i < m; ++i)
                    if (u <= cum[i]) {
                        pick = i;
                        break;
                    }
                if (chosen.insert(pick).second)
                    for (std::size_t j = 0; j < n; ++j)
                        if (cands.coverage[pick][j]) covered[j] = true;
            }
            done = is_covered();
        }
        if (!done) {
            out.fell_back_to_greedy = true;
            picked = greedy_cover(cands);
        } else {
            picked.assign(chosen.begin(), chosen.end());
            // prune redundant flats in ascending index order
            for (std::size_t a = 0; a < picked.size();) {
                std::vector<bool> cov(n, false);
                for (std::size_t b = 0; b < picked.size(); ++b) {
                    if (b == a) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        if (cands.coverage[picked[b]][j]) cov[j] = true;
                }
                bool all = true;
                for (std::size_t j = 0; j < n; ++j)
                    if (!cov[j]) all = false;
                if (all)
                    picked.erase(picked.begin() + static_cast<long>(a));
                else
                    ++a;
            }
        }
    }

    for (std::size_t i : picked) {
        if (cands.spherical())
            out.spheres.push_back(cands.spheres[i]);
        else
            out.flats.push_back(cands.flats[i]);
    }
    out.tau = static_cast<int>(picked.size());
    return out;
}

int shatter_estimate(const Family& family, std::size_t k, std::size_t m,
                     const CandidateSet& cands, std::uint64_t seed, bool include_random) {
    family.validate();
    const std::size_t n = family.size();
    if (m > n || m > 20) throw input_error("shatter_estimate: m must be <= min(n, 20)");
    const std::size_t d = family.dim();

    std::set<std::vector<bool>> masks;
    auto add_flat = [&](const KFlat& f) {
        std::vector<bool> mask(m, false);
        for (std::size_t j = 0; j < m; ++j) mask[j] = flat_hits_body(f, family.bodies[j]).hit;
        masks.insert(std::move(mask));
    };
    for (const KFlat& f : cands.flats) add_flat(f);
    if (!include_random) return static_cast<int>(masks.size());

    // random flats widen the realized subset collection
    Rng rng(mix_seed(seed, 0x73686174ULL));
    Vec lo = body_center(family.bodies.front()), hi = lo;
    double rmax = 0.0;
    for (const Body& b : family.bodies) {
        const Vec c = body_center(b);
        rmax = std::max(rmax, body_outer_radius(b));
        for (std::size_t i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], c[i]);
            hi[i] = std::max(hi[i], c[i]);
        }
    }
    for (int t = 0; t < 256; ++t) {
        Vec base(d);
        for (std::size_t i = 0; i < d; ++i)
            base[i] = rng.uniform(lo[i] - 2 * rmax, hi[i] + 2 * rmax);
        if (k == 0) {
            add_flat(KFlat::point(base));
            continue;
        }
        Mat g(d, k);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < k; ++j) g(i, j) = rng.gaussian();
        try {
            add_flat(KFlat{base, orthonormalized(g)});
        } catch (const numeric_error&) {
        }
    }
    return static_cast<int>(masks.size());
}

}  // namespace helly
