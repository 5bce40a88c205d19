#include "depthbandit/depth.hpp"

#include <cmath>
#include <stdexcept>

#include <omp.h>

#include "depthbandit/parallel.hpp"

namespace depthbandit {

namespace {

// Tolerance used by the exact enumeration paths. Vertex membership is decided
// without arithmetic, so this only has to absorb solver round-off; keeping it
// at rank-decision scale avoids misclassifying points that sit close to (but
// not on) a simplex boundary.
constexpr double kExactContainTol = 1e-12;

uint64_t binomial_u64(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        // r * (n - k + i) is exact here for every instance the cap admits.
        r = r * static_cast<uint64_t>(n - k + i) / static_cast<uint64_t>(i);
    }
    return r;
}

// Lexicographic successor of a (k)-combination drawn from [0, n).
bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

// Counts, for every dataset point, the simplices with leading vertex `first`
// that contain it. `combo` holds d+1 slots with combo[0] == first.
void accumulate_first_index(const PointSet& points, int first, SimplexFactorization& fact,
                            std::vector<double>& lambda, std::vector<uint64_t>& counts) {
    const int n = points.n;
    const int d = points.d;
    std::vector<int> combo(d + 1);
    combo[0] = first;
    for (int j = 1; j <= d; ++j) combo[j] = first + j;
    if (combo[d] >= n) return;

    for (;;) {
        factorize_simplex_into(fact, points, combo);
        if (!fact.singular()) {
            int next_vertex = 0; // walks `combo` as p increases
            for (int p = 0; p < n; ++p) {
                if (next_vertex <= d && combo[next_vertex] == p) {
                    ++next_vertex;
                    ++counts[p]; // closed simplices contain their vertices
                    continue;
                }
                const double* q = points.row(p);
                for (int r = 0; r < d; ++r) lambda[r] = q[r] - fact.base_vertex()[r];
                fact.solve(lambda.data());
                double sum = 0.0;
                bool inside = true;
                for (int r = 0; r < d; ++r) {
                    sum += lambda[r];
                    if (lambda[r] < -kExactContainTol) { inside = false; break; }
                }
                if (inside && 1.0 - sum >= -kExactContainTol) ++counts[p];
            }
        }

        // advance within the fixed leading vertex
        int i = d;
        while (i >= 1 && combo[i] == n - (d + 1) + i) --i;
        if (i < 1) break;
        ++combo[i];
        for (int j = i + 1; j <= d; ++j) combo[j] = combo[j - 1] + 1;
    }
}

std::vector<DepthEstimate> finalize_counts(const PointSet& points, const std::vector<uint64_t>& counts,
                                           uint64_t total) {
    std::vector<DepthEstimate> out(points.n);
    for (int i = 0; i < points.n; ++i) {
        out[i].point_index = i;
        out[i].contained = counts[i];
        out[i].samples = static_cast<int64_t>(total);
        out[i].mean = static_cast<double>(counts[i]) / static_cast<double>(total);
        out[i].exact = true;
    }
    return out;
}

uint64_t naive_total_or_throw(const PointSet& points, uint64_t cap) {
    const uint64_t total = binomial_u64(points.n, points.d + 1);
    if (total > cap)
        throw std::runtime_error("exact_depth_naive: instance too large for naive oracle");
    return total;
}

} // namespace

int64_t hoeffding_samples(double eps, double delta, double scale) {
    const double v = scale * std::log(2.0 / delta) / (2.0 * eps * eps);
    if (v >= 9.0e18) return 9'000'000'000'000'000'000LL; // saturate instead of overflowing
    return static_cast<int64_t>(std::ceil(v));
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

DepthEstimate exact_depth_naive(const PointSet& points, int i, uint64_t cap) {
    if (i < 0 || i >= points.n) throw std::invalid_argument("exact_depth_naive: index out of range");
    const int d = points.d;
    const uint64_t total = naive_total_or_throw(points, cap);

    SimplexFactorization fact;
    std::vector<double> lambda(d + 1);
    std::vector<int> combo(d + 1);
    for (int j = 0; j <= d; ++j) combo[j] = j;
    const std::span<const double> query = points.point(i);

    uint64_t contained = 0;
    do {
        bool is_vertex = false;
        for (int j = 0; j <= d; ++j)
            if (combo[j] == i) { is_vertex = true; break; }
        factorize_simplex_into(fact, points, combo);
        if (fact.singular()) continue;
        if (is_vertex) { ++contained; continue; }
        for (int r = 0; r < d; ++r) lambda[r] = query[r] - fact.base_vertex()[r];
        fact.solve(lambda.data());
        double sum = 0.0;
        bool inside = true;
        for (int r = 0; r < d; ++r) {
            sum += lambda[r];
            if (lambda[r] < -kExactContainTol) { inside = false; break; }
        }
        if (inside && 1.0 - sum >= -kExactContainTol) ++contained;
    } while (next_combination(combo, points.n));

    DepthEstimate out;
    out.point_index = i;
    out.contained = contained;
    out.samples = static_cast<int64_t>(total);
    out.mean = static_cast<double>(contained) / static_cast<double>(total);
    out.exact = true;
    return out;
}

std::vector<DepthEstimate> exact_depth_naive_all(const PointSet& points, uint64_t cap) {
    const uint64_t total = naive_total_or_throw(points, cap);
    const int n = points.n;
    const int d = points.d;
    const int first_max = n - d - 1;

    const int workers = resolve_workers();
    std::vector<std::vector<uint64_t>> partial(workers, std::vector<uint64_t>(n, 0));

#pragma omp parallel num_threads(workers)
    {
        const int tid = omp_get_thread_num();
        SimplexFactorization fact;
        std::vector<double> lambda(d + 1);
#pragma omp for schedule(dynamic)
        for (int first = 0; first <= first_max; ++first)
            accumulate_first_index(points, first, fact, lambda, partial[tid]);
    }

    std::vector<uint64_t> counts(n, 0);
    for (const auto& local : partial)
        for (int i = 0; i < n; ++i) counts[i] += local[i];
    return finalize_counts(points, counts, total);
}

std::vector<DepthEstimate> exact_depth_naive_all_serial(const PointSet& points, uint64_t cap) {
    const uint64_t total = naive_total_or_throw(points, cap);
    const int n = points.n;
    const int d = points.d;
    SimplexFactorization fact;
    std::vector<double> lambda(d + 1);
    std::vector<uint64_t> counts(n, 0);
    for (int first = 0; first + d < n; ++first)
        accumulate_first_index(points, first, fact, lambda, counts);
    return finalize_counts(points, counts, total);
}

DepthEstimate exact_depth_planar(const PointSet& points, int i) {
    if (points.d != 2) throw std::invalid_argument("exact_depth_planar: unsupported dimension");
    if (i < 0 || i >= points.n) throw std::invalid_argument("exact_depth_planar: index out of range");
    const int n = points.n;
    const int m = n - 1;
    const double* center = points.row(i);

    // Angles of the other points around x_i; equal angles ordered by index.
    std::vector<std::pair<double, int>> ang;
    ang.reserve(m);
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        ang.emplace_back(std::atan2(points.row(j)[1] - center[1], points.row(j)[0] - center[0]), j);
    }
    std::sort(ang.begin(), ang.end());

    // c_a = points strictly inside the open half-turn after a; the a-th point
    // leads C(c_a, 2) triangles that miss x_i.
    constexpr double kPi = 3.141592653589793238462643383279502884;
    uint64_t missing = 0;
    size_t hi = 1;
    for (size_t a = 0; a < static_cast<size_t>(m); ++a) {
        if (hi < a + 1) hi = a + 1;
        const double limit = ang[a].first + kPi;
        while (hi < a + m) {
            const double theta = hi < static_cast<size_t>(m)
                                     ? ang[hi].first
                                     : ang[hi - m].first + 2.0 * kPi;
            if (theta < limit) ++hi; else break;
        }
        const uint64_t c = hi - a - 1;
        missing += c * (c - 1) / 2;
    }

    const uint64_t mm = static_cast<uint64_t>(m);
    const uint64_t contained = binomial_u64(m, 3) - missing + mm * (mm - 1) / 2;
    const uint64_t total = binomial_u64(n, 3);

    DepthEstimate out;
    out.point_index = i;
    out.contained = contained;
    out.samples = static_cast<int64_t>(total);
    out.mean = static_cast<double>(contained) / static_cast<double>(total);
    out.exact = true;
    return out;
}

std::vector<DepthEstimate> exact_depth_planar_all(const PointSet& points) {
    std::vector<DepthEstimate> out(points.n);
    const int workers = resolve_workers();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int i = 0; i < points.n; ++i) out[i] = exact_depth_planar(points, i);
    return out;
}

std::vector<DepthEstimate> exact_depth_planar_all_serial(const PointSet& points) {
    std::vector<DepthEstimate> out(points.n);
    for (int i = 0; i < points.n; ++i) out[i] = exact_depth_planar(points, i);
    return out;
}

namespace {

// Sampling kernels share this skeleton: the index stream is drawn serially
// up front (so draws never depend on thread count), evaluation is split
// across threads, and integer counts are merged afterwards.
template <typename Eval>
SampleCounts run_sampling_kernel(int64_t num_new, int subset_size, int n, Rng& rng,
                                 size_t active_count, int workers, Eval&& eval) {
    std::vector<int> subsets(static_cast<size_t>(num_new) * subset_size);
    for (int64_t s = 0; s < num_new; ++s)
        rng.sample_distinct(n, subset_size, subsets.data() + static_cast<size_t>(s) * subset_size);

    std::vector<std::vector<int64_t>> partial(workers, std::vector<int64_t>(active_count, 0));
    std::vector<int64_t> degenerate(workers, 0);

#pragma omp parallel num_threads(workers)
    {
        const int tid = omp_get_thread_num();
#pragma omp for schedule(static)
        for (int64_t s = 0; s < num_new; ++s)
            eval(subsets.data() + static_cast<size_t>(s) * subset_size, partial[tid], degenerate[tid]);
    }

    SampleCounts out;
    out.hits.assign(active_count, 0);
    for (int w = 0; w < workers; ++w) {
        out.degenerate_draws += degenerate[w];
        for (size_t a = 0; a < active_count; ++a) out.hits[a] += partial[w][a];
    }
    return out;
}

} // namespace

SampleCounts mc_estimate(const PointSet& points, std::span<const int> active, int64_t num_new,
                         Rng& rng) {
    const int d = points.d;
    const int workers = resolve_workers();

    struct Scratch {
        SimplexFactorization fact;
        std::vector<double> lambda;
    };
    std::vector<Scratch> scratch(workers);
    for (auto& s : scratch) s.lambda.resize(d + 1);

    return run_sampling_kernel(
        num_new, d + 1, points.n, rng, active.size(), workers,
        [&](const int* combo, std::vector<int64_t>& hits, int64_t& degenerate) {
            Scratch& sc = scratch[omp_get_thread_num()];
            factorize_simplex_into(sc.fact, points, {combo, static_cast<size_t>(d + 1)});
            if (sc.fact.singular()) { ++degenerate; return; }
            int next_vertex = 0; // active and combo are both sorted ascending
            for (size_t a = 0; a < active.size(); ++a) {
                const int p = active[a];
                while (next_vertex <= d && combo[next_vertex] < p) ++next_vertex;
                if (next_vertex <= d && combo[next_vertex] == p) { ++hits[a]; continue; }
                const double* q = points.row(p);
                double* lam = sc.lambda.data();
                for (int r = 0; r < d; ++r) lam[r] = q[r] - sc.fact.base_vertex()[r];
                sc.fact.solve(lam);
                double sum = 0.0;
                bool inside = true;
                for (int r = 0; r < d; ++r) {
                    sum += lam[r];
                    if (lam[r] < -kDefaultContainTol) { inside = false; break; }
                }
                if (inside && 1.0 - sum >= -kDefaultContainTol) ++hits[a];
            }
        });
}

SampleCounts mc_estimate_serial(const PointSet& points, std::span<const int> active,
                                int64_t num_new, Rng& rng) {
    const int d = points.d;
    SampleCounts out;
    out.hits.assign(active.size(), 0);
    SimplexFactorization fact;
    std::vector<double> lambda(d + 1);
    std::vector<int> combo(d + 1);
    for (int64_t s = 0; s < num_new; ++s) {
        rng.sample_distinct(points.n, d + 1, combo.data());
        factorize_simplex_into(fact, points, combo);
        if (fact.singular()) { ++out.degenerate_draws; continue; }
        int next_vertex = 0;
        for (size_t a = 0; a < active.size(); ++a) {
            const int p = active[a];
            while (next_vertex <= d && combo[next_vertex] < p) ++next_vertex;
            if (next_vertex <= d && combo[next_vertex] == p) { ++out.hits[a]; continue; }
            if (contains(fact, points.point(p))) ++out.hits[a];
        }
    }
    return out;
}

namespace {

struct HyperplaneScratch {
    std::vector<double> diffs;  // (d-1) x d difference rows
    std::vector<double> minor;  // (d-1) x (d-1) workspace
    std::vector<double> normal; // d entries
};

// Determinant by in-place partial-pivot elimination.
double det_in_place(std::vector<double>& a, int k) {
    double det = 1.0;
    for (int col = 0; col < k; ++col) {
        int p = col;
        double best = std::fabs(a[static_cast<size_t>(col) * k + col]);
        for (int i = col + 1; i < k; ++i) {
            const double v = std::fabs(a[static_cast<size_t>(i) * k + col]);
            if (v > best) { best = v; p = i; }
        }
        if (best == 0.0) return 0.0;
        if (p != col) {
            for (int j = 0; j < k; ++j)
                std::swap(a[static_cast<size_t>(col) * k + j], a[static_cast<size_t>(p) * k + j]);
            det = -det;
        }
        const double pivot = a[static_cast<size_t>(col) * k + col];
        det *= pivot;
        for (int i = col + 1; i < k; ++i) {
            const double l = a[static_cast<size_t>(i) * k + col] / pivot;
            for (int j = col + 1; j < k; ++j)
                a[static_cast<size_t>(i) * k + j] -= l * a[static_cast<size_t>(col) * k + j];
        }
    }
    return det;
}

// Normal of the hyperplane through the d points indexed by `subset`
// (generalized cross product of the d-1 difference vectors). Returns false
// when the subset is rank deficient.
bool hyperplane_normal(const PointSet& points, const int* subset, HyperplaneScratch& sc) {
    const int d = points.d;
    sc.diffs.resize(static_cast<size_t>(d - 1) * d);
    sc.minor.resize(static_cast<size_t>(d - 1) * (d - 1));
    sc.normal.resize(d);
    const double* base = points.row(subset[0]);

    double hadamard = 1.0;
    for (int j = 0; j + 1 < d; ++j) {
        const double* v = points.row(subset[j + 1]);
        double norm2 = 0.0;
        for (int r = 0; r < d; ++r) {
            const double e = v[r] - base[r];
            sc.diffs[static_cast<size_t>(j) * d + r] = e;
            norm2 += e * e;
        }
        hadamard *= std::sqrt(norm2);
    }

    double normal_norm2 = 0.0;
    for (int c = 0; c < d; ++c) {
        const int k = d - 1;
        for (int i = 0; i < k; ++i) {
            int out = 0;
            for (int j = 0; j < d; ++j) {
                if (j == c) continue;
                sc.minor[static_cast<size_t>(i) * k + out] = sc.diffs[static_cast<size_t>(i) * d + j];
                ++out;
            }
        }
        const double cof = det_in_place(sc.minor, k);
        sc.normal[c] = (c % 2 == 0) ? cof : -cof;
        normal_norm2 += sc.normal[c] * sc.normal[c];
    }
    return std::sqrt(normal_norm2) > 1e-12 * hadamard;
}

// Side values of every point relative to the hyperplane, plus the two
// closed-side counts. A point within relative tolerance of the plane
// belongs to both closed sides.
void side_values(const PointSet& points, const int* subset, const HyperplaneScratch& sc,
                 std::vector<double>& s, std::vector<double>& tol, int& count_pos, int& count_neg) {
    const int d = points.d;
    const int n = points.n;
    const double* base = points.row(subset[0]);
    double normal_norm = 0.0;
    for (int r = 0; r < d; ++r) normal_norm += sc.normal[r] * sc.normal[r];
    normal_norm = std::sqrt(normal_norm);

    count_pos = count_neg = 0;
    for (int p = 0; p < n; ++p) {
        const double* q = points.row(p);
        double dot = 0.0, dist2 = 0.0;
        for (int r = 0; r < d; ++r) {
            const double e = q[r] - base[r];
            dot += sc.normal[r] * e;
            dist2 += e * e;
        }
        s[p] = dot;
        tol[p] = 1e-9 * normal_norm * std::sqrt(dist2);
        if (dot >= -tol[p]) ++count_pos;
        if (dot <= tol[p]) ++count_neg;
    }
}

} // namespace

SampleCounts majority_sample(const PointSet& points, std::span<const int> active, int64_t num_new,
                             Rng& rng) {
    const int d = points.d;
    const int n = points.n;
    const int majority = (n + 1) / 2;
    const int workers = resolve_workers();

    struct Scratch {
        HyperplaneScratch hp;
        std::vector<double> s, tol;
    };
    std::vector<Scratch> scratch(workers);
    for (auto& s : scratch) { s.s.resize(n); s.tol.resize(n); }

    return run_sampling_kernel(
        num_new, d, n, rng, active.size(), workers,
        [&](const int* subset, std::vector<int64_t>& hits, int64_t& degenerate) {
            Scratch& sc = scratch[omp_get_thread_num()];
            if (!hyperplane_normal(points, subset, sc.hp)) { ++degenerate; return; }
            int count_pos = 0, count_neg = 0;
            side_values(points, subset, sc.hp, sc.s, sc.tol, count_pos, count_neg);
            const bool major_pos = count_pos >= majority;
            const bool major_neg = count_neg >= majority;
            for (size_t a = 0; a < active.size(); ++a) {
                const int p = active[a];
                if ((major_pos && sc.s[p] >= -sc.tol[p]) || (major_neg && sc.s[p] <= sc.tol[p]))
                    ++hits[a];
            }
        });
}

SampleCounts majority_sample_serial(const PointSet& points, std::span<const int> active,
                                    int64_t num_new, Rng& rng) {
    const int d = points.d;
    const int n = points.n;
    const int majority = (n + 1) / 2;
    SampleCounts out;
    out.hits.assign(active.size(), 0);
    HyperplaneScratch hp;
    std::vector<double> s(n), tol(n);
    std::vector<int> subset(d);
    for (int64_t k = 0; k < num_new; ++k) {
        rng.sample_distinct(n, d, subset.data());
        if (!hyperplane_normal(points, subset.data(), hp)) { ++out.degenerate_draws; continue; }
        int count_pos = 0, count_neg = 0;
        side_values(points, subset.data(), hp, s, tol, count_pos, count_neg);
        const bool major_pos = count_pos >= majority;
        const bool major_neg = count_neg >= majority;
        for (size_t a = 0; a < active.size(); ++a) {
            const int p = active[a];
            if ((major_pos && s[p] >= -tol[p]) || (major_neg && s[p] <= tol[p])) ++out.hits[a];
        }
    }
    return out;
}

std::vector<double> majority_depth_exact_all(const PointSet& points) {
    const int d = points.d;
    const int n = points.n;
    const int majority = (n + 1) / 2;
    const uint64_t total = binomial_u64(n, d);

    HyperplaneScratch hp;
    std::vector<double> s(n), tol(n);
    std::vector<uint64_t> counts(n, 0);
    std::vector<int> subset(d);
    for (int j = 0; j < d; ++j) subset[j] = j;
    do {
        if (!hyperplane_normal(points, subset.data(), hp)) continue;
        int count_pos = 0, count_neg = 0;
        side_values(points, subset.data(), hp, s, tol, count_pos, count_neg);
        const bool major_pos = count_pos >= majority;
        const bool major_neg = count_neg >= majority;
        for (int p = 0; p < n; ++p)
            if ((major_pos && s[p] >= -tol[p]) || (major_neg && s[p] <= tol[p])) ++counts[p];
    } while (next_combination(subset, n));

    std::vector<double> out(n);
    for (int p = 0; p < n; ++p) out[p] = static_cast<double>(counts[p]) / static_cast<double>(total);
    return out;
}

double majority_depth_exact(const PointSet& points, int i) {
    if (i < 0 || i >= points.n) throw std::invalid_argument("majority_depth_exact: index out of range");
    return majority_depth_exact_all(points)[i];
}

CostModel default_cost_model(const PointSet& points, double schedule_scale) {
    CostModel model;
    if (points.d == 2) {
        model.e_cost = points.n * std::log(static_cast<double>(points.n));
    } else {
        model.e_cost = binomial(points.n, points.d + 1);
    }
    model.a_cost = [schedule_scale](double eps, double delta) {
        return static_cast<double>(hoeffding_samples(eps, delta, schedule_scale));
    };
    return model;
}

} // namespace depthbandit
