#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "depthbandit/geometry.hpp"
#include "depthbandit/point_set.hpp"
#include "depthbandit/rng.hpp"

namespace depthbandit {

/// Depth of one dataset point. For exact results `contained / samples` is the
/// exact rational value (contained simplices over all of them); for sampled
/// results it is the running mean over `samples` random simplices.
struct DepthEstimate {
    int point_index = -1;
    double mean = 0.0;
    int64_t samples = 0;
    bool exact = false;
    uint64_t contained = 0;
};

/// Accounting for one exact evaluation (e_cost) and one approximate
/// evaluation to accuracy eps with failure probability delta (a_cost), both
/// in containment-check units: one barycentric membership test or one
/// hyperplane side test costs 1 unit.
struct CostModel {
    double e_cost = 0.0;
    std::function<double(double eps, double delta)> a_cost;
};

/// Cumulative sample count that brings a [0,1]-bounded mean within eps of
/// its target with probability 1 - delta (two-sided Hoeffding), scaled by
/// `scale`. This single helper defines every sampling schedule in the
/// library so that all code paths agree to the last integer.
int64_t hoeffding_samples(double eps, double delta, double scale);

/// Binomial coefficient as double (exact for the ranges used here).
double binomial(int n, int k);

constexpr uint64_t kDefaultNaiveCap = 1'000'000'000ULL;

/// Exact depth of point i by full enumeration of all C(n, d+1) simplices,
/// including those with x_i as a vertex (closed simplices contain their
/// vertices). Refuses instances with more than `cap` simplices.
DepthEstimate exact_depth_naive(const PointSet& points, int i, uint64_t cap = kDefaultNaiveCap);

/// Exact depth of every point from one pass over all simplices; the
/// per-simplex membership tests are shared, so this is n times cheaper than
/// n calls to exact_depth_naive. OpenMP over the leading vertex index.
std::vector<DepthEstimate> exact_depth_naive_all(const PointSet& points,
                                                 uint64_t cap = kDefaultNaiveCap);
/// Single-threaded reference for the kernel above; must agree exactly.
std::vector<DepthEstimate> exact_depth_naive_all_serial(const PointSet& points,
                                                        uint64_t cap = kDefaultNaiveCap);

/// Exact planar (d = 2) depth of point i in O(n log n) by the angular-sweep
/// counting argument: triangles of other points that miss x_i are exactly
/// those whose vertices fit in an open halfplane through x_i. Assumes
/// general position; coincident angles are tie-broken by point index.
DepthEstimate exact_depth_planar(const PointSet& points, int i);

/// Planar depth of every point; OpenMP over points.
std::vector<DepthEstimate> exact_depth_planar_all(const PointSet& points);
std::vector<DepthEstimate> exact_depth_planar_all_serial(const PointSet& points);

/// Result of a sampling kernel: per-active-point containment counts plus the
/// number of degenerate (singular) draws, which count as containing nothing.
struct SampleCounts {
    std::vector<int64_t> hits;
    int64_t degenerate_draws = 0;
};

/// Draws num_new uniformly random (d+1)-subsets of the dataset, factorizes
/// each once, and tests every active point against it. The subset stream is
/// generated up front from `rng`, so results are identical for any worker
/// count. Total cost in units: num_new * |active|.
SampleCounts mc_estimate(const PointSet& points, std::span<const int> active,
                         int64_t num_new, Rng& rng);
SampleCounts mc_estimate_serial(const PointSet& points, std::span<const int> active,
                                int64_t num_new, Rng& rng);

/// Majority-depth sampler: draws num_new random d-subsets, forms the
/// hyperplane through each, and credits every active point lying in a major
/// closed side (one containing at least ceil(n/2) of the data; both sides
/// can qualify). Rank-deficient subsets count as containing nothing.
SampleCounts majority_sample(const PointSet& points, std::span<const int> active,
                             int64_t num_new, Rng& rng);
SampleCounts majority_sample_serial(const PointSet& points, std::span<const int> active,
                                    int64_t num_new, Rng& rng);

/// Exact majority depth by enumerating all C(n, d) hyperplanes.
double majority_depth_exact(const PointSet& points, int i);
std::vector<double> majority_depth_exact_all(const PointSet& points);

/// Default cost model for simplicial depth: for d = 2 the planar method is
/// available and one exact evaluation is billed n ln n units; otherwise
/// exact evaluation is full enumeration at C(n, d+1) units. a_cost is the
/// sampler's true cumulative Hoeffding target.
CostModel default_cost_model(const PointSet& points, double schedule_scale = 1.0);

} // namespace depthbandit
