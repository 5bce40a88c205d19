#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "depthbandit/depth.hpp"
#include "depthbandit/point_set.hpp"

namespace depthbandit {

/// One row of the sampling schedule: accuracy target epsilon_r = 2^-r and the
/// cumulative per-arm sample count t_r that certifies it (natural logs,
/// optionally scaled by the schedule constant c_t).
struct RoundSchedule {
    int r = 0;
    double epsilon_r = 1.0;
    int64_t t_r = 0;
};

/// Schedule step: epsilon halves, t_r grows roughly 4x per round.
RoundSchedule next_round(const std::optional<RoundSchedule>& prev, int n, double delta, double c_t);

enum class Task { median, topk, coarse_rank };

struct BanditConfig {
    double delta = 0.05;             // failure probability, in (0,1)
    double epsilon = 0.0;            // additive slack; 0 = exact identification
    double c_t = 1.0;                // schedule scale; 0.1 is the tight practical mode
    Task task = Task::median;
    int k = 1;                       // topk only
    std::vector<int> boundaries;     // coarse_rank only: 0 = m_0 < ... < m_l = n
    uint64_t seed = 0;
    double exact_switch_factor = 1.0; // switch to exact when t_r > factor * e_cost
    std::optional<CostModel> cost_model; // default derived from the point set
};

struct RoundTrace {
    int r = 0;
    double epsilon_r = 0.0;
    int64_t t_r = 0;
    bool exact_round = false;
    std::vector<int> active;     // arms alive at the start of the round
    std::vector<double> mu_hat;  // their estimates after the round, aligned with active
};

struct RunReport {
    std::string task;
    std::vector<int> answer;          // median: one index; topk: k indices ascending
    std::vector<int> cluster_of;      // coarse_rank: 1-based cluster per point
    std::vector<int64_t> pulls;       // per-point containment samples consumed
    std::vector<uint8_t> exact_computed;
    std::vector<double> mu_hat;       // final per-point estimate (exact value if exact)
    std::vector<double> gap_estimates; // max(mu_hat) - mu_hat[i]
    int rounds = 0;
    double total_cost_units = 0.0;    // sum of pulls plus e_cost per exact point
    int64_t degenerate_draws = 0;
    std::vector<RoundTrace> trace;
};

/// Approximate-depth plug-in. refine() must leave mu_hat[i] within eps of the
/// true depth for every active arm with probability 1 - delta each, and
/// report the units it consumed. cost() is what one refine would charge per
/// arm; the engine compares it against e_cost to decide the exact switch.
class DepthSampler {
public:
    virtual ~DepthSampler() = default;

    struct Refined {
        double units = 0.0;       // total units consumed by this call
        int64_t cum_samples = 0;  // cumulative per-arm samples after this call
    };

    virtual double cost(double eps, double delta) const = 0;
    virtual Refined refine(std::span<const int> active, double eps, double delta, int round,
                           std::vector<double>& mu_hat) = 0;
    virtual int64_t degenerate_draws() const { return 0; }
};

/// Exact-depth plug-in: evaluation of one point plus its unit cost.
struct ExactDepthFn {
    double cost = 0.0;
    std::function<double(int)> eval;
};

/// Shared-simplex Monte Carlo sampler: one stream of random simplices per
/// round, derived from (seed, round) only, evaluated against all active arms
/// with cumulative means across rounds.
std::unique_ptr<DepthSampler> make_mc_sampler(const PointSet& points, uint64_t seed, double c_t);

/// Majority-depth sampler over random d-point hyperplanes.
std::unique_ptr<DepthSampler> make_majority_sampler(const PointSet& points, uint64_t seed, double c_t);

/// Default exact plug-ins. planar_exact requires d = 2 and bills n ln n per
/// evaluation; naive_exact bills C(n, d+1); majority_exact bills C(n, d).
ExactDepthFn planar_exact(const PointSet& points);
ExactDepthFn naive_exact(const PointSet& points);
ExactDepthFn majority_exact(const PointSet& points);

/// Generic round-based elimination engine. Proceeds in rounds of doubling
/// accuracy, refining every active arm, eliminating per the task rule, and
/// switching every survivor to e_depth once one more refinement would cost
/// more than exact_switch_factor * e_cost. Identification succeeds with
/// probability at least 1 - delta.
RunReport meta_run(const PointSet& points, const BanditConfig& cfg, DepthSampler& a_depth,
                   const ExactDepthFn& e_depth);

/// The three concrete tasks, instantiated on the Monte Carlo sampler and the
/// default exact method for the dimension.
RunReport adaptive_median(const PointSet& points, const BanditConfig& cfg);
RunReport adaptive_topk(const PointSet& points, const BanditConfig& cfg);
RunReport coarse_rank(const PointSet& points, const BanditConfig& cfg);

} // namespace depthbandit
