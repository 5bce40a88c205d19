#include "depthbandit/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <omp.h>

#include "depthbandit/parallel.hpp"
#include "depthbandit/rng.hpp"

namespace depthbandit {

RoundSchedule next_round(const std::optional<RoundSchedule>& prev, int n, double delta, double c_t) {
    RoundSchedule out;
    out.r = prev ? prev->r + 1 : 1;
    out.epsilon_r = std::ldexp(1.0, -out.r);
    const double delta_r = delta / (2.0 * n * static_cast<double>(out.r) * out.r);
    out.t_r = hoeffding_samples(out.epsilon_r / 2.0, delta_r, c_t);
    return out;
}

namespace {

/// Shared-simplex cumulative sampler. Each round draws only the increment
/// needed to reach the Hoeffding target for (eps, delta) and folds it into
/// the running counts, so estimates use every sample drawn so far. The
/// simplex stream for round r depends on (seed, r) only: eliminating arms
/// never perturbs later draws.
template <SampleCounts (*Kernel)(const PointSet&, std::span<const int>, int64_t, Rng&)>
class CumulativeSampler final : public DepthSampler {
public:
    CumulativeSampler(const PointSet& points, uint64_t seed, double c_t)
        : points_(points), seed_(seed), c_t_(c_t), cum_(points.n, 0) {}

    double cost(double eps, double delta) const override {
        return static_cast<double>(hoeffding_samples(eps, delta, c_t_));
    }

    Refined refine(std::span<const int> active, double eps, double delta, int round,
                   std::vector<double>& mu_hat) override {
        const int64_t target = std::max(hoeffding_samples(eps, delta, c_t_), t_have_);
        Refined out;
        out.cum_samples = target;
        if (target > t_have_) {
            Rng rng = Rng::for_stream(seed_, static_cast<uint64_t>(round));
            const SampleCounts counts = Kernel(points_, active, target - t_have_, rng);
            degenerate_ += counts.degenerate_draws;
            for (size_t a = 0; a < active.size(); ++a) cum_[active[a]] += counts.hits[a];
            out.units = static_cast<double>(target - t_have_) * static_cast<double>(active.size());
            t_have_ = target;
        }
        for (const int i : active)
            mu_hat[i] = static_cast<double>(cum_[i]) / static_cast<double>(t_have_);
        return out;
    }

    int64_t degenerate_draws() const override { return degenerate_; }

private:
    const PointSet& points_;
    uint64_t seed_;
    double c_t_;
    std::vector<int64_t> cum_;
    int64_t t_have_ = 0;
    int64_t degenerate_ = 0;
};

void validate_config(const PointSet& points, const BanditConfig& cfg) {
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
        throw std::invalid_argument("delta must lie in (0,1)");
    if (cfg.epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
    if (!(cfg.c_t > 0.0)) throw std::invalid_argument("c_t must be positive");
    if (!(cfg.exact_switch_factor > 0.0 && cfg.exact_switch_factor <= 1.0))
        throw std::invalid_argument("exact_switch_factor must lie in (0,1]");
    if (cfg.task == Task::topk) {
        if (cfg.k < 1 || cfg.k >= points.n)
            throw std::invalid_argument("k must satisfy 1 <= k < n");
    }
    if (cfg.task == Task::coarse_rank) {
        const auto& b = cfg.boundaries;
        if (b.size() < 2 || b.front() != 0 || b.back() != points.n)
            throw std::invalid_argument("boundaries must run from 0 to n");
        for (size_t j = 1; j < b.size(); ++j)
            if (b[j] <= b[j - 1])
                throw std::invalid_argument("boundaries must be strictly increasing");
    }
}

const char* task_name(Task t) {
    switch (t) {
        case Task::median: return "median";
        case Task::topk: return "topk";
        case Task::coarse_rank: return "coarse_rank";
    }
    return "?";
}

// Indices ordered by (value desc, index asc); the index tiebreak keeps every
// selection deterministic.
std::vector<int> order_by_value_desc(std::span<const int> idx, const std::vector<double>& value) {
    std::vector<int> order(idx.begin(), idx.end());
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (value[a] != value[b]) return value[a] > value[b];
        return a < b;
    });
    return order;
}

class Engine {
public:
    Engine(const PointSet& points, const BanditConfig& cfg, DepthSampler& sampler,
           const ExactDepthFn& exact)
        : points_(points), cfg_(cfg), sampler_(sampler), exact_(exact), n_(points.n) {
        report_.task = task_name(cfg.task);
        report_.pulls.assign(n_, 0);
        report_.exact_computed.assign(n_, 0);
        report_.mu_hat.assign(n_, 0.0);
        active_.resize(n_);
        for (int i = 0; i < n_; ++i) active_[i] = i;
        if (cfg.task == Task::coarse_rank) {
            report_.cluster_of.assign(n_, 0);
            const int internal = static_cast<int>(cfg.boundaries.size()) - 2;
            above_.assign(std::max(internal, 0), 0);
            retired_per_cluster_.assign(cfg.boundaries.size() - 1, 0);
        }
    }

    RunReport run() {
        const double switch_at = cfg_.exact_switch_factor * exact_.cost;
        bool finished = false;
        int r = 0;
        while (!finished) {
            ++r;
            const double eps_r = std::ldexp(1.0, -r);
            const double delta_r = cfg_.delta / (2.0 * n_ * static_cast<double>(r) * r);
            const double a_cost = sampler_.cost(eps_r / 2.0, delta_r);

            if (a_cost > switch_at) {
                exact_round(r, eps_r, a_cost);
                finished = true;
                break;
            }

            const DepthSampler::Refined res =
                sampler_.refine(active_, eps_r / 2.0, delta_r, r, report_.mu_hat);
            report_.total_cost_units += res.units;
            for (const int i : active_) report_.pulls[i] = res.cum_samples;
            record_trace(r, eps_r, res.cum_samples, false);

            switch (cfg_.task) {
                case Task::median: finished = median_round(eps_r); break;
                case Task::topk: finished = topk_round(eps_r); break;
                case Task::coarse_rank: finished = rank_round(eps_r); break;
            }
        }
        report_.rounds = r;
        report_.degenerate_draws = sampler_.degenerate_draws();
        finalize_gaps();
        return std::move(report_);
    }

private:
    void record_trace(int r, double eps_r, int64_t t_r, bool exact) {
        RoundTrace t;
        t.r = r;
        t.epsilon_r = eps_r;
        t.t_r = t_r;
        t.exact_round = exact;
        t.active = active_;
        t.mu_hat.reserve(active_.size());
        for (const int i : active_) t.mu_hat.push_back(report_.mu_hat[i]);
        report_.trace.push_back(std::move(t));
    }

    void exact_round(int r, double eps_r, double a_cost) {
        const int count = static_cast<int>(active_.size());
        std::vector<double> values(count);
        const int workers = resolve_workers();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
        for (int a = 0; a < count; ++a) values[a] = exact_.eval(active_[a]);
        for (int a = 0; a < count; ++a) {
            report_.mu_hat[active_[a]] = values[a];
            report_.exact_computed[active_[a]] = 1;
        }
        report_.total_cost_units += exact_.cost * count;
        record_trace(r, eps_r, static_cast<int64_t>(a_cost), true);

        switch (cfg_.task) {
            case Task::median:
                report_.answer = {order_by_value_desc(active_, report_.mu_hat).front()};
                break;
            case Task::topk:
                fill_topk_from_active();
                break;
            case Task::coarse_rank:
                assign_active_by_rank();
                break;
        }
        active_.clear();
    }

    bool median_round(double eps_r) {
        double mu_star = -1.0;
        for (const int i : active_) mu_star = std::max(mu_star, report_.mu_hat[i]);
        std::vector<int> keep;
        keep.reserve(active_.size());
        for (const int i : active_)
            if (!(report_.mu_hat[i] < mu_star - eps_r)) keep.push_back(i);
        active_ = std::move(keep);

        if (active_.size() == 1) {
            report_.answer = {active_.front()};
            return true;
        }
        if (cfg_.epsilon > 0.0 && eps_r <= cfg_.epsilon / 2.0) {
            report_.answer = {order_by_value_desc(active_, report_.mu_hat).front()};
            return true;
        }
        return false;
    }

    bool topk_round(double eps_r) {
        const int need = cfg_.k - static_cast<int>(accepted_.size());
        const auto order = order_by_value_desc(active_, report_.mu_hat);
        const int pos = std::min(need, static_cast<int>(order.size()));
        const double thresh = report_.mu_hat[order[pos - 1]];

        std::vector<int> keep;
        keep.reserve(active_.size());
        for (const int i : active_) {
            const double mu = report_.mu_hat[i];
            if (mu >= thresh + eps_r) {
                accepted_.push_back(i);
            } else if (std::fabs(mu - thresh) < eps_r) {
                keep.push_back(i);
            }
            // decisively below the threshold: dropped for good
        }
        active_ = std::move(keep);

        if (static_cast<int>(accepted_.size()) == cfg_.k) {
            finalize_topk_answer();
            return true;
        }
        if (cfg_.epsilon > 0.0 && eps_r <= cfg_.epsilon / 2.0) {
            fill_topk_from_active();
            return true;
        }
        return false;
    }

    void fill_topk_from_active() {
        const int need = cfg_.k - static_cast<int>(accepted_.size());
        const auto order = order_by_value_desc(active_, report_.mu_hat);
        for (int t = 0; t < need && t < static_cast<int>(order.size()); ++t)
            accepted_.push_back(order[t]);
        finalize_topk_answer();
    }

    void finalize_topk_answer() {
        std::sort(accepted_.begin(), accepted_.end());
        report_.answer = accepted_;
    }

    // Boundary j (1-based internal index) separates cluster j from cluster
    // j+1. idx_j = boundaries[j] - above_j is how many of the current active
    // arms must still end up above boundary j.
    bool rank_round(double eps_r) {
        const auto& bounds = cfg_.boundaries;
        const int internal = static_cast<int>(bounds.size()) - 2;
        const int alive = static_cast<int>(active_.size());

        std::vector<double> sorted_mu;
        sorted_mu.reserve(alive);
        for (const int i : active_) sorted_mu.push_back(report_.mu_hat[i]);
        std::sort(sorted_mu.begin(), sorted_mu.end(), std::greater<>());

        enum class Side { open, all_above, all_below };
        std::vector<Side> state(internal, Side::open);
        std::vector<double> thresh(internal, 0.0);
        for (int j = 0; j < internal; ++j) {
            const int idx = bounds[j + 1] - above_[j];
            if (idx <= 0) state[j] = Side::all_below;
            else if (idx >= alive) state[j] = Side::all_above;
            else thresh[j] = sorted_mu[idx - 1];
        }

        std::vector<int> keep;
        keep.reserve(alive);
        for (const int i : active_) {
            const double mu = report_.mu_hat[i];
            int below = 0;
            bool decisive = true;
            for (int j = 0; j < internal; ++j) {
                if (state[j] == Side::all_below) { ++below; continue; }
                if (state[j] == Side::all_above) continue;
                if (mu >= thresh[j] + eps_r) continue;
                if (mu <= thresh[j] - eps_r) { ++below; continue; }
                decisive = false;
                break;
            }
            if (decisive) retire_to_cluster(i, 1 + below);
            else keep.push_back(i);
        }
        active_ = std::move(keep);

        if (active_.empty()) return true;

        // If every boundary is saturated on one side, the survivors all
        // belong to a single cluster.
        bool all_resolved = true;
        int below_resolved = 0;
        for (int j = 0; j < internal; ++j) {
            const int idx = bounds[j + 1] - above_[j];
            if (idx <= 0) ++below_resolved;
            else if (idx < static_cast<int>(active_.size())) { all_resolved = false; break; }
        }
        if (all_resolved) {
            const int cluster = 1 + below_resolved;
            for (const int i : active_) retire_to_cluster(i, cluster);
            active_.clear();
            return true;
        }

        if (cfg_.epsilon > 0.0 && eps_r <= cfg_.epsilon / 2.0) {
            assign_active_by_rank();
            active_.clear();
            return true;
        }
        return false;
    }

    void retire_to_cluster(int i, int cluster) {
        report_.cluster_of[i] = cluster;
        ++retired_per_cluster_[cluster - 1];
        for (int j = cluster - 1; j < static_cast<int>(above_.size()); ++j) ++above_[j];
    }

    // Distributes the surviving arms over the remaining free slots in depth
    // order of their current values.
    void assign_active_by_rank() {
        const auto& bounds = cfg_.boundaries;
        const auto order = order_by_value_desc(active_, report_.mu_hat);
        size_t pos = 0;
        for (size_t c = 0; c + 1 < bounds.size(); ++c) {
            const int capacity = bounds[c + 1] - bounds[c];
            int free_slots = capacity - retired_per_cluster_[c];
            while (free_slots > 0 && pos < order.size()) {
                report_.cluster_of[order[pos]] = static_cast<int>(c) + 1;
                ++retired_per_cluster_[c];
                --free_slots;
                ++pos;
            }
        }
    }

    void finalize_gaps() {
        double mu_max = 0.0;
        for (const double v : report_.mu_hat) mu_max = std::max(mu_max, v);
        report_.gap_estimates.resize(n_);
        for (int i = 0; i < n_; ++i) report_.gap_estimates[i] = mu_max - report_.mu_hat[i];
    }

    const PointSet& points_;
    const BanditConfig& cfg_;
    DepthSampler& sampler_;
    const ExactDepthFn& exact_;
    const int n_;

    RunReport report_;
    std::vector<int> active_;
    std::vector<int> accepted_;            // topk
    std::vector<int> above_;               // coarse_rank: retired above boundary j
    std::vector<int> retired_per_cluster_; // coarse_rank
};

} // namespace

std::unique_ptr<DepthSampler> make_mc_sampler(const PointSet& points, uint64_t seed, double c_t) {
    return std::make_unique<CumulativeSampler<&mc_estimate>>(points, seed, c_t);
}

std::unique_ptr<DepthSampler> make_majority_sampler(const PointSet& points, uint64_t seed,
                                                    double c_t) {
    return std::make_unique<CumulativeSampler<&majority_sample>>(points, seed, c_t);
}

ExactDepthFn planar_exact(const PointSet& points) {
    ExactDepthFn fn;
    fn.cost = points.n * std::log(static_cast<double>(points.n));
    fn.eval = [&points](int i) { return exact_depth_planar(points, i).mean; };
    return fn;
}

ExactDepthFn naive_exact(const PointSet& points) {
    ExactDepthFn fn;
    fn.cost = binomial(points.n, points.d + 1);
    fn.eval = [&points](int i) { return exact_depth_naive(points, i).mean; };
    return fn;
}

ExactDepthFn majority_exact(const PointSet& points) {
    ExactDepthFn fn;
    fn.cost = binomial(points.n, points.d);
    auto cache = std::make_shared<std::vector<double>>(majority_depth_exact_all(points));
    fn.eval = [cache](int i) { return (*cache)[i]; };
    return fn;
}

RunReport meta_run(const PointSet& points, const BanditConfig& cfg, DepthSampler& a_depth,
                   const ExactDepthFn& e_depth) {
    validate_config(points, cfg);
    Engine engine(points, cfg, a_depth, e_depth);
    return engine.run();
}

namespace {

RunReport run_default(const PointSet& points, const BanditConfig& cfg) {
    validate_config(points, cfg);
    const auto sampler = make_mc_sampler(points, cfg.seed, cfg.c_t);
    ExactDepthFn exact = points.d == 2 ? planar_exact(points) : naive_exact(points);
    if (cfg.cost_model) exact.cost = cfg.cost_model->e_cost;
    return meta_run(points, cfg, *sampler, exact);
}

} // namespace

RunReport adaptive_median(const PointSet& points, const BanditConfig& cfg) {
    if (cfg.task != Task::median) throw std::invalid_argument("adaptive_median: task must be median");
    return run_default(points, cfg);
}

RunReport adaptive_topk(const PointSet& points, const BanditConfig& cfg) {
    if (cfg.task != Task::topk) throw std::invalid_argument("adaptive_topk: task must be topk");
    return run_default(points, cfg);
}

RunReport coarse_rank(const PointSet& points, const BanditConfig& cfg) {
    if (cfg.task != Task::coarse_rank)
        throw std::invalid_argument("coarse_rank: task must be coarse_rank");
    return run_default(points, cfg);
}

} // namespace depthbandit
