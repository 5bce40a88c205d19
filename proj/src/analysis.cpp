#include "depthbandit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace depthbandit {

namespace {

GapProfile profile_from(const std::vector<double>& depths, bool exact) {
    if (depths.size() < 2) throw std::invalid_argument("gap_profile: need at least 2 points");
    const double mu_max = *std::max_element(depths.begin(), depths.end());
    GapProfile out;
    out.exact = exact;
    out.gaps.reserve(depths.size());
    for (const double mu : depths) out.gaps.push_back(mu_max - mu);
    std::sort(out.gaps.begin(), out.gaps.end());
    const double largest = out.gaps.back();
    if (largest <= 0.0) throw std::domain_error("gap_profile: all depths equal");
    out.normalized.reserve(out.gaps.size());
    for (const double g : out.gaps) out.normalized.push_back(g / largest);
    return out;
}

} // namespace

GapProfile gap_profile(const std::vector<double>& depths, bool exact) {
    return profile_from(depths, exact);
}

GapProfile gap_profile(const RunReport& report) {
    bool all_exact = !report.exact_computed.empty();
    for (const uint8_t e : report.exact_computed)
        if (!e) { all_exact = false; break; }
    return profile_from(report.mu_hat, all_exact);
}

Ols ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("ols_fit: need matching samples, at least 2");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) throw std::invalid_argument("ols_fit: zero variance in x");
    Ols out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    out.n_used = static_cast<int>(x.size());
    if (syy <= 0.0) {
        out.r_squared = 1.0; // constant y fitted exactly
    } else {
        out.r_squared = (sxy * sxy) / (sxx * syy);
    }
    return out;
}

PowerLawFit fit_power_law(const GapProfile& profile) {
    std::vector<double> log_gap, log_cdf;
    const size_t m_total = profile.normalized.size();
    size_t nonzero = 0;
    for (const double g : profile.normalized)
        if (g > 0.0) ++nonzero;
    if (nonzero < 10) throw std::invalid_argument("fit_power_law: need at least 10 nonzero gaps");

    // Empirical CDF over the nonzero gaps only; they are already sorted.
    size_t rank = 0;
    for (size_t i = 0; i < m_total; ++i) {
        const double g = profile.normalized[i];
        if (g <= 0.0) continue;
        ++rank;
        log_gap.push_back(std::log(g));
        log_cdf.push_back(std::log(static_cast<double>(rank) / static_cast<double>(nonzero)));
    }
    const Ols fit = ols_fit(log_gap, log_cdf);
    PowerLawFit out;
    out.alpha = fit.slope;
    out.r_squared = fit.r_squared;
    out.n_points_used = fit.n_used;
    return out;
}

Ols pulls_vs_gap(const RunReport& report, const std::vector<double>& exact_gaps) {
    if (exact_gaps.size() != report.pulls.size())
        throw std::invalid_argument("pulls_vs_gap: gap vector size mismatch");
    std::vector<double> x, y;
    for (size_t i = 0; i < exact_gaps.size(); ++i) {
        if (report.exact_computed[i]) continue;
        if (exact_gaps[i] <= 0.0) continue;
        x.push_back(1.0 / (exact_gaps[i] * exact_gaps[i]));
        y.push_back(static_cast<double>(report.pulls[i]));
    }
    if (x.size() < 10) throw std::invalid_argument("pulls_vs_gap: fewer than 10 qualifying arms");
    return ols_fit(x, y);
}

ScalingCurve scaling_curve(const std::function<PointSet(int n, int trial)>& make_instance,
                           const std::vector<int>& n_values, const BanditConfig& base_cfg,
                           int trials) {
    if (n_values.size() < 3) throw std::invalid_argument("scaling_curve: need at least 3 sizes");
    if (trials < 1) throw std::invalid_argument("scaling_curve: need at least one trial");

    ScalingCurve out;
    std::vector<double> log_n, log_cost;
    for (const int n : n_values) {
        double total = 0.0;
        for (int t = 0; t < trials; ++t) {
            const PointSet points = make_instance(n, t);
            BanditConfig cfg = base_cfg;
            cfg.task = Task::median;
            cfg.seed = base_cfg.seed + static_cast<uint64_t>(t) * 7919 + static_cast<uint64_t>(n);
            cfg.cost_model.reset();
            total += adaptive_median(points, cfg).total_cost_units;
        }
        const double mean_cost = total / trials;
        out.points.push_back({n, mean_cost});
        log_n.push_back(std::log(static_cast<double>(n)));
        log_cost.push_back(std::log(mean_cost));
    }
    const Ols fit = ols_fit(log_n, log_cost);
    out.slope = fit.slope;
    out.intercept = fit.intercept;
    return out;
}

} // namespace depthbandit
