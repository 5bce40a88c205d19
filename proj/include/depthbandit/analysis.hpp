#pragma once

#include <functional>
#include <vector>

#include "depthbandit/bandit.hpp"
#include "depthbandit/point_set.hpp"

namespace depthbandit {

/// Depth deficits relative to the deepest point, sorted ascending and also
/// normalized by the largest gap so the support is [0, 1].
struct GapProfile {
    std::vector<double> gaps;
    std::vector<double> normalized;
    bool exact = false;
};

GapProfile gap_profile(const std::vector<double>& depths, bool exact);
GapProfile gap_profile(const RunReport& report);

/// Power-law exponent fitted to the empirical CDF of the normalized gaps by
/// least squares in log-log coordinates (zero gaps excluded).
struct PowerLawFit {
    double alpha = 0.0;
    double r_squared = 0.0;
    int n_points_used = 0;
};

PowerLawFit fit_power_law(const GapProfile& profile);

struct Ols {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int n_used = 0;
};

Ols ols_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Regression of per-arm pull counts on inverse squared gap, restricted to
/// arms that were never exactly computed (their pulls saturate) and have a
/// positive gap.
Ols pulls_vs_gap(const RunReport& report, const std::vector<double>& exact_gaps);

struct ScalingPoint {
    int n = 0;
    double cost_units = 0.0;
};

struct ScalingCurve {
    std::vector<ScalingPoint> points;
    double slope = 0.0;     // log-log fit of cost against n
    double intercept = 0.0;
};

/// Runs the median task over a family of instance sizes and fits the cost
/// growth exponent. `make_instance(n, trial)` supplies the dataset; costs are
/// averaged over `trials` per size.
ScalingCurve scaling_curve(const std::function<PointSet(int n, int trial)>& make_instance,
                           const std::vector<int>& n_values, const BanditConfig& base_cfg,
                           int trials);

} // namespace depthbandit
