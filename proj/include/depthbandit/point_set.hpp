#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace depthbandit {

/// Immutable n x d row-major matrix of sample points. Requires n >= d + 2
/// (below that no simplex excludes any point and every depth question is
/// degenerate) and finite entries throughout.
struct PointSet {
    int n = 0;
    int d = 0;
    std::vector<double> data; // row-major, n*d

    PointSet() = default;
    PointSet(int n_points, int dim, std::vector<double> values);

    const double* row(int i) const { return data.data() + static_cast<size_t>(i) * d; }
    std::span<const double> point(int i) const { return {row(i), static_cast<size_t>(d)}; }
};

} // namespace depthbandit
