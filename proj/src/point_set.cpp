#include "depthbandit/point_set.hpp"

#include <cmath>
#include <stdexcept>

namespace depthbandit {

PointSet::PointSet(int n_points, int dim, std::vector<double> values)
    : n(n_points), d(dim), data(std::move(values)) {
    if (d < 1) throw std::invalid_argument("PointSet: dimension must be >= 1");
    if (n < d + 2) throw std::invalid_argument("PointSet: need at least d+2 points");
    if (data.size() != static_cast<size_t>(n) * d)
        throw std::invalid_argument("PointSet: data size does not match n*d");
    for (const double v : data)
        if (!std::isfinite(v)) throw std::invalid_argument("PointSet: entries must be finite");
}

} // namespace depthbandit
