#pragma once

#include <cstdint>
#include <string>

#include "depthbandit/point_set.hpp"

namespace depthbandit {

/// Reads a CSV of points, one row per point, d numeric columns, no header
/// unless skip_header is set. Malformed rows are reported with their line
/// number.
PointSet read_csv(const std::string& path, bool skip_header = false);

/// Writes points with enough digits to round-trip exactly.
void write_csv(const std::string& path, const PointSet& points);

/// n i.i.d. rows from an isotropic standard normal; deterministic per seed.
PointSet generate_gaussian(int n, int d, uint64_t seed);

} // namespace depthbandit
