#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "depthbandit/point_set.hpp"

namespace depthbandit {

/// Normalized barycentric coordinates of a query point with respect to the
/// d+1 vertices of a simplex, in sorted-vertex order. Components sum to 1.
struct BarycentricCoords {
    std::vector<double> lambda;
};

/// LU factorization (partial pivoting) of the centered vertex matrix of one
/// simplex: columns are v_j - v_d for the sorted vertices v_0..v_d. Costs
/// O(d^3) to build and O(d^2) per subsequent solve, which is what makes it
/// worth sharing across many query points.
///
/// A factorization is flagged singular when the smallest pivot magnitude
/// falls below pivot_tolerance times the largest. Instances are immutable
/// after construction and safe to share across threads.
class SimplexFactorization {
public:
    static constexpr double kDefaultPivotTol = 1e-12;

    SimplexFactorization() = default;

    bool singular() const { return singular_; }
    int dim() const { return d_; }
    double pivot_tolerance() const { return pivot_tol_; }
    const std::vector<int>& vertex_indices() const { return idx_; }
    std::span<const double> base_vertex() const { return {base_.data(), base_.size()}; }

    /// Solves X y = rhs in place; rhs has d entries. Undefined for singular
    /// factorizations (callers check singular() first).
    void solve(double* rhs) const;

private:
    friend void factorize_simplex_into(SimplexFactorization& fact, const PointSet& points,
                                       std::span<const int> indices, double pivot_tol);

    int d_ = 0;
    std::vector<int> idx_;     // d+1 vertex indices, sorted ascending
    std::vector<double> lu_;   // d x d, row-major, L below diagonal, U on/above
    std::vector<int> perm_;    // row swap applied at elimination step k
    std::vector<double> base_; // coordinates of the last sorted vertex
    bool singular_ = false;
    double pivot_tol_ = kDefaultPivotTol;
};

/// Builds the factorization for the simplex on `indices` (d+1 distinct,
/// in-range indices into `points`). Throws std::invalid_argument on bad
/// indices.
SimplexFactorization factorize_simplex(const PointSet& points, std::span<const int> indices,
                                       double pivot_tol = SimplexFactorization::kDefaultPivotTol);

/// Same, but reuses the storage of `fact`; hot loops keep one per thread.
void factorize_simplex_into(SimplexFactorization& fact, const PointSet& points,
                            std::span<const int> indices,
                            double pivot_tol = SimplexFactorization::kDefaultPivotTol);

/// Barycentric coordinates of `query` (d entries). Throws std::domain_error
/// when the factorization is singular.
BarycentricCoords barycentric(const SimplexFactorization& fact, std::span<const double> query);

constexpr double kDefaultContainTol = 1e-9;

/// Closed-simplex membership: true iff every barycentric coordinate is
/// >= -tol. Singular simplices are treated as containing nothing; samplers
/// count how often that rule fires.
bool contains(const SimplexFactorization& fact, std::span<const double> query,
              double tol = kDefaultContainTol);

/// Membership for many dataset points against one factorization: one
/// multi-right-hand-side solve, O(d^3 + k d^2) in total for k queries.
/// Element-for-element identical to calling contains() per query.
std::vector<uint8_t> batch_contains(const SimplexFactorization& fact, const PointSet& points,
                                    std::span<const int> query_indices,
                                    double tol = kDefaultContainTol);

} // namespace depthbandit
