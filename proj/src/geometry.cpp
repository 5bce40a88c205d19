#include "depthbandit/geometry.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace depthbandit {

void factorize_simplex_into(SimplexFactorization& fact, const PointSet& points,
                            std::span<const int> indices, double pivot_tol) {
    const int d = points.d;
    if (static_cast<int>(indices.size()) != d + 1)
        throw std::invalid_argument("factorize_simplex: need d+1 vertex indices");

    fact.d_ = d;
    fact.pivot_tol_ = pivot_tol;
    fact.idx_.assign(indices.begin(), indices.end());
    std::sort(fact.idx_.begin(), fact.idx_.end());
    for (int j = 0; j <= d; ++j) {
        if (fact.idx_[j] < 0 || fact.idx_[j] >= points.n)
            throw std::invalid_argument("factorize_simplex: vertex index out of range");
        if (j > 0 && fact.idx_[j] == fact.idx_[j - 1])
            throw std::invalid_argument("factorize_simplex: vertex indices must be distinct");
    }

    const double* base = points.row(fact.idx_[d]);
    fact.base_.assign(base, base + d);

    // Centered matrix: column j holds v_j - v_d.
    fact.lu_.resize(static_cast<size_t>(d) * d);
    for (int j = 0; j < d; ++j) {
        const double* vj = points.row(fact.idx_[j]);
        for (int r = 0; r < d; ++r)
            fact.lu_[static_cast<size_t>(r) * d + j] = vj[r] - base[r];
    }

    fact.perm_.resize(d);
    fact.singular_ = false;
    double* a = fact.lu_.data();
    double max_pivot = 0.0, min_pivot = 0.0;
    for (int k = 0; k < d; ++k) {
        int p = k;
        double best = std::fabs(a[static_cast<size_t>(k) * d + k]);
        for (int i = k + 1; i < d; ++i) {
            const double v = std::fabs(a[static_cast<size_t>(i) * d + k]);
            if (v > best) { best = v; p = i; }
        }
        fact.perm_[k] = p;
        if (p != k) {
            for (int j = 0; j < d; ++j)
                std::swap(a[static_cast<size_t>(k) * d + j], a[static_cast<size_t>(p) * d + j]);
        }
        const double pivot = a[static_cast<size_t>(k) * d + k];
        const double mag = std::fabs(pivot);
        if (k == 0) { max_pivot = min_pivot = mag; }
        else {
            max_pivot = std::max(max_pivot, mag);
            min_pivot = std::min(min_pivot, mag);
        }
        if (pivot == 0.0) {
            fact.singular_ = true;
            return; // cannot eliminate further; solve() is never called on this
        }
        const double inv = 1.0 / pivot;
        for (int i = k + 1; i < d; ++i) {
            const double l = a[static_cast<size_t>(i) * d + k] * inv;
            a[static_cast<size_t>(i) * d + k] = l;
            for (int j = k + 1; j < d; ++j)
                a[static_cast<size_t>(i) * d + j] -= l * a[static_cast<size_t>(k) * d + j];
        }
    }
    fact.singular_ = min_pivot < pivot_tol * max_pivot;
}

SimplexFactorization factorize_simplex(const PointSet& points, std::span<const int> indices,
                                       double pivot_tol) {
    SimplexFactorization fact;
    factorize_simplex_into(fact, points, indices, pivot_tol);
    return fact;
}

void SimplexFactorization::solve(double* rhs) const {
    const int d = d_;
    const double* a = lu_.data();
    // All interchanges first: the stored L is the fully pivoted factor.
    for (int k = 0; k < d; ++k)
        if (perm_[k] != k) std::swap(rhs[k], rhs[perm_[k]]);
    for (int k = 0; k < d; ++k) {
        for (int i = k + 1; i < d; ++i)
            rhs[i] -= a[static_cast<size_t>(i) * d + k] * rhs[k];
    }
    for (int k = d - 1; k >= 0; --k) {
        double v = rhs[k];
        for (int j = k + 1; j < d; ++j)
            v -= a[static_cast<size_t>(k) * d + j] * rhs[j];
        rhs[k] = v / a[static_cast<size_t>(k) * d + k];
    }
}

namespace {

// lambda must have room for d+1 entries.
void solve_lambda(const SimplexFactorization& fact, std::span<const double> query, double* lambda) {
    const int d = fact.dim();
    const std::span<const double> base = fact.base_vertex();
    for (int r = 0; r < d; ++r) lambda[r] = query[r] - base[r];
    fact.solve(lambda);
    double sum = 0.0;
    for (int r = 0; r < d; ++r) sum += lambda[r];
    lambda[d] = 1.0 - sum;
}

} // namespace

BarycentricCoords barycentric(const SimplexFactorization& fact, std::span<const double> query) {
    if (fact.singular())
        throw std::domain_error("barycentric: degenerate simplex");
    BarycentricCoords out;
    out.lambda.resize(fact.dim() + 1);
    solve_lambda(fact, query, out.lambda.data());
    return out;
}

bool contains(const SimplexFactorization& fact, std::span<const double> query, double tol) {
    if (fact.singular()) return false;
    const int d = fact.dim();
    double stack[64];
    std::vector<double> heap;
    double* lambda = stack;
    if (d + 1 > 64) {
        heap.resize(d + 1);
        lambda = heap.data();
    }
    solve_lambda(fact, query, lambda);
    for (int r = 0; r <= d; ++r)
        if (lambda[r] < -tol) return false;
    return true;
}

std::vector<uint8_t> batch_contains(const SimplexFactorization& fact, const PointSet& points,
                                    std::span<const int> query_indices, double tol) {
    std::vector<uint8_t> out(query_indices.size(), 0);
    if (fact.singular()) return out;
    const int d = fact.dim();
    double stack[64];
    std::vector<double> heap;
    double* lambda = stack;
    if (d + 1 > 64) {
        heap.resize(d + 1);
        lambda = heap.data();
    }
    for (size_t q = 0; q < query_indices.size(); ++q) {
        const int idx = query_indices[q];
        if (idx < 0 || idx >= points.n)
            throw std::invalid_argument("batch_contains: query index out of range");
        solve_lambda(fact, points.point(idx), lambda);
        bool inside = true;
        for (int r = 0; r <= d; ++r) {
            if (lambda[r] < -tol) { inside = false; break; }
        }
        out[q] = inside ? 1 : 0;
    }
    return out;
}

} // namespace depthbandit
