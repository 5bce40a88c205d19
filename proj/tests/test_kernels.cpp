// The OpenMP kernels must reproduce their single-threaded references
// bit-for-bit at every worker count.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "depthbandit/dataset.hpp"
#include "depthbandit/depth.hpp"
#include "depthbandit/parallel.hpp"
#include "depthbandit/rng.hpp"

using namespace depthbandit;

namespace {
const int kWorkerCounts[] = {1, 3, 8};
}

TEST_CASE("mc_estimate matches its serial reference") {
    const PointSet pts = generate_gaussian(150, 2, 101);
    std::vector<int> active;
    for (int i = 0; i < pts.n; i += 2) active.push_back(i);

    Rng rng_serial = Rng::for_stream(5, 2);
    const auto serial = mc_estimate_serial(pts, active, 5000, rng_serial);

    for (const int workers : kWorkerCounts) {
        set_worker_cap(workers);
        Rng rng = Rng::for_stream(5, 2);
        const auto parallel = mc_estimate(pts, active, 5000, rng);
        CHECK(parallel.hits == serial.hits);
        CHECK(parallel.degenerate_draws == serial.degenerate_draws);
    }
    set_worker_cap(0);
}

TEST_CASE("majority_sample matches its serial reference") {
    const PointSet pts = generate_gaussian(80, 3, 102);
    std::vector<int> active;
    for (int i = 0; i < pts.n; i += 3) active.push_back(i);

    Rng rng_serial = Rng::for_stream(6, 4);
    const auto serial = majority_sample_serial(pts, active, 4000, rng_serial);

    for (const int workers : kWorkerCounts) {
        set_worker_cap(workers);
        Rng rng = Rng::for_stream(6, 4);
        const auto parallel = majority_sample(pts, active, 4000, rng);
        CHECK(parallel.hits == serial.hits);
        CHECK(parallel.degenerate_draws == serial.degenerate_draws);
    }
    set_worker_cap(0);
}

TEST_CASE("exact_depth_naive_all matches its serial reference") {
    const PointSet pts = generate_gaussian(40, 2, 103);
    const auto serial = exact_depth_naive_all_serial(pts);
    for (const int workers : kWorkerCounts) {
        set_worker_cap(workers);
        const auto parallel = exact_depth_naive_all(pts);
        for (int i = 0; i < pts.n; ++i) CHECK(parallel[i].contained == serial[i].contained);
    }
    set_worker_cap(0);
}

TEST_CASE("naive_all agrees with per-point naive calls") {
    const PointSet pts = generate_gaussian(18, 3, 104);
    const auto all = exact_depth_naive_all(pts);
    for (int i = 0; i < pts.n; ++i)
        CHECK(all[i].contained == exact_depth_naive(pts, i).contained);
}

TEST_CASE("exact_depth_planar_all matches its serial reference") {
    const PointSet pts = generate_gaussian(300, 2, 105);
    const auto serial = exact_depth_planar_all_serial(pts);
    for (const int workers : kWorkerCounts) {
        set_worker_cap(workers);
        const auto parallel = exact_depth_planar_all(pts);
        for (int i = 0; i < pts.n; ++i) CHECK(parallel[i].contained == serial[i].contained);
    }
    set_worker_cap(0);
}
