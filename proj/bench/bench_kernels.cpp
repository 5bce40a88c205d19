// Timing comparison between the OpenMP kernels and their single-threaded
// reference implementations. Usage: depth_bench [threads]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "depthbandit/dataset.hpp"
#include "depthbandit/depth.hpp"
#include "depthbandit/parallel.hpp"
#include "depthbandit/rng.hpp"

using namespace depthbandit;

namespace {

template <typename F>
double time_ms(F&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %10.1f ms   parallel %10.1f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main(int argc, char** argv) {
    if (argc > 1) set_worker_cap(std::atoi(argv[1]));
    std::printf("workers: %d\n", resolve_workers());

    { // Monte Carlo containment sampling, all points active
        const PointSet points = generate_gaussian(2000, 2, 42);
        std::vector<int> active(points.n);
        for (int i = 0; i < points.n; ++i) active[i] = i;
        const int64_t draws = 20000;

        SampleCounts serial, parallel;
        const double t_serial = time_ms([&] {
            Rng rng = Rng::for_stream(7, 1);
            serial = mc_estimate_serial(points, active, draws, rng);
        });
        const double t_parallel = time_ms([&] {
            Rng rng = Rng::for_stream(7, 1);
            parallel = mc_estimate(points, active, draws, rng);
        });
        if (serial.hits != parallel.hits) {
            std::printf("mc_estimate mismatch!\n");
            return 1;
        }
        report("mc_estimate (n=2000, 20k)", t_serial, t_parallel);
    }

    { // full enumeration of all simplices
        const PointSet points = generate_gaussian(120, 2, 43);
        std::vector<DepthEstimate> serial, parallel;
        const double t_serial = time_ms([&] { serial = exact_depth_naive_all_serial(points); });
        const double t_parallel = time_ms([&] { parallel = exact_depth_naive_all(points); });
        for (int i = 0; i < points.n; ++i) {
            if (serial[i].contained != parallel[i].contained) {
                std::printf("exact_depth_naive_all mismatch!\n");
                return 1;
            }
        }
        report("naive_all (n=120)", t_serial, t_parallel);
    }

    { // planar sweep per point
        const PointSet points = generate_gaussian(4000, 2, 44);
        std::vector<DepthEstimate> serial, parallel;
        const double t_serial = time_ms([&] { serial = exact_depth_planar_all_serial(points); });
        const double t_parallel = time_ms([&] { parallel = exact_depth_planar_all(points); });
        for (int i = 0; i < points.n; ++i) {
            if (serial[i].contained != parallel[i].contained) {
                std::printf("exact_depth_planar_all mismatch!\n");
                return 1;
            }
        }
        report("planar_all (n=4000)", t_serial, t_parallel);
    }

    { // majority-depth sampling
        const PointSet points = generate_gaussian(500, 3, 45);
        std::vector<int> active(points.n);
        for (int i = 0; i < points.n; ++i) active[i] = i;
        const int64_t draws = 20000;

        SampleCounts serial, parallel;
        const double t_serial = time_ms([&] {
            Rng rng = Rng::for_stream(9, 1);
            serial = majority_sample_serial(points, active, draws, rng);
        });
        const double t_parallel = time_ms([&] {
            Rng rng = Rng::for_stream(9, 1);
            parallel = majority_sample(points, active, draws, rng);
        });
        if (serial.hits != parallel.hits) {
            std::printf("majority_sample mismatch!\n");
            return 1;
        }
        report("majority_sample (n=500,3d)", t_serial, t_parallel);
    }

    return 0;
}
