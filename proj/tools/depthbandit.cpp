// Command-line front end: dataset generation, depth computation, the three
// adaptive identification tasks, and the experiment suites.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "depthbandit/analysis.hpp"
#include "depthbandit/bandit.hpp"
#include "depthbandit/dataset.hpp"
#include "depthbandit/depth.hpp"
#include "depthbandit/parallel.hpp"

using json = nlohmann::ordered_json;
using namespace depthbandit;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

void write_json(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << doc.dump(2) << '\n';
}

json per_point_array(const RunReport& report) {
    json arr = json::array();
    for (size_t i = 0; i < report.mu_hat.size(); ++i) {
        arr.push_back({{"index", i},
                       {"mu_hat", report.mu_hat[i]},
                       {"pulls", report.pulls[i]},
                       {"exact", static_cast<bool>(report.exact_computed[i])}});
    }
    return arr;
}

json result_doc(const std::string& task, json config, json answer, json per_point,
                double total_cost_units, int rounds, double wall_ms) {
    json doc;
    doc["task"] = task;
    doc["config"] = std::move(config);
    doc["answer"] = std::move(answer);
    doc["per_point"] = std::move(per_point);
    doc["total_cost_units"] = total_cost_units;
    doc["rounds"] = rounds;
    doc["wall_time_ms"] = wall_ms;
    return doc;
}

struct DatasetArgs {
    std::string input;
    bool header = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("input", input, "CSV dataset, one point per row")->required();
        cmd->add_flag("--header", header, "skip one header line");
    }
    PointSet load() const { return read_csv(input, header); }
};

struct BanditArgs {
    double delta = 0.05;
    double epsilon = 0.0;
    double ct = 1.0;
    double switch_factor = 1.0;
    uint64_t seed = 0;
    std::string out;

    void attach(CLI::App* cmd) {
        cmd->add_option("--delta", delta, "failure probability in (0,1)");
        cmd->add_option("--epsilon", epsilon, "additive accuracy slack (0 = exact)");
        cmd->add_option("--ct", ct, "schedule scale (0.1 = tight practical mode)");
        cmd->add_option("--switch-factor", switch_factor, "exact-computation switch factor in (0,1]");
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--out", out, "write the result JSON here");
    }

    BanditConfig config() const {
        BanditConfig cfg;
        cfg.delta = delta;
        cfg.epsilon = epsilon;
        cfg.c_t = ct;
        cfg.exact_switch_factor = switch_factor;
        cfg.seed = seed;
        return cfg;
    }

    json config_json(const PointSet& points, const std::string& input, bool header) const {
        json cfg;
        cfg["input"] = input;
        cfg["header"] = header;
        cfg["n"] = points.n;
        cfg["d"] = points.d;
        cfg["delta"] = delta;
        cfg["epsilon"] = epsilon;
        cfg["ct"] = ct;
        cfg["switch_factor"] = switch_factor;
        cfg["seed"] = seed;
        cfg["e_cost"] = default_cost_model(points).e_cost;
        return cfg;
    }
};

void emit_result(const std::string& out_path, const json& doc, const std::string& summary) {
    if (!out_path.empty()) write_json(out_path, doc);
    std::cout << summary << '\n';
}

// ---------------------------------------------------------------------------
// generate

int run_generate(int n, int d, const std::string& dist, uint64_t seed, const std::string& out) {
    if (dist != "gaussian") throw UsageError("unknown distribution: " + dist);
    if (d < 1) throw UsageError("d must be >= 1");
    if (n < d + 2) throw UsageError("n must be at least d+2");
    const PointSet points = generate_gaussian(n, d, seed);
    write_csv(out, points);
    std::cout << "generated " << n << " points in " << d << "d (seed " << seed << ") -> " << out
              << '\n';
    return 0;
}

// ---------------------------------------------------------------------------
// depth

int run_depth(const DatasetArgs& data, int index, bool all, const std::string& method,
              int64_t samples, uint64_t seed, const std::string& out) {
    const auto start = std::chrono::steady_clock::now();
    const PointSet points = data.load();
    if (!all && (index < 0 || index >= points.n)) throw UsageError("--index out of range");
    if (method == "planar" && points.d != 2) throw UsageError("--method planar requires d = 2");
    if (method == "mc" && samples <= 0) throw UsageError("samples must be positive");

    std::vector<int> targets;
    if (all)
        for (int i = 0; i < points.n; ++i) targets.push_back(i);
    else
        targets.push_back(index);

    json per_point = json::array();
    double total_units = 0.0;
    std::optional<double> half_width;
    std::vector<double> means(points.n, 0.0);

    if (method == "naive" || method == "planar") {
        std::vector<DepthEstimate> est;
        if (method == "naive") {
            est = all ? exact_depth_naive_all(points)
                      : std::vector<DepthEstimate>{exact_depth_naive(points, index)};
        } else {
            est = all ? exact_depth_planar_all(points)
                      : std::vector<DepthEstimate>{exact_depth_planar(points, index)};
        }
        const double unit_cost = method == "planar"
                                     ? points.n * std::log(static_cast<double>(points.n))
                                     : binomial(points.n, points.d + 1);
        for (const auto& e : est) {
            per_point.push_back({{"index", e.point_index},
                                 {"mu_hat", e.mean},
                                 {"pulls", e.samples},
                                 {"exact", true}});
            means[e.point_index] = e.mean;
            total_units += unit_cost;
        }
    } else if (method == "mc") {
        Rng rng = Rng::for_stream(seed, 1);
        const SampleCounts counts = mc_estimate(points, targets, samples, rng);
        constexpr double kDelta = 0.05;
        half_width = std::sqrt(std::log(2.0 / kDelta) / (2.0 * static_cast<double>(samples)));
        for (size_t a = 0; a < targets.size(); ++a) {
            const double mean = static_cast<double>(counts.hits[a]) / static_cast<double>(samples);
            per_point.push_back({{"index", targets[a]},
                                 {"mu_hat", mean},
                                 {"pulls", samples},
                                 {"exact", false}});
            means[targets[a]] = mean;
            total_units += static_cast<double>(samples);
        }
    } else {
        throw UsageError("unknown method: " + method + " (naive|planar|mc)");
    }

    int best = targets.front();
    for (const int i : targets)
        if (means[i] > means[best]) best = i;

    json cfg;
    cfg["input"] = data.input;
    cfg["header"] = data.header;
    cfg["n"] = points.n;
    cfg["d"] = points.d;
    cfg["method"] = method;
    cfg["index"] = all ? json(nullptr) : json(index);
    cfg["all"] = all;
    cfg["samples"] = method == "mc" ? json(samples) : json(nullptr);
    cfg["seed"] = seed;

    json doc = result_doc("depth", cfg, best, per_point, total_units, 0, elapsed_ms(start));
    if (half_width) doc["half_width"] = *half_width;
    if (!out.empty()) write_json(out, doc);

    for (const auto& row : doc["per_point"])
        std::printf("point %4d  depth %.10f%s\n", row["index"].get<int>(),
                    row["mu_hat"].get<double>(), row["exact"].get<bool>() ? "" : " (mc)");
    if (half_width) std::printf("half-width %.6f (delta 0.05)\n", *half_width);
    return 0;
}

// ---------------------------------------------------------------------------
// median / topk / rank

int run_median(const DatasetArgs& data, const BanditArgs& args) {
    const auto start = std::chrono::steady_clock::now();
    const PointSet points = data.load();
    BanditConfig cfg = args.config();
    cfg.task = Task::median;
    const RunReport report = adaptive_median(points, cfg);

    json cfg_json = args.config_json(points, data.input, data.header);
    json doc = result_doc("median", cfg_json, report.answer.front(), per_point_array(report),
                          report.total_cost_units, report.rounds, elapsed_ms(start));
    char summary[256];
    std::snprintf(summary, sizeof(summary),
                  "median: index %d (mu_hat %.6f) rounds %d cost %.3e units",
                  report.answer.front(), report.mu_hat[report.answer.front()], report.rounds,
                  report.total_cost_units);
    emit_result(args.out, doc, summary);
    return 0;
}

int run_topk(const DatasetArgs& data, const BanditArgs& args, int k) {
    const auto start = std::chrono::steady_clock::now();
    const PointSet points = data.load();
    if (k < 1 || k >= points.n) throw UsageError("--k must satisfy 1 <= k < n");
    BanditConfig cfg = args.config();
    cfg.task = Task::topk;
    cfg.k = k;
    const RunReport report = adaptive_topk(points, cfg);

    json cfg_json = args.config_json(points, data.input, data.header);
    cfg_json["k"] = k;
    json doc = result_doc("topk", cfg_json, report.answer, per_point_array(report),
                          report.total_cost_units, report.rounds, elapsed_ms(start));
    char summary[256];
    std::snprintf(summary, sizeof(summary), "topk: %d deepest points, rounds %d cost %.3e units", k,
                  report.rounds, report.total_cost_units);
    emit_result(args.out, doc, summary);
    return 0;
}

std::vector<int> parse_boundaries(const std::string& text, int n) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "n") {
            out.push_back(n);
        } else {
            try {
                size_t used = 0;
                const int v = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                out.push_back(v);
            } catch (const std::exception&) {
                throw UsageError("malformed boundary value: '" + tok + "'");
            }
        }
    }
    return out;
}

int run_rank(const DatasetArgs& data, const BanditArgs& args, const std::string& boundaries_text) {
    const auto start = std::chrono::steady_clock::now();
    const PointSet points = data.load();
    BanditConfig cfg = args.config();
    cfg.task = Task::coarse_rank;
    cfg.boundaries = parse_boundaries(boundaries_text, points.n);
    RunReport report;
    try {
        report = coarse_rank(points, cfg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    json cfg_json = args.config_json(points, data.input, data.header);
    cfg_json["boundaries"] = cfg.boundaries;
    json doc = result_doc("rank", cfg_json, report.cluster_of, per_point_array(report),
                          report.total_cost_units, report.rounds, elapsed_ms(start));
    char summary[256];
    std::snprintf(summary, sizeof(summary), "rank: %zu clusters, rounds %d cost %.3e units",
                  cfg.boundaries.size() - 1, report.rounds, report.total_cost_units);
    emit_result(args.out, doc, summary);
    return 0;
}

// ---------------------------------------------------------------------------
// experiment suites

struct ExperimentArgs {
    std::string suite;
    int n = 0;
    int d = 2;
    int instances = 10;
    int trials = 0;
    int seeds = 0;
    double delta = 0.05;
    double ct = 1.0;
    uint64_t seed = 1;
    std::string pairing = "paired";
    std::vector<int> ns;
    std::string out;
    std::string summary_out;
};

void write_csv_rows(const std::string& path, const std::string& header,
                    const std::vector<std::string>& rows) {
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << header << '\n';
    for (const auto& r : rows) f << r << '\n';
}

void print_summary(const ExperimentArgs& args, const json& summary) {
    if (!args.summary_out.empty()) write_json(args.summary_out, summary);
    std::cout << summary.dump() << '\n';
}

int run_suite_gap_cdf(ExperimentArgs args) {
    if (args.n == 0) args.n = 200;
    std::vector<double> pooled;
    std::vector<std::string> rows;
    for (int inst = 0; inst < args.instances; ++inst) {
        const PointSet points = generate_gaussian(args.n, args.d, args.seed + inst);
        std::vector<double> depths;
        if (args.d == 2) {
            for (const auto& e : exact_depth_planar_all(points)) depths.push_back(e.mean);
        } else {
            for (const auto& e : exact_depth_naive_all(points)) depths.push_back(e.mean);
        }
        const GapProfile prof = gap_profile(depths, true);
        for (size_t j = 0; j < prof.gaps.size(); ++j) {
            if (prof.normalized[j] <= 0.0) continue;
            pooled.push_back(prof.normalized[j]);
            char row[128];
            std::snprintf(row, sizeof(row), "%d,%.12g,%.12g", inst, prof.gaps[j],
                          prof.normalized[j]);
            rows.push_back(row);
        }
    }
    std::sort(pooled.begin(), pooled.end());
    GapProfile pooled_prof;
    pooled_prof.gaps = pooled;
    pooled_prof.normalized = pooled;
    pooled_prof.exact = true;
    const PowerLawFit fit = fit_power_law(pooled_prof);

    write_csv_rows(args.out, "instance,gap,normalized_gap", rows);
    json summary;
    summary["suite"] = "gap-cdf";
    summary["n"] = args.n;
    summary["instances"] = args.instances;
    summary["alpha"] = fit.alpha;
    summary["r_squared"] = fit.r_squared;
    summary["gaps_used"] = fit.n_points_used;
    print_summary(args, summary);
    return 0;
}

int run_suite_pulls_vs_gap(ExperimentArgs args) {
    if (args.n == 0) args.n = 2000;
    if (args.seeds == 0) args.seeds = 50;
    if (args.d != 2) throw UsageError("pulls-vs-gap requires d = 2 (planar oracle)");

    const PointSet points = generate_gaussian(args.n, args.d, args.seed);
    std::vector<double> depths;
    for (const auto& e : exact_depth_planar_all(points)) depths.push_back(e.mean);
    const double mu_max = *std::max_element(depths.begin(), depths.end());

    std::vector<double> mean_pulls(args.n, 0.0);
    std::vector<uint8_t> ever_exact(args.n, 0);
    for (int s = 0; s < args.seeds; ++s) {
        BanditConfig cfg;
        cfg.delta = args.delta;
        cfg.c_t = args.ct;
        cfg.seed = args.seed + 1 + s;
        const RunReport report = adaptive_median(points, cfg);
        for (int i = 0; i < args.n; ++i) {
            mean_pulls[i] += static_cast<double>(report.pulls[i]) / args.seeds;
            ever_exact[i] |= report.exact_computed[i];
        }
    }

    std::vector<double> x, y;
    std::vector<std::string> rows;
    for (int i = 0; i < args.n; ++i) {
        const double gap = mu_max - depths[i];
        char row[160];
        std::snprintf(row, sizeof(row), "%d,%.12g,%.12g,%.6f,%d", i, gap,
                      gap > 0 ? 1.0 / (gap * gap) : 0.0, mean_pulls[i], ever_exact[i] ? 1 : 0);
        rows.push_back(row);
        if (ever_exact[i] || gap <= 0.0) continue;
        x.push_back(1.0 / (gap * gap));
        y.push_back(mean_pulls[i]);
    }
    const Ols fit = ols_fit(x, y);

    write_csv_rows(args.out, "index,gap,inv_gap_sq,mean_pulls,ever_exact", rows);
    json summary;
    summary["suite"] = "pulls-vs-gap";
    summary["n"] = args.n;
    summary["seeds"] = args.seeds;
    summary["slope"] = fit.slope;
    summary["intercept"] = fit.intercept;
    summary["r_squared"] = fit.r_squared;
    summary["arms_used"] = fit.n_used;
    print_summary(args, summary);
    return 0;
}

int run_suite_scaling(ExperimentArgs args) {
    if (args.ns.empty()) args.ns = {500, 1000, 2000, 4000};
    if (args.trials == 0) args.trials = 3;

    BanditConfig base;
    base.delta = args.delta;
    base.c_t = args.ct;
    base.seed = args.seed;
    const int d = args.d;
    const ScalingCurve adaptive = scaling_curve(
        [&](int n, int trial) {
            return generate_gaussian(n, d, args.seed + static_cast<uint64_t>(trial) * 1000003 + n);
        },
        args.ns, base, args.trials);

    std::vector<double> log_n, log_planar, log_naive;
    std::vector<std::string> rows;
    for (const auto& pt : adaptive.points) {
        const double planar_units = pt.n * (pt.n * std::log(static_cast<double>(pt.n)));
        const double naive_units = pt.n * binomial(pt.n, d + 1);
        log_n.push_back(std::log(static_cast<double>(pt.n)));
        log_planar.push_back(std::log(planar_units));
        log_naive.push_back(std::log(naive_units));
        char row[160];
        std::snprintf(row, sizeof(row), "%d,%.6e,%.6e,%.6e", pt.n, pt.cost_units, planar_units,
                      naive_units);
        rows.push_back(row);
    }
    const Ols planar_fit = ols_fit(log_n, log_planar);
    const Ols naive_fit = ols_fit(log_n, log_naive);

    write_csv_rows(args.out, "n,adaptive_units,planar_exact_units,naive_units", rows);
    json summary;
    summary["suite"] = "scaling";
    summary["trials"] = args.trials;
    summary["adaptive_slope"] = adaptive.slope;
    summary["planar_slope"] = planar_fit.slope;
    summary["naive_slope"] = naive_fit.slope;
    print_summary(args, summary);
    return 0;
}

int run_suite_error_rate(ExperimentArgs args) {
    if (args.n == 0) args.n = 100;
    if (args.trials == 0) args.trials = 200;
    if (args.pairing != "paired" && args.pairing != "fresh")
        throw UsageError("--pairing must be paired or fresh");

    int failures = 0;
    std::vector<std::string> rows;
    for (int t = 0; t < args.trials; ++t) {
        // Paired protocol: two runs with different sampling seeds share each
        // dataset; fresh draws a new dataset per trial.
        const uint64_t instance_seed =
            args.pairing == "paired" ? args.seed + static_cast<uint64_t>(t / 2) : args.seed + t;
        const PointSet points = generate_gaussian(args.n, args.d, instance_seed);

        int oracle = 0;
        std::vector<double> depths;
        if (args.d == 2) {
            for (const auto& e : exact_depth_planar_all(points)) depths.push_back(e.mean);
        } else {
            for (const auto& e : exact_depth_naive_all(points)) depths.push_back(e.mean);
        }
        for (int i = 1; i < args.n; ++i)
            if (depths[i] > depths[oracle]) oracle = i;

        BanditConfig cfg;
        cfg.delta = args.delta;
        cfg.c_t = args.ct;
        cfg.seed = args.seed + 10007 + static_cast<uint64_t>(t) * 13;
        const RunReport report = adaptive_median(points, cfg);
        const bool ok = report.answer.front() == oracle;
        if (!ok) ++failures;
        char row[128];
        std::snprintf(row, sizeof(row), "%d,%llu,%d,%d,%d", t,
                      static_cast<unsigned long long>(instance_seed), report.answer.front(), oracle,
                      ok ? 1 : 0);
        rows.push_back(row);
    }
    const double rate = static_cast<double>(failures) / args.trials;
    const double bound =
        args.delta + 3.0 * std::sqrt(args.delta * (1.0 - args.delta) / args.trials);

    write_csv_rows(args.out, "trial,instance_seed,answer,oracle,success", rows);
    json summary;
    summary["suite"] = "error-rate";
    summary["n"] = args.n;
    summary["trials"] = args.trials;
    summary["pairing"] = args.pairing;
    summary["delta"] = args.delta;
    summary["failures"] = failures;
    summary["failure_rate"] = rate;
    summary["bound"] = bound;
    summary["within_bound"] = rate <= bound;
    print_summary(args, summary);
    return 0;
}

int run_experiment(const ExperimentArgs& args) {
    if (args.suite == "gap-cdf") return run_suite_gap_cdf(args);
    if (args.suite == "pulls-vs-gap") return run_suite_pulls_vs_gap(args);
    if (args.suite == "scaling") return run_suite_scaling(args);
    if (args.suite == "error-rate") return run_suite_error_rate(args);
    throw UsageError("unknown suite: " + args.suite +
                     " (available: pulls-vs-gap, gap-cdf, scaling, error-rate)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive simplicial-depth toolkit"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "write a synthetic dataset");
    int gen_n = 0, gen_d = 2;
    std::string gen_dist = "gaussian", gen_out;
    uint64_t gen_seed = 1;
    gen->add_option("--n", gen_n, "number of points")->required();
    gen->add_option("--d", gen_d, "dimension");
    gen->add_option("--dist", gen_dist, "distribution (gaussian)");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", gen_out, "output CSV path")->required();

    // depth
    auto* depth = app.add_subcommand("depth", "compute depths of dataset points");
    DatasetArgs depth_data;
    depth_data.attach(depth);
    int depth_index = -1;
    bool depth_all = false;
    std::string depth_method = "naive", depth_out;
    int64_t depth_samples = 10000;
    uint64_t depth_seed = 0;
    depth->add_option("--index", depth_index, "point index to evaluate");
    depth->add_flag("--all", depth_all, "evaluate every point");
    depth->add_option("--method", depth_method, "naive|planar|mc");
    depth->add_option("--samples", depth_samples, "Monte Carlo samples (mc)");
    depth->add_option("--seed", depth_seed, "RNG seed (mc)");
    depth->add_option("--out", depth_out, "write the result JSON here");

    // median
    auto* median = app.add_subcommand("median", "adaptive simplicial median");
    DatasetArgs median_data;
    BanditArgs median_args;
    median_data.attach(median);
    median_args.attach(median);

    // topk
    auto* topk = app.add_subcommand("topk", "adaptive deepest-k identification");
    DatasetArgs topk_data;
    BanditArgs topk_args;
    int topk_k = 1;
    topk_data.attach(topk);
    topk_args.attach(topk);
    topk->add_option("--k", topk_k, "number of deepest points")->required();

    // rank
    auto* rank = app.add_subcommand("rank", "coarse depth ranking into clusters");
    DatasetArgs rank_data;
    BanditArgs rank_args;
    std::string rank_boundaries;
    rank_data.attach(rank);
    rank_args.attach(rank);
    rank->add_option("--boundaries", rank_boundaries, "cluster boundaries, e.g. 0,5,n")->required();

    // experiment
    auto* experiment = app.add_subcommand("experiment", "run an experiment suite");
    ExperimentArgs exp;
    experiment->add_option("--suite", exp.suite, "pulls-vs-gap|gap-cdf|scaling|error-rate")
        ->required();
    experiment->add_option("--n", exp.n, "instance size");
    experiment->add_option("--d", exp.d, "dimension");
    experiment->add_option("--instances", exp.instances, "instances (gap-cdf)");
    experiment->add_option("--trials", exp.trials, "trials (error-rate, scaling)");
    experiment->add_option("--seeds", exp.seeds, "sampling seeds (pulls-vs-gap)");
    experiment->add_option("--delta", exp.delta, "failure probability");
    experiment->add_option("--ct", exp.ct, "schedule scale");
    experiment->add_option("--seed", exp.seed, "base seed");
    experiment->add_option("--pairing", exp.pairing, "paired|fresh (error-rate)");
    experiment->add_option("--ns", exp.ns, "sizes for the scaling suite")->delimiter(',');
    experiment->add_option("--out", exp.out, "CSV table output");
    experiment->add_option("--summary-out", exp.summary_out, "JSON summary output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) return run_generate(gen_n, gen_d, gen_dist, gen_seed, gen_out);
        if (*depth) {
            if (depth_all == (depth_index >= 0))
                throw UsageError("specify exactly one of --index or --all");
            return run_depth(depth_data, depth_index, depth_all, depth_method, depth_samples,
                             depth_seed, depth_out);
        }
        if (*median) return run_median(median_data, median_args);
        if (*topk) return run_topk(topk_data, topk_args, topk_k);
        if (*rank) return run_rank(rank_data, rank_args, rank_boundaries);
        if (*experiment) return run_experiment(exp);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
