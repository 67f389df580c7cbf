#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "aeroea/csv_io.hpp"
#include "aeroea/domain.hpp"
#include "aeroea/ea.hpp"
#include "aeroea/rng.hpp"

namespace aeroea {

struct BenchRow {
    std::string instance_id;
    long long best = 0;        // min fitness over runs
    double avg = 0.0;          // mean fitness over runs
    double missing_staff = 0.0; // mean w of per-run best
    double late = 0.0;          // mean l of per-run best
    double pct_evals = 0.0;     // mean 100 * last_improvement / budget
    bool error = false;
    std::string error_message;
};

struct BenchSummary {
    int instances = 0;
    double frac_best_zero = 0.0; // instances whose best run hit fitness 0
    double frac_all_zero = 0.0;  // instances where every run hit fitness 0
};

struct BenchConfig {
    EaParams params;
    int repeats = 10;
    int workers = 1;
    std::uint64_t master_seed = 0;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    BenchSummary summary;
};

inline std::uint64_t run_seed(std::uint64_t master, const std::string& instance_id, int run_index) {
    return derive_seed(master, instance_id, static_cast<std::uint64_t>(run_index));
}

namespace detail {

struct BenchTask {
    int instance_idx;
    int run_idx;
};

} // namespace detail

/// Executes `repeats` seeded runs per instance. Tasks spread over workers;
/// each result lands in its preassigned slot, so aggregation order never
/// depends on completion order.
inline BenchResult run_benchmark(const std::vector<std::string>& instance_ids,
                                 const std::vector<ProblemInstance>& instances,
                                 const BenchConfig& cfg) {
    if (instance_ids.size() != instances.size()) throw Error("run_benchmark: id/instance mismatch");
    cfg.params.validate();
    if (cfg.repeats < 1) throw Error("run_benchmark: repeats must be positive");

    const int n = static_cast<int>(instances.size());
    std::vector<std::vector<RunResult>> results(static_cast<std::size_t>(n));
    for (auto& r : results) r.resize(static_cast<std::size_t>(cfg.repeats));

    std::vector<detail::BenchTask> tasks;
    for (int i = 0; i < n; ++i) {
        for (int r = 0; r < cfg.repeats; ++r) tasks.push_back({i, r});
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t k = next.fetch_add(1);
            if (k >= tasks.size()) break;
            const auto [i, r] = tasks[k];
            EaParams params = cfg.params;
            params.seed = run_seed(cfg.master_seed, instance_ids[static_cast<std::size_t>(i)], r);
            results[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] =
                run_ea(instances[static_cast<std::size_t>(i)], params);
        }
    };
    const int n_workers = std::max(1, cfg.workers);
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    BenchResult out;
    int best_zero = 0;
    int all_zero = 0;
    for (int i = 0; i < n; ++i) {
        BenchRow row;
        row.instance_id = instance_ids[static_cast<std::size_t>(i)];
        long long best = results[static_cast<std::size_t>(i)][0].best_fitness;
        double fitness_sum = 0, w_sum = 0, l_sum = 0, pct_sum = 0;
        bool every_zero = true;
        for (const auto& run : results[static_cast<std::size_t>(i)]) {
            best = std::min(best, run.best_fitness);
            fitness_sum += static_cast<double>(run.best_fitness);
            w_sum += run.best.report.w;
            l_sum += run.best.report.l;
            pct_sum += 100.0 * static_cast<double>(run.last_improvement_eval) /
                       static_cast<double>(cfg.params.eval_budget);
            every_zero = every_zero && run.best_fitness == 0;
        }
        const double reps = static_cast<double>(cfg.repeats);
        row.best = best;
        row.avg = fitness_sum / reps;
        row.missing_staff = w_sum / reps;
        row.late = l_sum / reps;
        row.pct_evals = pct_sum / reps;
        out.rows.push_back(std::move(row));
        if (best == 0) ++best_zero;
        if (every_zero) ++all_zero;
    }
    out.summary.instances = n;
    out.summary.frac_best_zero = n > 0 ? static_cast<double>(best_zero) / n : 0.0;
    out.summary.frac_all_zero = n > 0 ? static_cast<double>(all_zero) / n : 0.0;
    return out;
}

// ---------------------------------------------------------------------------
// Batch directories
// ---------------------------------------------------------------------------

/// Loads instance_*.csv plus the shared catalog.csv and roster.csv from a
/// batch directory. Unreadable instances surface as error rows.
inline BenchResult run_benchmark_dir(const std::string& batch_dir, const BenchConfig& cfg) {
    namespace fs = std::filesystem;
    const auto catalog = parse_catalog_csv(read_file((fs::path(batch_dir) / "catalog.csv").string()));
    const auto roster = parse_roster_csv(read_file((fs::path(batch_dir) / "roster.csv").string()));

    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(batch_dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("instance_", 0) == 0 && entry.path().extension() == ".csv") {
            paths.push_back(entry.path().string());
        }
    }
    std::sort(paths.begin(), paths.end(), [](const std::string& a, const std::string& b) {
        // numeric-aware ordering so instance_10 follows instance_9
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });

    std::vector<std::string> ids;
    std::vector<ProblemInstance> instances;
    std::vector<BenchRow> error_rows;
    for (const auto& path : paths) {
        const std::string id = fs::path(path).stem().string();
        try {
            instances.push_back(parse_instance_csv(read_file(path), catalog, roster));
            ids.push_back(id);
        } catch (const std::exception& e) {
            BenchRow row;
            row.instance_id = id;
            row.error = true;
            row.error_message = e.what();
            error_rows.push_back(std::move(row));
        }
    }

    BenchResult result = run_benchmark(ids, instances, cfg);
    for (auto& row : error_rows) result.rows.push_back(std::move(row));
    std::sort(result.rows.begin(), result.rows.end(), [](const BenchRow& a, const BenchRow& b) {
        return a.instance_id.size() != b.instance_id.size() ? a.instance_id.size() < b.instance_id.size()
                                                            : a.instance_id < b.instance_id;
    });
    return result;
}

inline std::string results_csv(const std::vector<BenchRow>& rows) {
    std::string out = "instance,best,avg,missing_staff,late,pct_evals\n";
    for (const auto& row : rows) {
        if (row.error) {
            out += row.instance_id + ",ERROR,,,,\n";
            continue;
        }
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s,%lld,%.2f,%.2f,%.2f,%.1f\n", row.instance_id.c_str(),
                      row.best, row.avg, row.missing_staff, row.late, row.pct_evals);
        out += buf;
    }
    return out;
}

} // namespace aeroea
