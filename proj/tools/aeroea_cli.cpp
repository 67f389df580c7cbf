#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aeroea/aeroea.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

aeroea::EaParams params_from_json_file(const std::string& path) {
    aeroea::EaParams params;
    const json doc = json::parse(aeroea::read_file(path));
    if (doc.contains("pop_size")) params.pop_size = doc["pop_size"].get<int>();
    if (doc.contains("eval_budget")) params.eval_budget = doc["eval_budget"].get<long long>();
    if (doc.contains("ks")) params.ks = doc["ks"].get<int>();
    if (doc.contains("kr")) params.kr = doc["kr"].get<int>();
    if (doc.contains("wp_penalty")) params.wp_penalty = doc["wp_penalty"].get<int>();
    if (doc.contains("lp_penalty")) params.lp_penalty = doc["lp_penalty"].get<int>();
    if (doc.contains("clone_probability")) params.clone_probability = doc["clone_probability"].get<double>();
    if (doc.contains("single_shift")) params.single_shift = doc["single_shift"].get<bool>();
    return params;
}

int cmd_generate(const std::string& batch, int count, std::uint64_t seed, double factor,
                 int aircraft, int technicians, int work_packages, bool single_shift,
                 const std::string& out_dir) {
    aeroea::GeneratorConfig cfg;
    int n = count;
    if (batch == "a") {
        cfg = aeroea::batch_a_config(seed);
        if (n <= 0) n = 40;
    } else if (batch == "b") {
        cfg = aeroea::batch_b_config(seed);
        if (n <= 0) n = 20;
    } else if (batch == "smoke") {
        cfg = aeroea::smoke_config(seed);
        if (n <= 0) n = 2;
    } else if (batch == "custom") {
        cfg.seed = seed;
        if (n <= 0) n = 1;
    } else {
        std::cerr << "unknown batch preset '" << batch << "' (use a, b, smoke or custom)\n";
        return 1;
    }
    if (factor > 0) cfg.turnaround_factor = factor;
    if (aircraft > 0) cfg.n_aircraft = aircraft;
    if (work_packages > 0) cfg.n_work_packages = work_packages;
    if (technicians > 0) {
        if (technicians != cfg.n_technicians) {
            std::cerr << "custom rosters must keep the certification mix consistent; "
                         "adjusting counts proportionally\n";
        }
        // scale the mix, preserving the sum
        aeroea::GeneratorConfig scaled = cfg;
        scaled.n_technicians = technicians;
        int assigned = 0;
        for (std::size_t i = 0; i < scaled.roster_mix.size(); ++i) {
            scaled.roster_mix[i] = std::max(
                1, technicians * cfg.roster_mix[i] / cfg.n_technicians);
            assigned += scaled.roster_mix[i];
        }
        scaled.roster_mix[0] += technicians - assigned;
        cfg = scaled;
    }
    cfg.single_shift = single_shift;

    fs::create_directories(out_dir);
    const auto instances = aeroea::generate_batch(cfg, n);

    aeroea::write_file((fs::path(out_dir) / "catalog.csv").string(),
                       aeroea::write_catalog_csv(instances.front().catalog));
    aeroea::write_file((fs::path(out_dir) / "roster.csv").string(),
                       aeroea::write_roster_csv(instances.front().roster));
    for (std::size_t k = 0; k < instances.size(); ++k) {
        const std::string name = "instance_" + std::to_string(k + 1) + ".csv";
        aeroea::write_file((fs::path(out_dir) / name).string(),
                           aeroea::write_instance_csv(instances[k]));
    }
    const auto stats = aeroea::instance_statistics(instances);
    aeroea::write_file((fs::path(out_dir) / "batch_stats.csv").string(),
                       aeroea::write_batch_stats_csv(stats));

    std::printf("wrote %zu instances to %s\n", instances.size(), out_dir.c_str());
    std::printf("avg total turnaround %.1f min, avg WP duration %.1f min, "
                "WP%%-of-turnaround %.1f%%, WPs/aircraft %.2f\n",
                stats.avg_total_turnaround, stats.avg_wp_total_duration,
                stats.wp_pct_of_turnaround, stats.avg_wps_per_aircraft);
    return 0;
}

int cmd_solve(const std::string& instance_path, const std::string& catalog_path,
              const std::string& roster_path, aeroea::EaParams params, int runs,
              std::uint64_t seed, const std::string& out_dir, bool gantt) {
    const auto catalog = aeroea::parse_catalog_csv(aeroea::read_file(catalog_path));
    const auto roster = aeroea::parse_roster_csv(aeroea::read_file(roster_path));
    const auto instance =
        aeroea::parse_instance_csv(aeroea::read_file(instance_path), catalog, roster);
    const std::string id = fs::path(instance_path).stem().string();

    fs::create_directories(out_dir);
    std::vector<aeroea::BenchRow> rows;
    aeroea::BenchRow row;
    row.instance_id = id;

    long long best = -1;
    double fitness_sum = 0, w_sum = 0, l_sum = 0, pct_sum = 0;
    aeroea::InstanceLayout layout(instance);
    aeroea::DecodeContext ctx(layout, params.single_shift);

    for (int r = 0; r < runs; ++r) {
        params.seed = aeroea::run_seed(seed, id, r);
        const auto result = aeroea::run_ea(instance, params);

        const auto schedule = aeroea::decode(ctx, result.best.chromosome);
        json run_doc;
        run_doc["run"] = r;
        run_doc["seed"] = params.seed;
        run_doc["best_fitness"] = result.best_fitness;
        run_doc["w"] = result.best.report.w;
        run_doc["l"] = result.best.report.l;
        run_doc["evaluations"] = result.evaluations;
        run_doc["last_improvement_eval"] = result.last_improvement_eval;
        run_doc["pct_evals"] = 100.0 * static_cast<double>(result.last_improvement_eval) /
                               static_cast<double>(params.eval_budget);
        run_doc["schedule"] = aeroea::schedule_to_json(schedule, layout, result.best.report);
        aeroea::write_file((fs::path(out_dir) / ("run_" + std::to_string(r) + ".json")).string(),
                           run_doc.dump(2) + "\n");
        if (gantt) {
            aeroea::write_file((fs::path(out_dir) / ("run_" + std::to_string(r) + ".txt")).string(),
                               aeroea::schedule_to_gantt(schedule, layout));
        }

        if (best < 0 || result.best_fitness < best) best = result.best_fitness;
        fitness_sum += static_cast<double>(result.best_fitness);
        w_sum += result.best.report.w;
        l_sum += result.best.report.l;
        pct_sum += 100.0 * static_cast<double>(result.last_improvement_eval) /
                   static_cast<double>(params.eval_budget);
        std::printf("run %d: fitness %lld (w=%d l=%d), last improvement at eval %lld\n", r,
                    result.best_fitness, result.best.report.w, result.best.report.l,
                    result.last_improvement_eval);
    }
    row.best = best;
    row.avg = fitness_sum / runs;
    row.missing_staff = w_sum / runs;
    row.late = l_sum / runs;
    row.pct_evals = pct_sum / runs;
    rows.push_back(row);
    aeroea::write_file((fs::path(out_dir) / "summary.csv").string(), aeroea::results_csv(rows));
    std::printf("summary: best %lld, avg %.2f -> %s/summary.csv\n", row.best, row.avg,
                out_dir.c_str());
    return 0;
}

int cmd_bench(const std::string& batch_dir, int repeats, const std::string& params_file,
              int workers, std::uint64_t seed, const std::string& out_path) {
    aeroea::BenchConfig cfg;
    if (!params_file.empty()) cfg.params = params_from_json_file(params_file);
    cfg.repeats = repeats;
    cfg.workers = workers;
    cfg.master_seed = seed;

    const auto result = aeroea::run_benchmark_dir(batch_dir, cfg);
    aeroea::write_file(out_path, aeroea::results_csv(result.rows));
    std::printf("%s\n", aeroea::results_csv(result.rows).c_str());
    std::printf("instances: %d, best==0 on %.0f%%, all runs 0 on %.0f%%\n",
                result.summary.instances, 100.0 * result.summary.frac_best_zero,
                100.0 * result.summary.frac_all_zero);
    return 0;
}

int cmd_render(const std::string& instance_path, const std::string& catalog_path,
               const std::string& roster_path, const std::string& schedule_path,
               const std::string& format) {
    const auto catalog = aeroea::parse_catalog_csv(aeroea::read_file(catalog_path));
    const auto roster = aeroea::parse_roster_csv(aeroea::read_file(roster_path));
    const auto instance =
        aeroea::parse_instance_csv(aeroea::read_file(instance_path), catalog, roster);
    aeroea::InstanceLayout layout(instance);

    json doc = json::parse(aeroea::read_file(schedule_path));
    if (doc.contains("schedule")) doc = doc["schedule"]; // accept solve run files
    const auto schedule = aeroea::schedule_from_json(doc, layout);
    const auto report = aeroea::evaluate(schedule, layout, 1, 10);
    std::cout << aeroea::export_schedule(schedule, layout, report, format);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"AERO-EA aircraft maintenance scheduling toolkit"};
    app.require_subcommand(1);

    // generate
    std::string gen_batch = "custom", gen_out = "batch";
    int gen_count = 0, gen_aircraft = 0, gen_technicians = 0, gen_wps = 0;
    std::uint64_t gen_seed = 0;
    double gen_factor = 0;
    bool gen_single_shift = false;
    auto* generate = app.add_subcommand("generate", "generate problem instances");
    generate->add_option("--batch", gen_batch, "preset: a, b, smoke or custom");
    generate->add_option("--count", gen_count, "instances to generate (preset default)");
    generate->add_option("--seed", gen_seed, "master seed");
    generate->add_option("--factor", gen_factor, "turnaround factor override");
    generate->add_option("--aircraft", gen_aircraft, "aircraft per instance");
    generate->add_option("--technicians", gen_technicians, "roster size");
    generate->add_option("--work-packages", gen_wps, "catalog size");
    generate->add_flag("--single-shift", gen_single_shift, "no daily shift repetition");
    generate->add_option("--out", gen_out, "output directory")->required();

    // solve
    std::string sol_instance, sol_catalog, sol_roster, sol_out = "solve_out";
    aeroea::EaParams sol_params;
    int sol_runs = 10;
    std::uint64_t sol_seed = 0;
    bool sol_gantt = false;
    auto* solve = app.add_subcommand("solve", "run the evolutionary solver on one instance");
    solve->add_option("--instance", sol_instance)->required();
    solve->add_option("--catalog", sol_catalog)->required();
    solve->add_option("--roster", sol_roster)->required();
    solve->add_option("--pop", sol_params.pop_size, "population size");
    solve->add_option("--evals", sol_params.eval_budget, "evaluation budget");
    solve->add_option("--ks", sol_params.ks, "selection tournament size");
    solve->add_option("--kr", sol_params.kr, "replacement tournament size");
    solve->add_option("--wp", sol_params.wp_penalty, "uncovered-slot penalty");
    solve->add_option("--lp", sol_params.lp_penalty, "late-aircraft penalty");
    solve->add_option("--runs", sol_runs, "independent repeats");
    solve->add_option("--seed", sol_seed, "master seed");
    solve->add_flag("--single-shift", sol_params.single_shift, "no daily shift repetition");
    solve->add_flag("--gantt", sol_gantt, "also write text timelines");
    solve->add_option("--out", sol_out, "output directory");

    // bench
    std::string bench_dir, bench_params, bench_out = "results.csv";
    int bench_repeats = 10, bench_workers = 1;
    std::uint64_t bench_seed = 0;
    auto* bench = app.add_subcommand("bench", "benchmark a batch directory");
    bench->add_option("--batch", bench_dir, "batch directory")->required();
    bench->add_option("--repeats", bench_repeats, "runs per instance");
    bench->add_option("--params", bench_params, "EA parameter JSON file");
    bench->add_option("--workers", bench_workers, "parallel workers");
    bench->add_option("--seed", bench_seed, "master seed");
    bench->add_option("--out", bench_out, "results CSV path");

    // render
    std::string ren_instance, ren_catalog, ren_roster, ren_schedule, ren_format = "gantt";
    auto* render = app.add_subcommand("render", "re-render an exported schedule");
    render->add_option("--instance", ren_instance)->required();
    render->add_option("--catalog", ren_catalog)->required();
    render->add_option("--roster", ren_roster)->required();
    render->add_option("--schedule", ren_schedule, "schedule or solve-run JSON")->required();
    render->add_option("--format", ren_format, "json or gantt");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            return cmd_generate(gen_batch, gen_count, gen_seed, gen_factor, gen_aircraft,
                                gen_technicians, gen_wps, gen_single_shift, gen_out);
        }
        if (solve->parsed()) {
            return cmd_solve(sol_instance, sol_catalog, sol_roster, sol_params, sol_runs, sol_seed,
                             sol_out, sol_gantt);
        }
        if (bench->parsed()) {
            return cmd_bench(bench_dir, bench_repeats, bench_params, bench_workers, bench_seed,
                             bench_out);
        }
        if (render->parsed()) {
            return cmd_render(ren_instance, ren_catalog, ren_roster, ren_schedule, ren_format);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
