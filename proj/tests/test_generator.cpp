#include <gtest/gtest.h>

#include "aeroea/csv_io.hpp"
#include "aeroea/generator.hpp"
#include "test_support.hpp"

using namespace aeroea;
using namespace testsup;

TEST(AssignWps, FirstPickIsUnusedWhileAnyRemain) {
    GeneratorConfig cfg;
    Rng catalog_rng(1);
    const auto catalog = synthesize_catalog(24, catalog_rng);
    Rng rng(99);
    CoverageTracker coverage(24);
    for (int aircraft = 0; aircraft < 24; ++aircraft) {
        if (coverage.all_used()) break;
        const auto before = coverage.unused_ids();
        const auto list = assign_wps_to_aircraft(coverage, catalog, cfg, rng);
        ASSERT_FALSE(list.empty());
        EXPECT_NE(std::find(before.begin(), before.end(), list.front()), before.end())
            << "first pick must come from the unused pool";
    }
}

TEST(AssignWps, CertainStopAfterThresholdGivesSinglePick) {
    // Every WP lasts >= 45 min, so the 20-minute threshold is always exceeded
    // after the coverage pick; with stop probability 1 nothing else is added.
    GeneratorConfig cfg;
    cfg.wp_stop_probability = 1.0;
    Rng catalog_rng(1);
    const auto catalog = synthesize_catalog(24, catalog_rng);
    Rng rng(5);
    CoverageTracker coverage(24);
    for (int i = 0; i < 50; ++i) {
        const auto list = assign_wps_to_aircraft(coverage, catalog, cfg, rng);
        EXPECT_EQ(list.size(), 1u);
    }
}

TEST(AssignWps, AllUsedStillProducesNonEmptyList) {
    GeneratorConfig cfg;
    cfg.wp_stop_probability = 1.0;
    Rng catalog_rng(1);
    const auto catalog = synthesize_catalog(24, catalog_rng);
    Rng rng(5);
    CoverageTracker coverage(24);
    for (int id = 0; id < 24; ++id) coverage.mark_used(id);
    ASSERT_TRUE(coverage.all_used());
    const auto list = assign_wps_to_aircraft(coverage, catalog, cfg, rng);
    ASSERT_GE(list.size(), 1u);
    EXPECT_GE(list.front(), 0);
    EXPECT_LT(list.front(), 24);
}

TEST(AssignWps, RetryCapBoundsTheList) {
    GeneratorConfig cfg;
    cfg.wp_stop_probability = 0.0; // never stop voluntarily
    Rng catalog_rng(1);
    const auto catalog = synthesize_catalog(24, catalog_rng);
    Rng rng(5);
    CoverageTracker coverage(24);
    const auto list = assign_wps_to_aircraft(coverage, catalog, cfg, rng);
    EXPECT_EQ(list.size(), static_cast<std::size_t>(cfg.max_wp_retries));
}

TEST(Generator, DeterministicGivenSeed) {
    const auto cfg = batch_b_config(1234);
    const auto a = generate_instance(cfg);
    const auto b = generate_instance(cfg);
    EXPECT_EQ(a, b);
    EXPECT_EQ(write_instance_csv(a), write_instance_csv(b));
}

TEST(Generator, GeneratedInstancesValidateCleanly) {
    const auto cfg = batch_b_config(77);
    const auto batch = generate_batch(cfg, 3);
    for (const auto& inst : batch) {
        const auto report = validate_instance(inst, cfg);
        EXPECT_TRUE(report.ok()) << (report.violations.empty()
                                         ? ""
                                         : report.violations.front().message);
        EXPECT_EQ(inst.aircraft.size(), 20u);
        for (const auto& ac : inst.aircraft) {
            EXPECT_EQ(ac.departure, ac.landing + ac.turnaround);
            EXPECT_LE(ac.turnaround, cfg.max_turnaround);
            long long duration = 0;
            for (int id : ac.wp_list) duration += catalog_lookup(inst, id).duration;
            EXPECT_EQ(ac.turnaround,
                      static_cast<int>(std::llround(duration * cfg.turnaround_factor)));
        }
    }
}

TEST(Generator, TurnaroundCapViolationIsReported) {
    const auto cfg = batch_b_config(77);
    auto inst = generate_batch(cfg, 1).front();
    inst.aircraft.front().turnaround = 1700;
    inst.aircraft.front().departure = inst.aircraft.front().landing + 1700;
    const auto report = validate_instance(inst, cfg);
    ASSERT_FALSE(report.ok());
    EXPECT_TRUE(std::any_of(report.violations.begin(), report.violations.end(), [](const auto& v) {
        return v.kind == Violation::Kind::TurnaroundCap;
    }));
}

TEST(Generator, MissingCoverageIsReportedByWpId) {
    const auto cfg = batch_b_config(78);
    auto inst = generate_batch(cfg, 1).front();
    for (auto& ac : inst.aircraft) {
        std::erase(ac.wp_list, 7);
        if (ac.wp_list.empty()) ac.wp_list.push_back(0);
    }
    const auto report = validate_instance(inst, cfg);
    bool found = false;
    for (const auto& v : report.violations) {
        if (v.kind == Violation::Kind::Coverage && v.message.find("wp 7") != std::string::npos) {
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(Generator, SingleAircraftConfigExhaustsOrCoversEverything) {
    GeneratorConfig cfg = batch_b_config(5);
    cfg.n_aircraft = 1;
    cfg.max_instance_attempts = 50;
    try {
        const auto inst = generate_instance(cfg);
        std::vector<bool> seen(24, false);
        for (int id : inst.aircraft.front().wp_list) seen[static_cast<std::size_t>(id)] = true;
        EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("exhausted"), std::string::npos);
    }
}

TEST(Statistics, SingleInstanceMeansEqualSums) {
    auto inst = instance({wp(0, {wo(60, {any_cert()})}), wp(1, {wo(90, {any_cert()})})},
                         {tech(0, Certification::B1Technician)},
                         {aircraft("AC00", 0, 200, {0, 1}), aircraft("AC01", 10, 120, {1})});
    const auto stats = instance_statistics(std::span(&inst, 1));
    EXPECT_EQ(stats.instances, 1);
    EXPECT_DOUBLE_EQ(stats.avg_total_turnaround, 320.0);
    EXPECT_DOUBLE_EQ(stats.avg_wp_total_duration, 240.0);
    EXPECT_DOUBLE_EQ(stats.avg_wps_per_aircraft, 1.5);
}

TEST(Statistics, EmptyBatchIsAnError) {
    EXPECT_THROW(instance_statistics({}), Error);
}

TEST(Statistics, BatchPresetsTrackTheirRegimes) {
    // Small counts here; the acceptance suite regenerates the full batches.
    const auto batch_a = generate_batch(batch_a_config(2024), 5);
    const auto stats_a = instance_statistics(batch_a);
    EXPECT_NEAR(stats_a.wp_pct_of_turnaround, 35.0, 5.0);

    const auto batch_b = generate_batch(batch_b_config(2024), 5);
    const auto stats_b = instance_statistics(batch_b);
    EXPECT_NEAR(stats_b.wp_pct_of_turnaround, 83.0, 5.0);
}

TEST(Generator, ManHoursLandInsideTheCapacityBand) {
    const auto cfg = batch_a_config(31);
    const auto batch = generate_batch(cfg, 3);
    const long long capacity = 36LL * 480;
    for (const auto& inst : batch) {
        const long long mh = total_man_hours(inst);
        EXPECT_GE(mh, static_cast<long long>(cfg.load_low * capacity));
        EXPECT_LE(mh, static_cast<long long>(cfg.load_high * capacity));
    }
}

TEST(Generator, ConfigValidationRejectsBadBands) {
    GeneratorConfig cfg;
    cfg.load_low = 0.9;
    cfg.load_high = 0.7;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = GeneratorConfig{};
    cfg.turnaround_factor = 0.5;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = GeneratorConfig{};
    cfg.roster_mix = {1, 1, 1, 1};
    EXPECT_THROW(cfg.validate(), Error);
}
