#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "aeroea/domain.hpp"
#include "aeroea/rng.hpp"

namespace aeroea {

struct GeneratorConfig {
    int n_aircraft = 20;
    int n_technicians = 36;
    int n_work_packages = 24;
    double turnaround_factor = 1.2;  // turnaround = round(total WP duration * factor)
    double load_low = 0.70;          // man-hour band as fractions of capacity
    double load_high = 0.90;
    int max_turnaround = 1680;       // 28 hours
    int max_instance_attempts = 1000;
    int max_wp_retries = 50;         // cap on WP additions per aircraft
    int wp_stop_threshold_min = 20;  // cumulative duration before the stop draw applies
    double wp_stop_probability = 0.5;
    bool single_shift = false;             // one availability block per technician
    bool capacity_per_horizon_day = false; // scale the load-band capacity by horizon days
    std::array<int, 4> roster_mix = {12, 10, 8, 6}; // B1T, B2T, B1E, B2E counts
    std::uint64_t seed = 0;

    void validate() const {
        if (n_aircraft < 1 || n_technicians < 1 || n_work_packages < 1) {
            throw Error("generator config: counts must be positive");
        }
        if (!(0.0 < load_low && load_low < load_high && load_high <= 1.0)) {
            throw Error("generator config: load band must satisfy 0 < low < high <= 1");
        }
        if (turnaround_factor < 1.0) throw Error("generator config: turnaround_factor must be >= 1");
        if (std::accumulate(roster_mix.begin(), roster_mix.end(), 0) != n_technicians) {
            throw Error("generator config: roster_mix must sum to n_technicians");
        }
        if (max_instance_attempts < 1 || max_wp_retries < 1) {
            throw Error("generator config: attempt limits must be positive");
        }
    }
};

/// Preset reproducing the slack regime: maintenance fills ~35% of the
/// turnaround window.
inline GeneratorConfig batch_a_config(std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.turnaround_factor = 1.0 / 0.35;
    cfg.seed = seed;
    return cfg;
}

/// Preset reproducing the tight regime: maintenance fills ~83% of the window.
inline GeneratorConfig batch_b_config(std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.turnaround_factor = 1.2;
    cfg.seed = seed;
    return cfg;
}

/// Scaled-down preset for CI smoke runs: 3 aircraft, 6 work packages,
/// 6 technicians.
inline GeneratorConfig smoke_config(std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.n_aircraft = 3;
    cfg.n_work_packages = 6;
    cfg.n_technicians = 6;
    cfg.roster_mix = {2, 2, 1, 1};
    cfg.turnaround_factor = 1.5;
    cfg.seed = seed;
    return cfg;
}

// ---------------------------------------------------------------------------
// Catalog and roster synthesis
// ---------------------------------------------------------------------------

namespace detail {

// Slot eligibility categories with draw weights: single technician cert,
// either-technician pair, single engineer cert, dual-engineer pair. Slots
// pinned to one specific engineer grade are kept rare: only about two of
// each grade are on duty at any instant, so single-grade peaks are the first
// thing that makes an instance unsolvable.
inline CertSet draw_slot_certs(Rng& rng) {
    const double roll = rng.uniform01();
    if (roll < 0.35) {
        return rng.bernoulli(0.5) ? CertSet{Certification::B1Technician}
                                  : CertSet{Certification::B2Technician};
    }
    if (roll < 0.65) return CertSet{Certification::B1Technician, Certification::B2Technician};
    if (roll < 0.80) {
        return rng.bernoulli(0.5) ? CertSet{Certification::B1Engineer}
                                  : CertSet{Certification::B2Engineer};
    }
    return CertSet{Certification::B1Engineer, Certification::B2Engineer};
}

// Crew size of a package: the staffing level of its busiest work order.
inline int draw_crew_size(Rng& rng) { return rng.bernoulli(0.5) ? 2 : 3; }

// Random composition of `total` into `parts` integers, each >= minimum.
inline std::vector<int> random_split(int total, int parts, int minimum, Rng& rng) {
    std::vector<int> cuts(static_cast<std::size_t>(parts) - 1);
    const int spare = total - parts * minimum;
    for (auto& c : cuts) c = rng.uniform_int(0, spare);
    std::sort(cuts.begin(), cuts.end());
    std::vector<int> out;
    int prev = 0;
    for (int c : cuts) {
        out.push_back(minimum + c - prev);
        prev = c;
    }
    out.push_back(minimum + spare - prev);
    return out;
}

} // namespace detail

/// Deterministically synthesizes the work-package catalog from an RNG stream:
/// durations uniform in [45, 150] minutes, 2-4 work orders per package (each
/// >= 15 minutes), 1-3 staff slots per work order. The full crew mans only
/// the package's shortest work order (an all-hands step); the remaining work
/// orders each need a single technician. Man-hours nevertheless reserve the
/// crew for the whole package.
inline std::vector<WorkPackageDef> synthesize_catalog(int n_work_packages, Rng& rng) {
    std::vector<WorkPackageDef> catalog;
    catalog.reserve(static_cast<std::size_t>(n_work_packages));
    for (int id = 0; id < n_work_packages; ++id) {
        WorkPackageDef wp;
        wp.wp_id = id;
        wp.duration = rng.uniform_int(45, 150);
        const int max_wos = std::min(4, wp.duration / 15);
        const int n_wos = rng.uniform_int(2, max_wos);
        const int crew = detail::draw_crew_size(rng);
        const auto parts = detail::random_split(wp.duration, n_wos, 15, rng);
        const int peak_wo = static_cast<int>(
            std::min_element(parts.begin(), parts.end()) - parts.begin());
        int index = 0;
        for (int part : parts) {
            WorkOrderDef wo;
            wo.duration = part;
            const int n_slots = index == peak_wo ? crew : 1;
            for (int s = 0; s < n_slots; ++s) wo.slots.push_back({detail::draw_slot_certs(rng)});
            wp.work_orders.push_back(std::move(wo));
            ++index;
        }
        wp.man_hours = computed_man_hours(wp);
        wp.crew_size = computed_crew_size(wp);
        catalog.push_back(std::move(wp));
    }
    return catalog;
}

/// Fixed roster. Shift starts are staggered evenly around the clock so that
/// every sub-8-hour interval lies fully inside somebody's window; aligning
/// everyone to a few fixed blocks would leave intervals that cross a block
/// boundary unstaffable. Certifications are interleaved across the phases so
/// scarce grades cover the whole day.
inline std::vector<Technician> synthesize_roster(const GeneratorConfig& cfg) {
    std::vector<Technician> roster;
    roster.reserve(static_cast<std::size_t>(cfg.n_technicians));
    std::array<double, 4> credit{};
    std::array<int, 4> left{};
    for (std::size_t c = 0; c < 4; ++c) left[c] = cfg.roster_mix[c];
    for (int i = 0; i < cfg.n_technicians; ++i) {
        // largest-remainder interleave of the certification mix
        std::size_t pick = 0;
        double best = -1.0;
        for (std::size_t c = 0; c < 4; ++c) {
            if (left[c] == 0) continue;
            credit[c] += static_cast<double>(cfg.roster_mix[c]);
            if (credit[c] > best) {
                best = credit[c];
                pick = c;
            }
        }
        credit[pick] -= static_cast<double>(cfg.n_technicians);
        --left[pick];

        Technician tech;
        tech.tech_id = i;
        tech.cert = kAllCertifications[pick];
        tech.shift_start = (i * kMinutesPerDay) / cfg.n_technicians;
        tech.shift_length = kDefaultShiftLength;
        roster.push_back(tech);
    }
    return roster;
}

// ---------------------------------------------------------------------------
// Aircraft WP assignment
// ---------------------------------------------------------------------------

/// Tracks which wp_ids are still unused within the instance under
/// construction (the coverage constraint).
class CoverageTracker {
  public:
    explicit CoverageTracker(int n_work_packages) : used_(static_cast<std::size_t>(n_work_packages), false),
                                                    remaining_(n_work_packages) {}

    [[nodiscard]] bool all_used() const { return remaining_ == 0; }
    [[nodiscard]] int remaining() const { return remaining_; }

    void mark_used(int wp_id) {
        if (!used_[static_cast<std::size_t>(wp_id)]) {
            used_[static_cast<std::size_t>(wp_id)] = true;
            --remaining_;
        }
    }

    [[nodiscard]] std::vector<int> unused_ids() const {
        std::vector<int> ids;
        for (std::size_t i = 0; i < used_.size(); ++i) {
            if (!used_[i]) ids.push_back(static_cast<int>(i));
        }
        return ids;
    }

  private:
    std::vector<bool> used_;
    int remaining_;
};

/// Builds one aircraft's WP list. The first pick is an unused wp_id while any
/// remain; further picks are uniform with repetition. Appending stops once the
/// cumulative duration exceeds the stop threshold and the stop draw fires, or
/// after max_wp_retries additions.
inline std::vector<int> assign_wps_to_aircraft(CoverageTracker& coverage,
                                               const std::vector<WorkPackageDef>& catalog,
                                               const GeneratorConfig& cfg, Rng& rng) {
    std::vector<int> wp_list;
    const int n = static_cast<int>(catalog.size());

    int first;
    if (!coverage.all_used()) {
        const auto unused = coverage.unused_ids();
        first = unused[rng.uniform_index(unused.size())];
    } else {
        first = rng.uniform_int(0, n - 1);
    }
    wp_list.push_back(first);
    coverage.mark_used(first);
    int cumulative = catalog[static_cast<std::size_t>(first)].duration;

    for (int additions = 1; additions < cfg.max_wp_retries; ++additions) {
        if (cumulative > cfg.wp_stop_threshold_min && rng.bernoulli(cfg.wp_stop_probability)) break;
        const int pick = rng.uniform_int(0, n - 1);
        wp_list.push_back(pick);
        coverage.mark_used(pick);
        cumulative += catalog[static_cast<std::size_t>(pick)].duration;
    }
    return wp_list;
}

// ---------------------------------------------------------------------------
// Instance generation
// ---------------------------------------------------------------------------

namespace detail {

inline std::string aircraft_serial(int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "AC%02d", index);
    return buf;
}

inline long long capacity_person_minutes(const GeneratorConfig& cfg, int days) {
    const long long per_day = static_cast<long long>(cfg.n_technicians) * kDefaultShiftLength;
    return cfg.capacity_per_horizon_day ? per_day * days : per_day;
}

} // namespace detail

/// Generates the aircraft of one instance against a fixed catalog and roster.
/// Retries whole attempts until coverage, the man-hour band and the
/// turnaround cap all hold; throws after max_instance_attempts failures.
inline ProblemInstance generate_instance(const GeneratorConfig& cfg,
                                         std::vector<WorkPackageDef> catalog,
                                         std::vector<Technician> roster, Rng& rng,
                                         std::uint64_t recorded_seed) {
    cfg.validate();
    for (const auto& wp : catalog) {
        if (wp.wp_id < 0 || wp.wp_id >= static_cast<int>(catalog.size())) {
            throw Error("generate_instance: catalog wp_ids must be dense 0..n-1");
        }
    }

    for (int attempt = 0; attempt < cfg.max_instance_attempts; ++attempt) {
        ProblemInstance instance;
        instance.seed = recorded_seed;
        instance.base_day_offset = rng.uniform_int(0, 364);

        CoverageTracker coverage(static_cast<int>(catalog.size()));
        bool feasible = true;
        long long man_hours = 0;
        for (int i = 0; i < cfg.n_aircraft; ++i) {
            Aircraft ac;
            ac.serial = detail::aircraft_serial(i);
            ac.landing = rng.uniform_int(0, kMinutesPerDay - 1);
            ac.wp_list = assign_wps_to_aircraft(coverage, catalog, cfg, rng);
            long long duration = 0;
            for (int wp_id : ac.wp_list) {
                const auto& wp = catalog[static_cast<std::size_t>(wp_id)];
                duration += wp.duration;
                man_hours += wp.man_hours;
            }
            ac.turnaround = static_cast<int>(std::llround(static_cast<double>(duration) * cfg.turnaround_factor));
            if (ac.turnaround > cfg.max_turnaround) {
                feasible = false; // attempt invalidated, restart from scratch
                break;
            }
            ac.departure = ac.landing + ac.turnaround;
            instance.aircraft.push_back(std::move(ac));
        }
        if (!feasible || !coverage.all_used()) continue;

        instance.catalog = catalog;
        instance.roster = roster;
        const long long capacity = detail::capacity_person_minutes(cfg, horizon_days(instance));
        const double low = cfg.load_low * static_cast<double>(capacity);
        const double high = cfg.load_high * static_cast<double>(capacity);
        if (static_cast<double>(man_hours) < low || static_cast<double>(man_hours) > high) continue;

        return instance;
    }
    throw Error("generate_instance: exhausted " + std::to_string(cfg.max_instance_attempts) +
                " attempts; config appears infeasible");
}

/// Self-contained generation: catalog, roster and aircraft all derive from
/// cfg.seed.
inline ProblemInstance generate_instance(const GeneratorConfig& cfg) {
    cfg.validate();
    Rng catalog_rng(derive_seed(cfg.seed, hash_string("catalog")));
    auto catalog = synthesize_catalog(cfg.n_work_packages, catalog_rng);
    auto roster = synthesize_roster(cfg);
    Rng rng(derive_seed(cfg.seed, hash_string("instance")));
    return generate_instance(cfg, std::move(catalog), std::move(roster), rng, cfg.seed);
}

/// Generates a batch sharing one catalog and roster (both derived from
/// cfg.seed); each instance uses an independent derived seed.
inline std::vector<ProblemInstance> generate_batch(const GeneratorConfig& cfg, int count) {
    cfg.validate();
    if (count < 1) throw Error("generate_batch: count must be positive");
    Rng catalog_rng(derive_seed(cfg.seed, hash_string("catalog")));
    const auto catalog = synthesize_catalog(cfg.n_work_packages, catalog_rng);
    const auto roster = synthesize_roster(cfg);

    std::vector<ProblemInstance> batch;
    batch.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const std::uint64_t inst_seed = derive_seed(cfg.seed, "instance", static_cast<std::uint64_t>(k));
        Rng rng(inst_seed);
        batch.push_back(generate_instance(cfg, catalog, roster, rng, inst_seed));
    }
    return batch;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct Violation {
    enum class Kind {
        Coverage,
        LoadBand,
        TurnaroundCap,
        DepartureArithmetic,
        UnknownWorkPackage,
        EmptyWpList,
    };
    Kind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Checks the generator's contract on an arbitrary instance. Violations are
/// data, not faults.
inline ValidationReport validate_instance(const ProblemInstance& instance,
                                          const GeneratorConfig& cfg) {
    ValidationReport report;
    auto add = [&](Violation::Kind kind, std::string msg) {
        report.violations.push_back({kind, std::move(msg)});
    };

    std::vector<bool> seen(instance.catalog.size(), false);
    long long man_hours = 0;
    bool man_hours_known = true;
    for (const auto& ac : instance.aircraft) {
        if (ac.wp_list.empty()) {
            add(Violation::Kind::EmptyWpList, ac.serial + " has an empty wp_list");
        }
        for (int wp_id : ac.wp_list) {
            if (wp_id < 0 || wp_id >= static_cast<int>(instance.catalog.size())) {
                add(Violation::Kind::UnknownWorkPackage,
                    ac.serial + " references unknown wp " + std::to_string(wp_id));
                man_hours_known = false;
                continue;
            }
            seen[static_cast<std::size_t>(wp_id)] = true;
            man_hours += instance.catalog[static_cast<std::size_t>(wp_id)].man_hours;
        }
        if (ac.turnaround > cfg.max_turnaround) {
            add(Violation::Kind::TurnaroundCap,
                ac.serial + " turnaround " + std::to_string(ac.turnaround) + " exceeds cap " +
                    std::to_string(cfg.max_turnaround));
        }
        if (ac.departure != ac.landing + ac.turnaround) {
            add(Violation::Kind::DepartureArithmetic,
                ac.serial + " departure != landing + turnaround");
        }
    }
    for (std::size_t wp = 0; wp < seen.size(); ++wp) {
        if (!seen[wp]) {
            add(Violation::Kind::Coverage, "wp " + std::to_string(wp) + " never appears in the fleet");
        }
    }
    if (man_hours_known) {
        const long long capacity = detail::capacity_person_minutes(cfg, horizon_days(instance));
        const double low = cfg.load_low * static_cast<double>(capacity);
        const double high = cfg.load_high * static_cast<double>(capacity);
        if (static_cast<double>(man_hours) < low || static_cast<double>(man_hours) > high) {
            add(Violation::Kind::LoadBand,
                "total man-hours " + std::to_string(man_hours) + " outside band [" +
                    std::to_string(static_cast<long long>(low)) + ", " +
                    std::to_string(static_cast<long long>(high)) + "]");
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Batch statistics
// ---------------------------------------------------------------------------

struct BatchStats {
    int instances = 0;
    double avg_total_turnaround = 0.0;  // minutes per instance
    double avg_wp_total_duration = 0.0; // minutes per instance
    double wp_pct_of_turnaround = 0.0;  // 100 * duration / turnaround
    double avg_wps_per_aircraft = 0.0;
};

inline BatchStats instance_statistics(std::span<const ProblemInstance> batch) {
    if (batch.empty()) throw Error("instance_statistics: empty batch");
    BatchStats stats;
    stats.instances = static_cast<int>(batch.size());
    long long turnaround_sum = 0;
    long long duration_sum = 0;
    long long wp_count = 0;
    long long aircraft_count = 0;
    for (const auto& instance : batch) {
        for (const auto& ac : instance.aircraft) {
            turnaround_sum += ac.turnaround;
            wp_count += static_cast<long long>(ac.wp_list.size());
            for (int wp_id : ac.wp_list) duration_sum += catalog_lookup(instance, wp_id).duration;
        }
        aircraft_count += static_cast<long long>(instance.aircraft.size());
    }
    const double n = static_cast<double>(batch.size());
    stats.avg_total_turnaround = static_cast<double>(turnaround_sum) / n;
    stats.avg_wp_total_duration = static_cast<double>(duration_sum) / n;
    stats.wp_pct_of_turnaround =
        100.0 * static_cast<double>(duration_sum) / static_cast<double>(turnaround_sum);
    stats.avg_wps_per_aircraft =
        static_cast<double>(wp_count) / static_cast<double>(aircraft_count);
    return stats;
}

inline std::string write_batch_stats_csv(const BatchStats& stats) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%d,%.2f,%.2f,%.2f,%.3f\n", stats.instances,
                  stats.avg_total_turnaround, stats.avg_wp_total_duration,
                  stats.wp_pct_of_turnaround, stats.avg_wps_per_aircraft);
    return std::string("instances,avg_total_turnaround_min,avg_wp_total_duration_min,"
                       "wp_pct_of_turnaround,avg_wps_per_aircraft\n") +
           buf;
}

} // namespace aeroea
