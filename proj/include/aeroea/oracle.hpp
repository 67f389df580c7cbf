#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "aeroea/chromosome.hpp"
#include "aeroea/decoder.hpp"
#include "aeroea/domain.hpp"

namespace aeroea {

struct OracleResult {
    long long optimal_penalty = 0;
    FitnessReport report;
    Schedule witness;
};

namespace oracle_detail {

struct WoTask {
    int pairing;
    int wo_index;
    int duration;
    int aircraft_ref;
    std::vector<std::vector<std::uint16_t>> slot_pools; // qualified techs per slot
};

struct SearchState {
    const DecodeContext* ctx;
    const InstanceLayout* layout;
    std::vector<WoTask> tasks;
    std::vector<int> time_points; // sorted; closed under the active-schedule argument
    int wp_penalty;
    int lp_penalty;
    long long node_cap;

    Schedule schedule;
    std::vector<int> prev_end; // per pairing: sequencing floor for the next WO
    std::vector<bool> late;    // per aircraft
    long long penalty = 0;
    long long best = -1;       // -1 = none found yet
    long long nodes = 0;
    Schedule best_schedule;

    [[nodiscard]] bool done() const { return best == 0; }
};

inline void search_wo(SearchState& st, std::size_t task_idx);

// Enumerate staffing choices for the current WO at interval iv: each slot is
// either covered by a free qualified technician (distinct within the WO) or
// left uncovered at cost wp_penalty.
inline void assign_slots(SearchState& st, std::size_t task_idx, Interval iv, std::size_t slot,
                         std::vector<std::uint16_t>& used) {
    if (st.done()) return;
    if (++st.nodes > st.node_cap) throw Error("brute_force_solve: node cap exceeded");
    const WoTask& task = st.tasks[task_idx];
    if (st.best >= 0 && st.penalty >= st.best) return;

    if (slot == task.slot_pools.size()) {
        const auto& ac = st.layout->instance().aircraft[static_cast<std::size_t>(task.aircraft_ref)];
        const bool marks_late =
            !st.late[static_cast<std::size_t>(task.aircraft_ref)] && iv.end > ac.departure;
        if (marks_late) {
            st.late[static_cast<std::size_t>(task.aircraft_ref)] = true;
            st.penalty += st.lp_penalty;
        }
        const int saved_floor = st.prev_end[static_cast<std::size_t>(task.pairing)];
        st.prev_end[static_cast<std::size_t>(task.pairing)] = iv.end;
        st.schedule.wo_times[static_cast<std::size_t>(st.layout->wo_offset(task.pairing)) +
                             static_cast<std::size_t>(task.wo_index)] = iv;

        search_wo(st, task_idx + 1);

        st.prev_end[static_cast<std::size_t>(task.pairing)] = saved_floor;
        if (marks_late) {
            st.late[static_cast<std::size_t>(task.aircraft_ref)] = false;
            st.penalty -= st.lp_penalty;
        }
        return;
    }

    const SlotRef ref{static_cast<std::uint16_t>(task.pairing),
                      static_cast<std::uint8_t>(task.wo_index), static_cast<std::uint8_t>(slot)};
    for (std::uint16_t tech : task.slot_pools[slot]) {
        if (std::find(used.begin(), used.end(), tech) != used.end()) continue;
        if (!detail::tech_free(*st.ctx, st.schedule.bookings[tech], tech, iv, -1, -1)) continue;
        detail::insert_booking(st.schedule.bookings[tech],
                               {iv, ref.pairing, ref.wo_index, ref.slot_index});
        used.push_back(tech);
        assign_slots(st, task_idx, iv, slot + 1, used);
        used.pop_back();
        detail::erase_booking_exact(st.schedule.bookings[tech], ref);
        if (st.done()) return;
    }

    st.penalty += st.wp_penalty;
    st.schedule.uncovered.push_back(ref);
    assign_slots(st, task_idx, iv, slot + 1, used);
    st.schedule.uncovered.pop_back();
    st.penalty -= st.wp_penalty;
}

inline void search_wo(SearchState& st, std::size_t task_idx) {
    if (st.done()) return;
    if (st.best >= 0 && st.penalty >= st.best) return;
    if (task_idx == st.tasks.size()) {
        if (st.best < 0 || st.penalty < st.best) {
            st.best = st.penalty;
            st.best_schedule = st.schedule;
        }
        return;
    }
    const WoTask& task = st.tasks[task_idx];
    const int floor_time = st.prev_end[static_cast<std::size_t>(task.pairing)];
    std::vector<std::uint16_t> used;

    // The floor itself is always a candidate (covers placements past the
    // horizon, which can only be unstaffed).
    assign_slots(st, task_idx, {floor_time, floor_time + task.duration}, 0, used);
    if (st.done()) return;
    auto it = std::upper_bound(st.time_points.begin(), st.time_points.end(), floor_time);
    for (; it != st.time_points.end(); ++it) {
        if (*it >= st.ctx->horizon_end()) break;
        assign_slots(st, task_idx, {*it, *it + task.duration}, 0, used);
        if (st.done()) return;
    }
}

// All instants an active (left-shifted) schedule can start a WO at: a base
// point (landing or shift-window start) plus the total duration of any subset
// of work orders chained behind it.
inline std::vector<int> time_point_closure(const InstanceLayout& layout, const DecodeContext& ctx,
                                           const std::vector<WoTask>& tasks) {
    const int horizon = ctx.horizon_end();
    std::set<int> sums{0};
    for (const auto& task : tasks) {
        std::set<int> next = sums;
        for (int s : sums) {
            if (s + task.duration <= horizon) next.insert(s + task.duration);
        }
        sums.swap(next);
    }
    std::set<int> bases;
    for (const auto& ac : layout.instance().aircraft) bases.insert(ac.landing);
    for (std::size_t tech = 0; tech < layout.instance().roster.size(); ++tech) {
        for (const auto& w : ctx.windows(static_cast<int>(tech))) bases.insert(w.start);
    }
    std::set<int> points;
    for (int b : bases) {
        for (int s : sums) {
            if (b + s < horizon) points.insert(b + s);
        }
    }
    return {points.begin(), points.end()};
}

} // namespace oracle_detail

/// Exact minimum of w*wp + l*lp over all work-order start times, staff
/// assignments and uncovered choices, subject to in-package sequencing, shift
/// windows and technician non-overlap. Work packages of one aircraft may
/// overlap here, so this is a lower bound on what chromosome-order decoding
/// can reach. Refuses instances beyond micro size.
inline OracleResult brute_force_solve(const ProblemInstance& instance, int wp_penalty = 1,
                                      int lp_penalty = 10, long long node_cap = 200'000'000) {
    InstanceLayout layout(instance);
    if (layout.n_pairings() > 6) {
        throw Error("brute_force_solve: refusing instance with more than 6 genes");
    }
    if (instance.roster.size() > 5) {
        throw Error("brute_force_solve: refusing instance with more than 5 technicians");
    }
    DecodeContext ctx(layout);

    oracle_detail::SearchState st;
    st.ctx = &ctx;
    st.layout = &layout;
    st.wp_penalty = wp_penalty;
    st.lp_penalty = lp_penalty;
    st.node_cap = node_cap;
    for (int p = 0; p < layout.n_pairings(); ++p) {
        const auto& wp = layout.wp_of(p);
        for (std::size_t w = 0; w < wp.work_orders.size(); ++w) {
            oracle_detail::WoTask task;
            task.pairing = p;
            task.wo_index = static_cast<int>(w);
            task.duration = wp.work_orders[w].duration;
            task.aircraft_ref = layout.pairing(p).aircraft_ref;
            for (const auto& slot : wp.work_orders[w].slots) {
                task.slot_pools.push_back(layout.qualified(slot));
            }
            st.tasks.push_back(std::move(task));
        }
    }
    st.time_points = oracle_detail::time_point_closure(layout, ctx, st.tasks);
    st.schedule.reset(static_cast<int>(instance.roster.size()), layout.total_wos());
    st.prev_end.resize(static_cast<std::size_t>(layout.n_pairings()));
    for (int p = 0; p < layout.n_pairings(); ++p) {
        st.prev_end[static_cast<std::size_t>(p)] = layout.aircraft_of(p).landing;
    }
    st.late.assign(instance.aircraft.size(), false);

    oracle_detail::search_wo(st, 0);
    if (st.best < 0) throw Error("brute_force_solve: search produced no schedule");

    OracleResult result;
    result.optimal_penalty = st.best;
    result.witness = std::move(st.best_schedule);
    result.report = evaluate(result.witness, layout, wp_penalty, lp_penalty);
    return result;
}

// ---------------------------------------------------------------------------
// Exhaustive decoding over the chromosome space
// ---------------------------------------------------------------------------

struct ExhaustiveDecodeResult {
    long long best_penalty = 0;
    Chromosome best;
    long long decoded = 0;
};

/// Decodes every chromosome (all gene permutations x all qualified staff
/// assignments) and reports the minimum penalty. Refuses when the space
/// exceeds max_cases.
inline ExhaustiveDecodeResult best_decoded_exhaustive(const ProblemInstance& instance,
                                                      int wp_penalty = 1, int lp_penalty = 10,
                                                      long long max_cases = 10'000'000) {
    InstanceLayout layout(instance);
    DecodeContext ctx(layout);
    const int n = layout.n_pairings();
    const int entries = layout.total_entries();

    double cases = 1.0;
    for (int k = 2; k <= n; ++k) cases *= k;
    std::vector<const std::vector<std::uint16_t>*> pools;
    for (int p = 0; p < n; ++p) {
        for (int e = 0; e < layout.n_entries(p); ++e) {
            const auto& pool = layout.qualified(p, e);
            if (pool.empty()) {
                throw Error("best_decoded_exhaustive: a slot has no qualified technician; "
                            "no valid chromosome exists");
            }
            pools.push_back(&pool);
            cases *= static_cast<double>(pool.size());
        }
    }
    if (cases > static_cast<double>(max_cases)) {
        throw Error("best_decoded_exhaustive: search space too large");
    }

    Chromosome chrom;
    chrom.order.resize(static_cast<std::size_t>(n));
    std::iota(chrom.order.begin(), chrom.order.end(), std::uint16_t{0});
    chrom.techs.assign(static_cast<std::size_t>(entries), 0);
    std::vector<std::size_t> choice(static_cast<std::size_t>(entries), 0);

    ExhaustiveDecodeResult result;
    result.best_penalty = -1;
    Schedule scratch;

    bool more_assignments = true;
    while (more_assignments) {
        for (int e = 0; e < entries; ++e) {
            chrom.techs[static_cast<std::size_t>(e)] =
                (*pools[static_cast<std::size_t>(e)])[choice[static_cast<std::size_t>(e)]];
        }
        std::sort(chrom.order.begin(), chrom.order.end());
        do {
            decode_into(ctx, chrom, scratch);
            const FitnessReport report = evaluate(scratch, layout, wp_penalty, lp_penalty);
            ++result.decoded;
            if (result.best_penalty < 0 || report.fitness < result.best_penalty) {
                result.best_penalty = report.fitness;
                result.best = chrom;
            }
        } while (std::next_permutation(chrom.order.begin(), chrom.order.end()));

        more_assignments = false;
        for (int e = 0; e < entries; ++e) {
            auto& c = choice[static_cast<std::size_t>(e)];
            if (++c < pools[static_cast<std::size_t>(e)]->size()) {
                more_assignments = true;
                break;
            }
            c = 0;
        }
    }
    return result;
}

} // namespace aeroea
