#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "aeroea/chromosome.hpp"
#include "aeroea/domain.hpp"

namespace aeroea {

/// One committed technician assignment. The technician is implied by the
/// lane the booking sits in (Schedule::bookings is per technician).
struct Booking {
    Interval time;
    std::uint16_t pairing = 0;
    std::uint8_t wo_index = 0;
    std::uint8_t slot_index = 0;

    friend bool operator==(const Booking&, const Booking&) = default;
};

struct SlotRef {
    std::uint16_t pairing = 0;
    std::uint8_t wo_index = 0;
    std::uint8_t slot_index = 0;

    friend bool operator==(const SlotRef&, const SlotRef&) = default;
};

/// Decoded timetable: an interval per work order, per-technician booking
/// lanes (sorted by start) and the staff slots left unstaffed.
struct Schedule {
    std::vector<Interval> wo_times;             // by the layout's global WO index
    std::vector<std::vector<Booking>> bookings; // one lane per technician
    std::vector<SlotRef> uncovered;

    void reset(int n_techs, int n_wos) {
        wo_times.assign(static_cast<std::size_t>(n_wos), Interval{});
        if (static_cast<int>(bookings.size()) != n_techs) {
            bookings.assign(static_cast<std::size_t>(n_techs), {});
        } else {
            for (auto& lane : bookings) lane.clear();
        }
        uncovered.clear();
    }

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct FitnessReport {
    int w = 0; // uncovered staff slots
    int l = 0; // aircraft finishing after departure
    long long fitness = 0;

    friend bool operator==(const FitnessReport&, const FitnessReport&) = default;
};

/// Per-run decoding state: availability windows (which depend on the shift
/// policy) and the forward-shift horizon. Reusable across evaluations of one
/// run; never shared between concurrent runs.
class DecodeContext {
  public:
    DecodeContext(const InstanceLayout& layout, bool single_shift = false)
        : layout_(&layout), single_shift_(single_shift),
          horizon_end_(instance_horizon_end(layout.instance())) {
        for (const auto& tech : layout.instance().roster) {
            windows_.push_back(availability_windows(tech, horizon_end_, single_shift));
        }
    }

    [[nodiscard]] const InstanceLayout& layout() const { return *layout_; }
    [[nodiscard]] int horizon_end() const { return horizon_end_; }
    [[nodiscard]] bool single_shift() const { return single_shift_; }
    [[nodiscard]] const std::vector<Interval>& windows(int tech) const {
        return windows_[static_cast<std::size_t>(tech)];
    }

  private:
    const InstanceLayout* layout_;
    bool single_shift_;
    int horizon_end_;
    std::vector<std::vector<Interval>> windows_;
};

namespace detail {

constexpr int kNoStart = std::numeric_limits<int>::max();

inline bool same_wo(const Booking& b, int pairing, int wo) {
    return b.pairing == pairing && b.wo_index == wo;
}

// Within one availability window and clear of the lane's other bookings?
inline bool tech_free(const DecodeContext& ctx, const std::vector<Booking>& lane, int tech,
                      Interval iv, int exclude_pairing, int exclude_wo) {
    bool in_window = false;
    for (const auto& w : ctx.windows(tech)) {
        if (w.contains(iv)) {
            in_window = true;
            break;
        }
    }
    if (!in_window) return false;
    for (const auto& b : lane) {
        if (b.time.start >= iv.end) break; // lane sorted by start
        if (same_wo(b, exclude_pairing, exclude_wo)) continue;
        if (b.time.overlaps(iv)) return false;
    }
    return true;
}

// Earliest start >= t at which the technician can work an uninterrupted
// `duration`-minute task finishing by latest_end, or kNoStart. Candidates
// advance over booking ends and window starts only.
inline int earliest_feasible_start(const DecodeContext& ctx, const std::vector<Booking>& lane,
                                   int tech, int t, int duration, int latest_end,
                                   int exclude_pairing, int exclude_wo) {
    for (const auto& w : ctx.windows(tech)) {
        if (w.start >= ctx.horizon_end() || w.start + duration > latest_end) break;
        if (w.end - std::max(w.start, t) < duration) continue;
        int candidate = std::max(w.start, t);
        bool moved = true;
        while (moved && candidate + duration <= w.end) {
            moved = false;
            for (const auto& b : lane) {
                if (b.time.start >= candidate + duration) break;
                if (same_wo(b, exclude_pairing, exclude_wo)) continue;
                if (b.time.overlaps({candidate, candidate + duration})) {
                    candidate = b.time.end;
                    moved = true;
                }
            }
        }
        if (candidate + duration <= w.end && candidate < ctx.horizon_end()) {
            return candidate + duration <= latest_end ? candidate : kNoStart;
        }
    }
    return kNoStart;
}

struct CommittedEntry {
    std::uint16_t tech;
    std::uint8_t slot_index;
};

// Earliest start >= t feasible for every listed technician simultaneously
// (fixpoint over per-technician earliest starts).
inline int earliest_common_start(const DecodeContext& ctx, const Schedule& schedule,
                                 const std::vector<CommittedEntry>& committed,
                                 std::uint16_t extra_tech, int t, int duration, int latest_end,
                                 int exclude_pairing, int exclude_wo) {
    bool moved = true;
    while (moved) {
        moved = false;
        for (std::size_t i = 0; i <= committed.size(); ++i) {
            const std::uint16_t tech = i < committed.size() ? committed[i].tech : extra_tech;
            const int t2 = earliest_feasible_start(ctx, schedule.bookings[tech], tech, t, duration,
                                                   latest_end, exclude_pairing, exclude_wo);
            if (t2 == kNoStart) return kNoStart;
            if (t2 > t) {
                t = t2;
                moved = true;
            }
        }
    }
    return t;
}

inline void insert_booking(std::vector<Booking>& lane, const Booking& booking) {
    auto it = std::upper_bound(lane.begin(), lane.end(), booking,
                               [](const Booking& a, const Booking& b) {
                                   return a.time.start < b.time.start;
                               });
    lane.insert(it, booking);
}

inline void erase_booking(std::vector<Booking>& lane, int pairing, int wo) {
    for (auto it = lane.begin(); it != lane.end(); ++it) {
        if (same_wo(*it, pairing, wo)) {
            lane.erase(it);
            return;
        }
    }
}

inline void erase_booking_exact(std::vector<Booking>& lane, const SlotRef& ref) {
    for (auto it = lane.begin(); it != lane.end(); ++it) {
        if (it->pairing == ref.pairing && it->wo_index == ref.wo_index &&
            it->slot_index == ref.slot_index) {
            lane.erase(it);
            return;
        }
    }
}

} // namespace detail

/// Decodes a chromosome into a concrete timetable.
///
/// Work packages are placed in chromosome order. A package's first work order
/// defaults to the aircraft landing time (first package placed for that
/// aircraft) or the finish of the previously placed package; each further work
/// order follows the previous one. Entries are committed in gene order: a
/// technician free over the work order's interval is booked directly;
/// otherwise the work order (and with it the rest of the package) shifts
/// forward to the earliest instant where the technician and all staff already
/// committed to this work order are simultaneously free, provided the work
/// order still finishes by the aircraft departure. If no such instant exists,
/// the slot is recorded uncovered. Default placements themselves may overrun
/// the departure (chained packages) — that is where lateness comes from.
inline void decode_into(const DecodeContext& ctx, const Chromosome& chrom, Schedule& out) {
    const InstanceLayout& layout = ctx.layout();
    const ProblemInstance& instance = layout.instance();
    out.reset(static_cast<int>(instance.roster.size()), layout.total_wos());

    // Finish time of the aircraft's most recently placed package; landing
    // until the first package lands on it. unplaced[] tracks how much work
    // the aircraft still has coming: a shift may only consume slack that the
    // remaining work orders do not need.
    std::vector<int> resume_at(instance.aircraft.size());
    std::vector<int> unplaced(instance.aircraft.size(), 0);
    for (std::size_t a = 0; a < instance.aircraft.size(); ++a) {
        resume_at[a] = instance.aircraft[a].landing;
        for (int wp_id : instance.aircraft[a].wp_list) {
            unplaced[a] += instance.catalog[static_cast<std::size_t>(wp_id)].duration;
        }
    }

    std::vector<detail::CommittedEntry> committed; // staff booked on the current WO
    for (std::uint16_t p : chrom.order) {
        const Pairing& pairing = layout.pairing(p);
        const WorkPackageDef& wp = layout.wp_of(p);
        const int departure = layout.aircraft_of(p).departure;
        const int entry_base = layout.entry_offset(p);
        int t = resume_at[static_cast<std::size_t>(pairing.aircraft_ref)];

        int local_entry = 0;
        for (std::size_t wo_idx = 0; wo_idx < wp.work_orders.size(); ++wo_idx) {
            const WorkOrderDef& wo = wp.work_orders[wo_idx];
            unplaced[static_cast<std::size_t>(pairing.aircraft_ref)] -= wo.duration;
            const int latest_end =
                departure - unplaced[static_cast<std::size_t>(pairing.aircraft_ref)];
            Interval iv{t, t + wo.duration};
            committed.clear();

            for (std::size_t slot = 0; slot < wo.slots.size(); ++slot, ++local_entry) {
                const std::uint16_t tech = chrom.techs[static_cast<std::size_t>(entry_base + local_entry)];
                const SlotRef ref{p, static_cast<std::uint8_t>(wo_idx), static_cast<std::uint8_t>(slot)};

                // The same technician cannot fill two slots of one WO.
                const bool duplicate = std::any_of(committed.begin(), committed.end(),
                                                   [&](const auto& c) { return c.tech == tech; });
                if (duplicate) {
                    out.uncovered.push_back(ref);
                    continue;
                }
                if (detail::tech_free(ctx, out.bookings[tech], tech, iv, p, static_cast<int>(wo_idx))) {
                    detail::insert_booking(out.bookings[tech],
                                           {iv, ref.pairing, ref.wo_index, ref.slot_index});
                    committed.push_back({tech, ref.slot_index});
                    continue;
                }

                // Forward shift: everyone already on this WO must remain free
                // at the new interval, and the WO must finish early enough
                // that the aircraft's remaining work still fits before
                // departure. Otherwise the slot stays uncovered.
                const int shifted = detail::earliest_common_start(ctx, out, committed, tech,
                                                                  iv.start, wo.duration, latest_end,
                                                                  p, static_cast<int>(wo_idx));
                if (shifted == detail::kNoStart) {
                    out.uncovered.push_back(ref);
                    continue;
                }
                iv = {shifted, shifted + wo.duration};
                for (const auto& c : committed) {
                    detail::erase_booking(out.bookings[c.tech], p, static_cast<int>(wo_idx));
                    detail::insert_booking(out.bookings[c.tech],
                                           {iv, ref.pairing, ref.wo_index, c.slot_index});
                }
                detail::insert_booking(out.bookings[tech],
                                       {iv, ref.pairing, ref.wo_index, ref.slot_index});
                committed.push_back({tech, ref.slot_index});
            }

            out.wo_times[static_cast<std::size_t>(layout.wo_offset(p) + static_cast<int>(wo_idx))] = iv;
            t = iv.end;
        }
        resume_at[static_cast<std::size_t>(pairing.aircraft_ref)] = t;
    }
}

inline Schedule decode(const DecodeContext& ctx, const Chromosome& chrom) {
    Schedule schedule;
    decode_into(ctx, chrom, schedule);
    return schedule;
}

/// Convenience overload building the layout and context on the fly.
inline Schedule decode(const Chromosome& chrom, const ProblemInstance& instance,
                       bool single_shift = false) {
    InstanceLayout layout(instance);
    DecodeContext ctx(layout, single_shift);
    return decode(ctx, chrom);
}

// ---------------------------------------------------------------------------
// Fitness
// ---------------------------------------------------------------------------

/// w = uncovered slots, l = aircraft whose latest work order ends after
/// departure; fitness = w * wp_penalty + l * lp_penalty.
inline FitnessReport evaluate(const Schedule& schedule, const InstanceLayout& layout,
                              int wp_penalty, int lp_penalty) {
    FitnessReport report;
    report.w = static_cast<int>(schedule.uncovered.size());
    const auto& aircraft = layout.instance().aircraft;
    std::vector<int> latest(aircraft.size(), std::numeric_limits<int>::min());
    for (int g = 0; g < layout.total_wos(); ++g) {
        auto& slot = latest[static_cast<std::size_t>(layout.aircraft_of_wo(g))];
        slot = std::max(slot, schedule.wo_times[static_cast<std::size_t>(g)].end);
    }
    for (std::size_t a = 0; a < aircraft.size(); ++a) {
        if (latest[a] > aircraft[a].departure) ++report.l;
    }
    report.fitness = static_cast<long long>(report.w) * wp_penalty +
                     static_cast<long long>(report.l) * lp_penalty;
    return report;
}

// ---------------------------------------------------------------------------
// Independent schedule verification
// ---------------------------------------------------------------------------

struct ScheduleViolation {
    enum class Kind {
        Duration,
        Sequencing,
        BeforeLanding,
        DoubleBooking,
        OutsideShift,
        SlotMismatch,
        Unqualified,
    };
    Kind kind;
    std::string message;
};

/// Re-derives every schedule invariant from the instance definition alone:
/// exact durations, in-package sequencing, no work before landing, no
/// double-booking, shift containment, and a one-to-one match between slots
/// and bookings-or-uncovered marks.
inline std::vector<ScheduleViolation> check_schedule(const Schedule& schedule,
                                                     const InstanceLayout& layout,
                                                     bool single_shift = false) {
    std::vector<ScheduleViolation> violations;
    auto add = [&](ScheduleViolation::Kind kind, std::string msg) {
        violations.push_back({kind, std::move(msg)});
    };
    const ProblemInstance& instance = layout.instance();
    const int horizon = instance_horizon_end(instance);

    for (int p = 0; p < layout.n_pairings(); ++p) {
        const auto& wp = layout.wp_of(p);
        const auto& ac = layout.aircraft_of(p);
        int prev_end = ac.landing;
        for (std::size_t w = 0; w < wp.work_orders.size(); ++w) {
            const Interval iv = schedule.wo_times[static_cast<std::size_t>(layout.wo_offset(p)) + w];
            const std::string tag = ac.serial + ".wp" + std::to_string(wp.wp_id) + "#" +
                                    std::to_string(layout.pairing(p).occurrence) + ".wo" +
                                    std::to_string(w);
            if (iv.end - iv.start != wp.work_orders[w].duration) {
                add(ScheduleViolation::Kind::Duration,
                    tag + " has length " + std::to_string(iv.end - iv.start) + ", defined " +
                        std::to_string(wp.work_orders[w].duration));
            }
            if (w == 0) {
                if (iv.start < ac.landing) {
                    add(ScheduleViolation::Kind::BeforeLanding, tag + " starts before landing");
                }
            } else if (iv.start < prev_end) {
                add(ScheduleViolation::Kind::Sequencing,
                    tag + " starts before the previous work order ends");
            }
            prev_end = iv.end;
        }
    }

    // Booking sanity per technician lane.
    std::vector<int> booked_count(static_cast<std::size_t>(layout.total_wos()) * 8, 0);
    auto slot_key = [&](int pairing, int wo, int slot) {
        return (static_cast<std::size_t>(layout.wo_offset(pairing)) + static_cast<std::size_t>(wo)) * 8 +
               static_cast<std::size_t>(slot);
    };
    for (std::size_t tech = 0; tech < schedule.bookings.size(); ++tech) {
        const auto windows = availability_windows(instance.roster[tech], horizon, single_shift);
        std::vector<Booking> lane = schedule.bookings[tech];
        std::sort(lane.begin(), lane.end(),
                  [](const Booking& a, const Booking& b) { return a.time.start < b.time.start; });
        for (std::size_t i = 0; i < lane.size(); ++i) {
            const Booking& b = lane[i];
            const std::string tag = "tech " + std::to_string(tech) + " @ [" +
                                    std::to_string(b.time.start) + "," + std::to_string(b.time.end) + ")";
            if (i + 1 < lane.size() && lane[i + 1].time.start < b.time.end) {
                add(ScheduleViolation::Kind::DoubleBooking, tag + " overlaps the next booking");
            }
            bool contained = false;
            for (const auto& w : windows) {
                if (w.contains(b.time)) {
                    contained = true;
                    break;
                }
            }
            if (!contained) {
                add(ScheduleViolation::Kind::OutsideShift, tag + " lies outside every shift window");
            }
            const Interval wo_iv =
                schedule.wo_times[static_cast<std::size_t>(layout.wo_offset(b.pairing)) + b.wo_index];
            if (!(wo_iv == b.time)) {
                add(ScheduleViolation::Kind::SlotMismatch,
                    tag + " does not match its work order's interval");
            }
            const auto& wp = layout.wp_of(b.pairing);
            if (b.wo_index >= wp.work_orders.size() ||
                b.slot_index >= wp.work_orders[b.wo_index].slots.size()) {
                add(ScheduleViolation::Kind::SlotMismatch, tag + " references a nonexistent slot");
                continue;
            }
            const auto& slot = wp.work_orders[b.wo_index].slots[b.slot_index];
            if (!slot.allowed_certs.contains(instance.roster[tech].cert)) {
                add(ScheduleViolation::Kind::Unqualified,
                    tag + " certification not accepted by the slot");
            }
            ++booked_count[slot_key(b.pairing, b.wo_index, b.slot_index)];
        }
    }

    // Every slot is booked exactly once or reported uncovered (not both).
    std::vector<int> uncovered_count(static_cast<std::size_t>(layout.total_wos()) * 8, 0);
    for (const auto& ref : schedule.uncovered) {
        ++uncovered_count[slot_key(ref.pairing, ref.wo_index, ref.slot_index)];
    }
    for (int p = 0; p < layout.n_pairings(); ++p) {
        const auto& wp = layout.wp_of(p);
        for (std::size_t w = 0; w < wp.work_orders.size(); ++w) {
            for (std::size_t s = 0; s < wp.work_orders[w].slots.size(); ++s) {
                const int booked = booked_count[slot_key(p, static_cast<int>(w), static_cast<int>(s))];
                const int uncov = uncovered_count[slot_key(p, static_cast<int>(w), static_cast<int>(s))];
                if (booked + uncov != 1) {
                    add(ScheduleViolation::Kind::SlotMismatch,
                        "slot (pairing " + std::to_string(p) + ", wo " + std::to_string(w) +
                            ", slot " + std::to_string(s) + ") booked " + std::to_string(booked) +
                            " times, uncovered " + std::to_string(uncov) + " times");
                }
            }
        }
    }
    return violations;
}

} // namespace aeroea
