#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aeroea {

/// Error type for contract violations, bad configuration and malformed input.
/// Infeasibility of a schedule is never an error; it is expressed as penalties.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Certifications
// ---------------------------------------------------------------------------

/// The four recognised personnel qualifications. Every technician holds
/// exactly one; every staff slot names the subset it accepts.
enum class Certification : std::uint8_t {
    B1Technician = 0,
    B2Technician = 1,
    B1Engineer = 2,
    B2Engineer = 3,
};

inline constexpr std::array<Certification, 4> kAllCertifications = {
    Certification::B1Technician,
    Certification::B2Technician,
    Certification::B1Engineer,
    Certification::B2Engineer,
};

inline constexpr const char* cert_token(Certification c) {
    switch (c) {
    case Certification::B1Technician: return "B1T";
    case Certification::B2Technician: return "B2T";
    case Certification::B1Engineer: return "B1E";
    case Certification::B2Engineer: return "B2E";
    }
    return "?";
}

inline Certification parse_cert_token(std::string_view token) {
    for (Certification c : kAllCertifications) {
        if (token == cert_token(c)) return c;
    }
    throw Error("unknown certification token: " + std::string(token));
}

/// Small set over the four certification values (one bit each).
class CertSet {
  public:
    constexpr CertSet() = default;
    constexpr CertSet(std::initializer_list<Certification> certs) {
        for (Certification c : certs) insert(c);
    }

    constexpr void insert(Certification c) { bits_ |= mask(c); }
    [[nodiscard]] constexpr bool contains(Certification c) const { return (bits_ & mask(c)) != 0; }
    [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }
    [[nodiscard]] constexpr int size() const {
        int n = 0;
        for (Certification c : kAllCertifications) n += contains(c) ? 1 : 0;
        return n;
    }
    [[nodiscard]] constexpr bool subset_of(CertSet other) const { return (bits_ & ~other.bits_) == 0; }
    [[nodiscard]] constexpr std::uint8_t bits() const { return bits_; }

    friend constexpr bool operator==(CertSet a, CertSet b) = default;

    [[nodiscard]] std::string token() const {
        std::string out;
        for (Certification c : kAllCertifications) {
            if (!contains(c)) continue;
            if (!out.empty()) out += '+';
            out += cert_token(c);
        }
        return out;
    }

    static CertSet parse(std::string_view token) {
        CertSet set;
        std::size_t pos = 0;
        while (pos < token.size()) {
            std::size_t next = token.find('+', pos);
            if (next == std::string_view::npos) next = token.size();
            set.insert(parse_cert_token(token.substr(pos, next - pos)));
            pos = next + 1;
        }
        if (set.empty()) throw Error("empty certification set token");
        return set;
    }

  private:
    static constexpr std::uint8_t mask(Certification c) {
        return static_cast<std::uint8_t>(1u << static_cast<std::uint8_t>(c));
    }
    std::uint8_t bits_ = 0;
};

// ---------------------------------------------------------------------------
// Catalog types
// ---------------------------------------------------------------------------

/// One required technician position on a work order.
struct StaffSlotRequirement {
    CertSet allowed_certs;

    friend bool operator==(const StaffSlotRequirement&, const StaffSlotRequirement&) = default;
};

/// Atomic, non-preemptible task. All slots share the work order's single
/// execution interval.
struct WorkOrderDef {
    int duration = 0; // minutes
    std::vector<StaffSlotRequirement> slots;

    [[nodiscard]] int slot_count() const { return static_cast<int>(slots.size()); }

    friend bool operator==(const WorkOrderDef&, const WorkOrderDef&) = default;
};

/// High-level grouping of work orders. Work orders execute strictly in the
/// order listed; the packages themselves may be scheduled in any order.
struct WorkPackageDef {
    int wp_id = 0;
    int duration = 0;   // minutes; equals the sum of work-order durations
    int man_hours = 0;  // person-minutes reserved for the package: duration * crew_size
    int crew_size = 0;  // max concurrent technicians, i.e. max slot count over WOs
    std::vector<WorkOrderDef> work_orders;

    friend bool operator==(const WorkPackageDef&, const WorkPackageDef&) = default;
};

inline int computed_duration(const WorkPackageDef& wp) {
    int d = 0;
    for (const auto& wo : wp.work_orders) d += wo.duration;
    return d;
}

inline int computed_crew_size(const WorkPackageDef& wp) {
    int c = 0;
    for (const auto& wo : wp.work_orders) c = std::max(c, wo.slot_count());
    return c;
}

/// Man-hours book the full crew for the package's whole duration. Individual
/// work orders may need fewer hands, so the actual staffed person-minutes
/// (sum of duration * slots over WOs) can sit below this planning figure.
inline int computed_man_hours(const WorkPackageDef& wp) {
    return wp.duration * computed_crew_size(wp);
}

/// Person-minutes actually staffed across the package's work orders.
inline int staffed_person_minutes(const WorkPackageDef& wp) {
    int mh = 0;
    for (const auto& wo : wp.work_orders) mh += wo.duration * wo.slot_count();
    return mh;
}

// ---------------------------------------------------------------------------
// Roster and fleet
// ---------------------------------------------------------------------------

inline constexpr int kMinutesPerDay = 1440;
inline constexpr int kDefaultShiftLength = 480;

struct Technician {
    int tech_id = 0;
    Certification cert = Certification::B1Technician;
    int shift_start = 0;                     // minutes from horizon origin
    int shift_length = kDefaultShiftLength;  // minutes

    friend bool operator==(const Technician&, const Technician&) = default;
};

/// Half-open time interval in minutes.
struct Interval {
    int start = 0;
    int end = 0;

    [[nodiscard]] bool contains(const Interval& other) const {
        return start <= other.start && other.end <= end;
    }
    [[nodiscard]] bool overlaps(const Interval& other) const {
        return start < other.end && other.start < end;
    }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Availability windows of a technician within [0, horizon_end). With
/// repeating shifts the 8-hour block recurs every day; in single-shift mode
/// only the first block exists.
inline std::vector<Interval> availability_windows(const Technician& tech, int horizon_end,
                                                  bool single_shift = false) {
    std::vector<Interval> windows;
    if (single_shift) {
        windows.push_back({tech.shift_start, tech.shift_start + tech.shift_length});
        return windows;
    }
    for (int day = 0;; ++day) {
        const int start = tech.shift_start + day * kMinutesPerDay;
        if (start >= horizon_end) break;
        windows.push_back({start, start + tech.shift_length});
    }
    if (windows.empty()) windows.push_back({tech.shift_start, tech.shift_start + tech.shift_length});
    return windows;
}

struct Aircraft {
    std::string serial;
    int landing = 0;    // absolute minutes from horizon origin
    int departure = 0;  // landing + turnaround
    int turnaround = 0; // minutes
    std::vector<int> wp_list; // wp_ids, repetition allowed, non-empty

    friend bool operator==(const Aircraft&, const Aircraft&) = default;
};

struct ProblemInstance {
    std::vector<Aircraft> aircraft;
    std::vector<WorkPackageDef> catalog;
    std::vector<Technician> roster;
    std::uint64_t seed = 0;   // generator seed used
    int base_day_offset = 0;  // days past the CSV epoch; cosmetic only

    friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

inline const WorkPackageDef& catalog_lookup(const ProblemInstance& instance, int wp_id) {
    for (const auto& wp : instance.catalog) {
        if (wp.wp_id == wp_id) return wp;
    }
    throw Error("unknown wp_id " + std::to_string(wp_id) + " referenced by instance");
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Technicians eligible for a slot: exactly those whose certification is in
/// the slot's allowed set. May be empty (an unsatisfiable slot).
inline std::vector<int> qualified_staff(const ProblemInstance& instance,
                                        const StaffSlotRequirement& slot) {
    std::vector<int> ids;
    for (const auto& tech : instance.roster) {
        if (slot.allowed_certs.contains(tech.cert)) ids.push_back(tech.tech_id);
    }
    return ids;
}

/// Total person-minutes of labor implied by the instance.
inline long long total_man_hours(const ProblemInstance& instance) {
    long long total = 0;
    for (const auto& ac : instance.aircraft) {
        for (int wp_id : ac.wp_list) total += catalog_lookup(instance, wp_id).man_hours;
    }
    return total;
}

/// Latest departure across the fleet plus the longest turnaround; bounds all
/// forward-shift searches during decoding.
inline int instance_horizon_end(const ProblemInstance& instance) {
    int max_departure = 0;
    int max_turnaround = 0;
    for (const auto& ac : instance.aircraft) {
        max_departure = std::max(max_departure, ac.departure);
        max_turnaround = std::max(max_turnaround, ac.turnaround);
    }
    return max_departure + max_turnaround;
}

inline int horizon_days(const ProblemInstance& instance) {
    int max_departure = 0;
    for (const auto& ac : instance.aircraft) max_departure = std::max(max_departure, ac.departure);
    return std::max(1, (max_departure + kMinutesPerDay - 1) / kMinutesPerDay);
}

} // namespace aeroea
