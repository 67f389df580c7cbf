#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "aeroea/domain.hpp"

namespace aeroea {

// Fixed epoch for CSV datetimes. The generator picks a base day as an offset
// of 0..364 days past this date; scheduling arithmetic never sees dates.
inline constexpr int kEpochYear = 2025;
inline constexpr int kEpochMonth = 1;
inline constexpr int kEpochDay = 1;

namespace detail {

// Howard Hinnant's civil-date algorithms.
inline long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

inline void civil_from_days(long z, int& y, int& m, int& d) {
    z += 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long yr = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = static_cast<int>(yr + (m <= 2));
}

inline long epoch_day_number() { return days_from_civil(kEpochYear, kEpochMonth, kEpochDay); }

inline long long parse_ll(std::string_view s, const char* what) {
    long long value = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw Error(std::string("malformed ") + what + ": '" + std::string(s) + "'");
    }
    return value;
}

inline std::uint64_t parse_u64(std::string_view s, const char* what) {
    std::uint64_t value = 0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw Error(std::string("malformed ") + what + ": '" + std::string(s) + "'");
    }
    return value;
}

inline int parse_int(std::string_view s, const char* what) {
    return static_cast<int>(parse_ll(s, what));
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = line.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find('\n', pos);
        if (next == std::string_view::npos) next = text.size();
        std::string_view line = text.substr(pos, next - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) lines.push_back(line);
        pos = next + 1;
    }
    return lines;
}

} // namespace detail

/// Minutes from the horizon origin (midnight of the base day) to ISO-8601
/// YYYY-MM-DDTHH:MM.
inline std::string format_datetime(int minutes, int base_day_offset) {
    const long long total = static_cast<long long>(base_day_offset) * kMinutesPerDay + minutes;
    const long day = static_cast<long>(total / kMinutesPerDay) + detail::epoch_day_number();
    const int mins = static_cast<int>(total % kMinutesPerDay);
    int y = 0, m = 0, d = 0;
    detail::civil_from_days(day, y, m, d);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d", y, m, d, mins / 60, mins % 60);
    return buf;
}

/// Inverse of format_datetime, as minutes from the epoch (not the base day).
inline long long parse_datetime_epoch_minutes(std::string_view text) {
    if (text.size() != 16 || text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':') {
        throw Error("malformed datetime: '" + std::string(text) + "'");
    }
    const int y = detail::parse_int(text.substr(0, 4), "datetime year");
    const int m = detail::parse_int(text.substr(5, 2), "datetime month");
    const int d = detail::parse_int(text.substr(8, 2), "datetime day");
    const int hh = detail::parse_int(text.substr(11, 2), "datetime hour");
    const int mm = detail::parse_int(text.substr(14, 2), "datetime minute");
    const long day = detail::days_from_civil(y, m, d) - detail::epoch_day_number();
    return static_cast<long long>(day) * kMinutesPerDay + hh * 60 + mm;
}

// ---------------------------------------------------------------------------
// Catalog CSV: wp_id,duration_min,man_hours_min,crew_size,wo_spec
// wo_spec joins work orders with ';'; each is duration@certset|certset...
// ---------------------------------------------------------------------------

inline std::string write_catalog_csv(const std::vector<WorkPackageDef>& catalog) {
    std::string out = "wp_id,duration_min,man_hours_min,crew_size,wo_spec\n";
    for (const auto& wp : catalog) {
        out += std::to_string(wp.wp_id) + ',' + std::to_string(wp.duration) + ',' +
               std::to_string(wp.man_hours) + ',' + std::to_string(wp.crew_size) + ',';
        for (std::size_t w = 0; w < wp.work_orders.size(); ++w) {
            const auto& wo = wp.work_orders[w];
            if (w != 0) out += ';';
            out += std::to_string(wo.duration) + '@';
            for (std::size_t s = 0; s < wo.slots.size(); ++s) {
                if (s != 0) out += '|';
                out += wo.slots[s].allowed_certs.token();
            }
        }
        out += '\n';
    }
    return out;
}

inline std::vector<WorkPackageDef> parse_catalog_csv(std::string_view text) {
    auto lines = detail::split_lines(text);
    if (lines.empty()) throw Error("catalog CSV is empty");
    std::vector<WorkPackageDef> catalog;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto fields = detail::split(lines[i], ',');
        if (fields.size() != 5) throw Error("catalog CSV: expected 5 fields per row");
        WorkPackageDef wp;
        wp.wp_id = detail::parse_int(fields[0], "wp_id");
        wp.duration = detail::parse_int(fields[1], "duration_min");
        wp.man_hours = detail::parse_int(fields[2], "man_hours_min");
        wp.crew_size = detail::parse_int(fields[3], "crew_size");
        for (auto wo_spec : detail::split(fields[4], ';')) {
            auto at = wo_spec.find('@');
            if (at == std::string_view::npos) throw Error("catalog CSV: malformed wo_spec");
            WorkOrderDef wo;
            wo.duration = detail::parse_int(wo_spec.substr(0, at), "wo duration");
            for (auto slot_tok : detail::split(wo_spec.substr(at + 1), '|')) {
                wo.slots.push_back({CertSet::parse(slot_tok)});
            }
            wp.work_orders.push_back(std::move(wo));
        }
        if (wp.duration != computed_duration(wp)) {
            throw Error("catalog CSV: wp " + std::to_string(wp.wp_id) +
                        " duration does not match its work orders");
        }
        catalog.push_back(std::move(wp));
    }
    return catalog;
}

// ---------------------------------------------------------------------------
// Roster CSV: tech_id,certification,shift_start_min,shift_length_min
// ---------------------------------------------------------------------------

inline std::string write_roster_csv(const std::vector<Technician>& roster) {
    std::string out = "tech_id,certification,shift_start_min,shift_length_min\n";
    for (const auto& tech : roster) {
        out += std::to_string(tech.tech_id) + ',' + cert_token(tech.cert) + ',' +
               std::to_string(tech.shift_start) + ',' + std::to_string(tech.shift_length) + '\n';
    }
    return out;
}

inline std::vector<Technician> parse_roster_csv(std::string_view text) {
    auto lines = detail::split_lines(text);
    if (lines.empty()) throw Error("roster CSV is empty");
    std::vector<Technician> roster;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto fields = detail::split(lines[i], ',');
        if (fields.size() != 4) throw Error("roster CSV: expected 4 fields per row");
        Technician tech;
        tech.tech_id = detail::parse_int(fields[0], "tech_id");
        tech.cert = parse_cert_token(fields[1]);
        tech.shift_start = detail::parse_int(fields[2], "shift_start_min");
        tech.shift_length = detail::parse_int(fields[3], "shift_length_min");
        roster.push_back(tech);
    }
    return roster;
}

// ---------------------------------------------------------------------------
// Instance CSV: one file per instance. A leading `# seed=` comment carries
// the generator seed; then the aircraft table.
// ---------------------------------------------------------------------------

inline std::string write_instance_csv(const ProblemInstance& instance) {
    std::string out = "# seed=" + std::to_string(instance.seed) + '\n';
    out += "serial,landing_datetime,departure_datetime,turnaround_minutes,wp_list\n";
    for (const auto& ac : instance.aircraft) {
        out += ac.serial + ',' + format_datetime(ac.landing, instance.base_day_offset) + ',' +
               format_datetime(ac.departure, instance.base_day_offset) + ',' +
               std::to_string(ac.turnaround) + ',';
        for (std::size_t i = 0; i < ac.wp_list.size(); ++i) {
            if (i != 0) out += ';';
            out += std::to_string(ac.wp_list[i]);
        }
        out += '\n';
    }
    return out;
}

/// Parses an instance CSV and attaches the given catalog and roster. The base
/// day is recovered from the (shared) landing date.
inline ProblemInstance parse_instance_csv(std::string_view text,
                                          std::vector<WorkPackageDef> catalog,
                                          std::vector<Technician> roster) {
    ProblemInstance instance;
    instance.catalog = std::move(catalog);
    instance.roster = std::move(roster);

    auto lines = detail::split_lines(text);
    std::size_t row = 0;
    while (row < lines.size() && lines[row].front() == '#') {
        std::string_view line = lines[row];
        auto eq = line.find("seed=");
        if (eq != std::string_view::npos) {
            instance.seed = detail::parse_u64(line.substr(eq + 5), "seed");
        }
        ++row;
    }
    if (row >= lines.size()) throw Error("instance CSV has no header row");
    ++row; // header

    struct RawRow {
        std::string serial;
        long long landing_epoch;
        long long departure_epoch;
        int turnaround;
        std::vector<int> wp_list;
    };
    std::vector<RawRow> rows;
    for (; row < lines.size(); ++row) {
        auto fields = detail::split(lines[row], ',');
        if (fields.size() != 5) throw Error("instance CSV: expected 5 fields per row");
        RawRow r;
        r.serial = std::string(fields[0]);
        r.landing_epoch = parse_datetime_epoch_minutes(fields[1]);
        r.departure_epoch = parse_datetime_epoch_minutes(fields[2]);
        r.turnaround = detail::parse_int(fields[3], "turnaround_minutes");
        for (auto tok : detail::split(fields[4], ';')) {
            r.wp_list.push_back(detail::parse_int(tok, "wp_list entry"));
        }
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw Error("instance CSV has no aircraft rows");

    long long min_landing = rows.front().landing_epoch;
    for (const auto& r : rows) min_landing = std::min(min_landing, r.landing_epoch);
    instance.base_day_offset = static_cast<int>(min_landing / kMinutesPerDay);
    const long long origin = static_cast<long long>(instance.base_day_offset) * kMinutesPerDay;

    for (auto& r : rows) {
        Aircraft ac;
        ac.serial = std::move(r.serial);
        ac.landing = static_cast<int>(r.landing_epoch - origin);
        ac.departure = static_cast<int>(r.departure_epoch - origin);
        ac.turnaround = r.turnaround;
        ac.wp_list = std::move(r.wp_list);
        if (ac.departure != ac.landing + ac.turnaround) {
            throw Error("instance CSV: departure != landing + turnaround for " + ac.serial);
        }
        instance.aircraft.push_back(std::move(ac));
    }
    return instance;
}

// ---------------------------------------------------------------------------
// File helpers
// ---------------------------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

} // namespace aeroea
