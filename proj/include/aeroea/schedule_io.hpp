#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "aeroea/decoder.hpp"

namespace aeroea {

/// Machine-readable rendering: per-aircraft WO timelines with per-slot staff
/// (null marks an uncovered slot) plus per-technician booking lanes.
inline nlohmann::json schedule_to_json(const Schedule& schedule, const InstanceLayout& layout,
                                       const FitnessReport& report) {
    const ProblemInstance& instance = layout.instance();
    nlohmann::json doc;
    doc["instance_seed"] = instance.seed;
    doc["fitness"] = report.fitness;
    doc["w"] = report.w;
    doc["l"] = report.l;

    // slot -> tech map from the booking lanes
    std::map<std::tuple<int, int, int>, int> slot_tech;
    for (std::size_t tech = 0; tech < schedule.bookings.size(); ++tech) {
        for (const auto& b : schedule.bookings[tech]) {
            slot_tech[{b.pairing, b.wo_index, b.slot_index}] = static_cast<int>(tech);
        }
    }

    doc["aircraft"] = nlohmann::json::array();
    for (std::size_t a = 0; a < instance.aircraft.size(); ++a) {
        nlohmann::json entry;
        entry["serial"] = instance.aircraft[a].serial;
        entry["landing"] = instance.aircraft[a].landing;
        entry["departure"] = instance.aircraft[a].departure;
        entry["wps"] = nlohmann::json::array();
        for (int p = 0; p < layout.n_pairings(); ++p) {
            if (layout.pairing(p).aircraft_ref != static_cast<int>(a)) continue;
            const auto& wp = layout.wp_of(p);
            nlohmann::json wp_entry;
            wp_entry["wp_id"] = layout.pairing(p).wp_id;
            wp_entry["occurrence"] = layout.pairing(p).occurrence;
            wp_entry["wos"] = nlohmann::json::array();
            for (std::size_t w = 0; w < wp.work_orders.size(); ++w) {
                const Interval iv = schedule.wo_times[static_cast<std::size_t>(layout.wo_offset(p)) + w];
                nlohmann::json wo_entry;
                wo_entry["start"] = iv.start;
                wo_entry["end"] = iv.end;
                auto techs = nlohmann::json::array();
                int uncovered = 0;
                for (std::size_t s = 0; s < wp.work_orders[w].slots.size(); ++s) {
                    auto it = slot_tech.find({p, static_cast<int>(w), static_cast<int>(s)});
                    if (it == slot_tech.end()) {
                        techs.push_back(nullptr);
                        ++uncovered;
                    } else {
                        techs.push_back(it->second);
                    }
                }
                wo_entry["techs"] = std::move(techs);
                wo_entry["uncovered_slots"] = uncovered;
                wp_entry["wos"].push_back(std::move(wo_entry));
            }
            entry["wps"].push_back(std::move(wp_entry));
        }
        doc["aircraft"].push_back(std::move(entry));
    }

    doc["technicians"] = nlohmann::json::array();
    for (std::size_t tech = 0; tech < schedule.bookings.size(); ++tech) {
        nlohmann::json entry;
        entry["tech_id"] = tech;
        entry["bookings"] = nlohmann::json::array();
        for (const auto& b : schedule.bookings[tech]) {
            nlohmann::json booking;
            booking["start"] = b.time.start;
            booking["end"] = b.time.end;
            booking["aircraft"] = layout.aircraft_of(b.pairing).serial;
            booking["wo"] = {{"wp_id", layout.pairing(b.pairing).wp_id},
                             {"occurrence", layout.pairing(b.pairing).occurrence},
                             {"wo_index", b.wo_index},
                             {"slot_index", b.slot_index}};
            entry["bookings"].push_back(std::move(booking));
        }
        doc["technicians"].push_back(std::move(entry));
    }
    return doc;
}

/// Rebuilds a Schedule from its JSON rendering (inverse of schedule_to_json
/// for the same instance).
inline Schedule schedule_from_json(const nlohmann::json& doc, const InstanceLayout& layout) {
    Schedule schedule;
    schedule.reset(static_cast<int>(layout.instance().roster.size()), layout.total_wos());

    std::map<std::string, int> serial_to_ref;
    for (std::size_t a = 0; a < layout.instance().aircraft.size(); ++a) {
        serial_to_ref[layout.instance().aircraft[a].serial] = static_cast<int>(a);
    }
    std::map<std::tuple<int, int, int>, int> pairing_index; // (aircraft, wp, occurrence)
    for (int p = 0; p < layout.n_pairings(); ++p) {
        const auto& pr = layout.pairing(p);
        pairing_index[{pr.aircraft_ref, pr.wp_id, pr.occurrence}] = p;
    }

    for (const auto& entry : doc.at("aircraft")) {
        const int aircraft_ref = serial_to_ref.at(entry.at("serial").get<std::string>());
        for (const auto& wp_entry : entry.at("wps")) {
            const int p = pairing_index.at({aircraft_ref, wp_entry.at("wp_id").get<int>(),
                                            wp_entry.at("occurrence").get<int>()});
            const auto& wos = wp_entry.at("wos");
            for (std::size_t w = 0; w < wos.size(); ++w) {
                const Interval iv{wos[w].at("start").get<int>(), wos[w].at("end").get<int>()};
                schedule.wo_times[static_cast<std::size_t>(layout.wo_offset(p)) + w] = iv;
                const auto& techs = wos[w].at("techs");
                for (std::size_t s = 0; s < techs.size(); ++s) {
                    if (techs[s].is_null()) {
                        schedule.uncovered.push_back({static_cast<std::uint16_t>(p),
                                                      static_cast<std::uint8_t>(w),
                                                      static_cast<std::uint8_t>(s)});
                    } else {
                        const int tech = techs[s].get<int>();
                        detail::insert_booking(schedule.bookings[static_cast<std::size_t>(tech)],
                                               {iv, static_cast<std::uint16_t>(p),
                                                static_cast<std::uint8_t>(w),
                                                static_cast<std::uint8_t>(s)});
                    }
                }
            }
        }
    }
    return schedule;
}

// ---------------------------------------------------------------------------
// Text Gantt
// ---------------------------------------------------------------------------

/// Aligned-text timeline: one lane per aircraft (its WOs) and one per
/// technician (their bookings). One character covers `minutes_per_char`
/// minutes.
inline std::string schedule_to_gantt(const Schedule& schedule, const InstanceLayout& layout,
                                     int minutes_per_char = 15) {
    if (minutes_per_char < 1) throw Error("gantt: minutes_per_char must be positive");
    const ProblemInstance& instance = layout.instance();
    int span_end = 1;
    for (const auto& iv : schedule.wo_times) span_end = std::max(span_end, iv.end);
    for (const auto& ac : instance.aircraft) span_end = std::max(span_end, ac.departure);
    const int columns = (span_end + minutes_per_char - 1) / minutes_per_char;

    auto lane = [&]() { return std::string(static_cast<std::size_t>(columns), ' '); };
    auto paint = [&](std::string& row, Interval iv, char fill) {
        const int from = iv.start / minutes_per_char;
        const int to = std::max(from + 1, (iv.end + minutes_per_char - 1) / minutes_per_char);
        for (int c = from; c < to && c < columns; ++c) {
            row[static_cast<std::size_t>(c)] = fill;
        }
    };

    std::string out = "time unit: " + std::to_string(minutes_per_char) + " min/char, span " +
                      std::to_string(span_end) + " min\n-- aircraft --\n";
    for (std::size_t a = 0; a < instance.aircraft.size(); ++a) {
        std::string row = lane();
        paint(row, {instance.aircraft[a].landing, instance.aircraft[a].departure}, '.');
        for (int p = 0; p < layout.n_pairings(); ++p) {
            if (layout.pairing(p).aircraft_ref != static_cast<int>(a)) continue;
            for (int w = 0; w < layout.n_wos(p); ++w) {
                paint(row, schedule.wo_times[static_cast<std::size_t>(layout.wo_offset(p) + w)], '=');
            }
        }
        out += instance.aircraft[a].serial + " |" + row + "|\n";
    }
    out += "-- technicians --\n";
    for (std::size_t tech = 0; tech < schedule.bookings.size(); ++tech) {
        std::string row = lane();
        for (const auto& w : availability_windows(instance.roster[tech],
                                                  instance_horizon_end(instance))) {
            paint(row, {w.start, std::min(w.end, span_end)}, '.');
        }
        for (const auto& b : schedule.bookings[tech]) paint(row, b.time, '#');
        char label[16];
        std::snprintf(label, sizeof(label), "T%02d %s", static_cast<int>(tech),
                      cert_token(instance.roster[tech].cert));
        out += std::string(label) + " |" + row + "|\n";
    }
    if (!schedule.uncovered.empty()) {
        out += "uncovered slots: " + std::to_string(schedule.uncovered.size()) + "\n";
    }
    return out;
}

/// Format-token dispatch used by the CLI: "json" or "gantt".
inline std::string export_schedule(const Schedule& schedule, const InstanceLayout& layout,
                                   const FitnessReport& report, const std::string& format) {
    if (format == "json") return schedule_to_json(schedule, layout, report).dump(2) + "\n";
    if (format == "gantt") return schedule_to_gantt(schedule, layout);
    throw Error("unknown schedule export format: '" + format + "'");
}

} // namespace aeroea
