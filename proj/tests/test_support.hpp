#pragma once

// Shared builders for hand-crafted and randomized micro instances.

#include <string>
#include <utility>
#include <vector>

#include "aeroea/aeroea.hpp"

namespace testsup {

using namespace aeroea;

inline WorkOrderDef wo(int duration, std::vector<CertSet> slot_certs) {
    WorkOrderDef out;
    out.duration = duration;
    for (auto certs : slot_certs) out.slots.push_back({certs});
    return out;
}

inline WorkPackageDef wp(int id, std::vector<WorkOrderDef> wos) {
    WorkPackageDef out;
    out.wp_id = id;
    out.work_orders = std::move(wos);
    out.duration = computed_duration(out);
    out.man_hours = computed_man_hours(out);
    out.crew_size = computed_crew_size(out);
    return out;
}

inline Technician tech(int id, Certification cert, int shift_start = 0,
                       int shift_length = kDefaultShiftLength) {
    return Technician{id, cert, shift_start, shift_length};
}

inline Aircraft aircraft(std::string serial, int landing, int turnaround, std::vector<int> wps) {
    Aircraft out;
    out.serial = std::move(serial);
    out.landing = landing;
    out.turnaround = turnaround;
    out.departure = landing + turnaround;
    out.wp_list = std::move(wps);
    return out;
}

inline ProblemInstance instance(std::vector<WorkPackageDef> catalog, std::vector<Technician> roster,
                                std::vector<Aircraft> fleet, std::uint64_t seed = 0) {
    ProblemInstance out;
    out.catalog = std::move(catalog);
    out.roster = std::move(roster);
    out.aircraft = std::move(fleet);
    out.seed = seed;
    return out;
}

inline CertSet any_cert() {
    return CertSet{Certification::B1Technician, Certification::B2Technician,
                   Certification::B1Engineer, Certification::B2Engineer};
}

/// Random small instance for property tests. The roster always contains all
/// four certifications so that every slot stays staffable.
inline ProblemInstance random_small_instance(Rng& rng) {
    std::vector<WorkPackageDef> catalog;
    const int n_wps = rng.uniform_int(2, 5);
    for (int id = 0; id < n_wps; ++id) {
        std::vector<WorkOrderDef> wos;
        const int n_wos = rng.uniform_int(1, 3);
        for (int w = 0; w < n_wos; ++w) {
            std::vector<CertSet> slots;
            const int n_slots = rng.uniform_int(1, 2);
            for (int s = 0; s < n_slots; ++s) {
                CertSet certs;
                certs.insert(kAllCertifications[static_cast<std::size_t>(rng.uniform_int(0, 3))]);
                if (rng.bernoulli(0.4)) {
                    certs.insert(kAllCertifications[static_cast<std::size_t>(rng.uniform_int(0, 3))]);
                }
                slots.push_back(certs);
            }
            wos.push_back(wo(rng.uniform_int(10, 90), slots));
        }
        catalog.push_back(wp(id, std::move(wos)));
    }

    std::vector<Technician> roster;
    const int n_techs = rng.uniform_int(4, 6);
    for (int id = 0; id < n_techs; ++id) {
        const Certification cert =
            id < 4 ? kAllCertifications[static_cast<std::size_t>(id)]
                   : kAllCertifications[static_cast<std::size_t>(rng.uniform_int(0, 3))];
        roster.push_back(tech(id, cert, rng.uniform_int(0, 2) * 480));
    }

    std::vector<Aircraft> fleet;
    const int n_aircraft = rng.uniform_int(1, 3);
    for (int a = 0; a < n_aircraft; ++a) {
        std::vector<int> wps;
        const int k = rng.uniform_int(1, 3);
        int duration = 0;
        for (int i = 0; i < k; ++i) {
            const int id = rng.uniform_int(0, n_wps - 1);
            wps.push_back(id);
            duration += catalog[static_cast<std::size_t>(id)].duration;
        }
        const int turnaround = static_cast<int>(duration * (1.0 + rng.uniform01() * 2.0));
        fleet.push_back(aircraft("AC0" + std::to_string(a), rng.uniform_int(0, 1439), turnaround,
                                 std::move(wps)));
    }
    return instance(std::move(catalog), std::move(roster), std::move(fleet));
}

} // namespace testsup
