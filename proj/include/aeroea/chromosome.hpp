#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aeroea/domain.hpp"

namespace aeroea {

/// One (aircraft, work-package occurrence) pairing — the identity of a gene.
/// `occurrence` distinguishes repeated wp_ids within one aircraft's list.
struct Pairing {
    int aircraft_ref = 0;
    int wp_id = 0;
    int occurrence = 0;

    friend bool operator==(const Pairing&, const Pairing&) = default;
};

/// One staff allocation within a gene.
struct StaffEntry {
    int wo_index = 0;
    int slot_index = 0;
    int tech_id = 0;

    friend bool operator==(const StaffEntry&, const StaffEntry&) = default;
};

/// Index structures derived once per instance: the dense pairing list, flat
/// work-order and staff-entry layouts, and qualified-staff sets per
/// certification mask. Everything downstream (operators, decoder, oracle)
/// addresses the instance through this layout.
class InstanceLayout {
  public:
    explicit InstanceLayout(const ProblemInstance& instance) : instance_(&instance) {
        const int n_wp = static_cast<int>(instance.catalog.size());
        for (int id = 0; id < n_wp; ++id) {
            if (instance.catalog[static_cast<std::size_t>(id)].wp_id != id) {
                throw Error("layout: catalog wp_ids must be dense and ordered 0..n-1");
            }
        }
        for (std::size_t i = 0; i < instance.roster.size(); ++i) {
            if (instance.roster[i].tech_id != static_cast<int>(i)) {
                throw Error("layout: roster tech_ids must be dense and ordered 0..n-1");
            }
        }

        // Per-WP flattened entry layout: (wo_index, slot_index) in WO-major order.
        entry_pairs_.resize(static_cast<std::size_t>(n_wp));
        for (int id = 0; id < n_wp; ++id) {
            const auto& wp = instance.catalog[static_cast<std::size_t>(id)];
            auto& pairs = entry_pairs_[static_cast<std::size_t>(id)];
            for (std::size_t w = 0; w < wp.work_orders.size(); ++w) {
                for (std::size_t s = 0; s < wp.work_orders[w].slots.size(); ++s) {
                    pairs.emplace_back(static_cast<int>(w), static_cast<int>(s));
                }
            }
        }

        for (std::size_t a = 0; a < instance.aircraft.size(); ++a) {
            std::vector<int> seen(static_cast<std::size_t>(n_wp), 0);
            for (int wp_id : instance.aircraft[a].wp_list) {
                if (wp_id < 0 || wp_id >= n_wp) {
                    throw Error("layout: aircraft references unknown wp " + std::to_string(wp_id));
                }
                Pairing p;
                p.aircraft_ref = static_cast<int>(a);
                p.wp_id = wp_id;
                p.occurrence = seen[static_cast<std::size_t>(wp_id)]++;
                wo_offsets_.push_back(total_wos_);
                entry_offsets_.push_back(total_entries_);
                const auto& wp = instance.catalog[static_cast<std::size_t>(wp_id)];
                total_wos_ += static_cast<int>(wp.work_orders.size());
                total_entries_ += static_cast<int>(entry_pairs_[static_cast<std::size_t>(wp_id)].size());
                for (std::size_t w = 0; w < wp.work_orders.size(); ++w) {
                    wo_aircraft_.push_back(static_cast<int>(a));
                }
                pairings_.push_back(p);
            }
        }

        qualified_by_mask_.fill({});
        for (const auto& tech : instance.roster) {
            const std::uint8_t bit = static_cast<std::uint8_t>(1u << static_cast<std::uint8_t>(tech.cert));
            for (std::uint8_t mask = 1; mask < 16; ++mask) {
                if (mask & bit) {
                    qualified_by_mask_[mask].push_back(static_cast<std::uint16_t>(tech.tech_id));
                }
            }
        }
    }

    [[nodiscard]] const ProblemInstance& instance() const { return *instance_; }
    [[nodiscard]] int n_pairings() const { return static_cast<int>(pairings_.size()); }
    [[nodiscard]] const Pairing& pairing(int p) const { return pairings_[static_cast<std::size_t>(p)]; }
    [[nodiscard]] const WorkPackageDef& wp_of(int p) const {
        return instance_->catalog[static_cast<std::size_t>(pairing(p).wp_id)];
    }
    [[nodiscard]] const Aircraft& aircraft_of(int p) const {
        return instance_->aircraft[static_cast<std::size_t>(pairing(p).aircraft_ref)];
    }

    [[nodiscard]] int wo_offset(int p) const { return wo_offsets_[static_cast<std::size_t>(p)]; }
    [[nodiscard]] int n_wos(int p) const { return static_cast<int>(wp_of(p).work_orders.size()); }
    [[nodiscard]] int total_wos() const { return total_wos_; }
    [[nodiscard]] int aircraft_of_wo(int global_wo) const {
        return wo_aircraft_[static_cast<std::size_t>(global_wo)];
    }

    [[nodiscard]] int entry_offset(int p) const { return entry_offsets_[static_cast<std::size_t>(p)]; }
    [[nodiscard]] int n_entries(int p) const {
        return static_cast<int>(entry_pairs_[static_cast<std::size_t>(pairing(p).wp_id)].size());
    }
    [[nodiscard]] int total_entries() const { return total_entries_; }

    /// (wo_index, slot_index) of a gene's local entry.
    [[nodiscard]] std::pair<int, int> entry_slot(int p, int local_entry) const {
        return entry_pairs_[static_cast<std::size_t>(pairing(p).wp_id)]
                           [static_cast<std::size_t>(local_entry)];
    }

    [[nodiscard]] const std::vector<std::uint16_t>& qualified(const StaffSlotRequirement& slot) const {
        return qualified_by_mask_[slot.allowed_certs.bits()];
    }
    [[nodiscard]] const std::vector<std::uint16_t>& qualified(int p, int local_entry) const {
        const auto [wo, s] = entry_slot(p, local_entry);
        const auto& wp = wp_of(p);
        return qualified(wp.work_orders[static_cast<std::size_t>(wo)].slots[static_cast<std::size_t>(s)]);
    }

    /// A slot nobody on the roster can fill makes the instance unsolvable for
    /// the evolutionary representation (entries must hold qualified staff).
    [[nodiscard]] bool has_unstaffable_slot() const {
        for (int p = 0; p < n_pairings(); ++p) {
            for (int e = 0; e < n_entries(p); ++e) {
                if (qualified(p, e).empty()) return true;
            }
        }
        return false;
    }

  private:
    const ProblemInstance* instance_;
    std::vector<Pairing> pairings_;
    std::vector<int> wo_offsets_;
    std::vector<int> entry_offsets_;
    std::vector<int> wo_aircraft_;
    std::vector<std::vector<std::pair<int, int>>> entry_pairs_; // per wp_id
    std::array<std::vector<std::uint16_t>, 16> qualified_by_mask_;
    int total_wos_ = 0;
    int total_entries_ = 0;
};

/// A solution candidate: a permutation of the instance's gene pairings plus
/// one technician per staff entry. Staff allocations are keyed by the
/// layout's global entry index, so they travel with the gene identity rather
/// than with its position.
struct Chromosome {
    std::vector<std::uint16_t> order; // pairing indices, a permutation of 0..n-1
    std::vector<std::uint16_t> techs; // technician per global entry index

    friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

/// Materialized view of one gene for inspection and tests.
struct GeneView {
    Pairing pairing;
    std::vector<StaffEntry> entries;

    friend bool operator==(const GeneView&, const GeneView&) = default;
};

inline GeneView gene_at(const Chromosome& chrom, const InstanceLayout& layout, int position) {
    const int p = chrom.order[static_cast<std::size_t>(position)];
    GeneView view;
    view.pairing = layout.pairing(p);
    const int base = layout.entry_offset(p);
    for (int e = 0; e < layout.n_entries(p); ++e) {
        const auto [wo, slot] = layout.entry_slot(p, e);
        view.entries.push_back({wo, slot, chrom.techs[static_cast<std::size_t>(base + e)]});
    }
    return view;
}

/// Verifies the permutation and qualification invariants; returns human
/// readable problems (empty means valid).
inline std::vector<std::string> chromosome_violations(const Chromosome& chrom,
                                                      const InstanceLayout& layout) {
    std::vector<std::string> problems;
    const int n = layout.n_pairings();
    if (static_cast<int>(chrom.order.size()) != n) {
        problems.push_back("order length " + std::to_string(chrom.order.size()) +
                           " != pairing count " + std::to_string(n));
        return problems;
    }
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    for (std::uint16_t p : chrom.order) {
        if (p >= chrom.order.size()) {
            problems.push_back("order references pairing " + std::to_string(p) + " out of range");
            return problems;
        }
        ++counts[p];
    }
    for (int p = 0; p < n; ++p) {
        if (counts[static_cast<std::size_t>(p)] != 1) {
            problems.push_back("pairing " + std::to_string(p) + " appears " +
                               std::to_string(counts[static_cast<std::size_t>(p)]) + " times");
        }
    }
    if (static_cast<int>(chrom.techs.size()) != layout.total_entries()) {
        problems.push_back("techs length != total entries");
        return problems;
    }
    for (int p = 0; p < n; ++p) {
        const int base = layout.entry_offset(p);
        for (int e = 0; e < layout.n_entries(p); ++e) {
            const int tech = chrom.techs[static_cast<std::size_t>(base + e)];
            const auto& pool = layout.qualified(p, e);
            if (std::find(pool.begin(), pool.end(), static_cast<std::uint16_t>(tech)) == pool.end()) {
                problems.push_back("entry " + std::to_string(base + e) + " holds unqualified tech " +
                                   std::to_string(tech));
            }
        }
    }
    return problems;
}

} // namespace aeroea
