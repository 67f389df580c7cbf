#include <gtest/gtest.h>

#include "aeroea/decoder.hpp"
#include "aeroea/ea.hpp"
#include "aeroea/oracle.hpp"
#include "test_support.hpp"

using namespace aeroea;
using namespace testsup;

// Chromosome in canonical pairing order with the first qualified technician
// in every slot.
static Chromosome first_choice_chromosome(const InstanceLayout& layout) {
    Chromosome chrom;
    chrom.order.resize(static_cast<std::size_t>(layout.n_pairings()));
    std::iota(chrom.order.begin(), chrom.order.end(), std::uint16_t{0});
    chrom.techs.resize(static_cast<std::size_t>(layout.total_entries()));
    for (int p = 0; p < layout.n_pairings(); ++p) {
        for (int e = 0; e < layout.n_entries(p); ++e) {
            const auto& pool = layout.qualified(p, e);
            if (pool.empty()) throw Error("unstaffable slot in test instance");
            chrom.techs[static_cast<std::size_t>(layout.entry_offset(p) + e)] = pool.front();
        }
    }
    return chrom;
}

TEST(Decoder, UnconstrainedPlacementStartsAtLanding) {
    auto inst = instance({wp(0, {wo(60, {CertSet{Certification::B1Technician}})})},
                         {tech(0, Certification::B1Technician)},
                         {aircraft("AC00", 100, 120, {0})});
    InstanceLayout layout(inst);
    DecodeContext ctx(layout);
    const auto schedule = decode(ctx, first_choice_chromosome(layout));
    EXPECT_EQ(schedule.wo_times[0], (Interval{100, 160}));
    EXPECT_TRUE(schedule.uncovered.empty());
    ASSERT_EQ(schedule.bookings[0].size(), 1u);
    EXPECT_EQ(schedule.bookings[0][0].time, (Interval{100, 160}));
    EXPECT_TRUE(check_schedule(schedule, layout).empty());
}

TEST(Decoder, FullyBookedTechnicianLeavesSlotUncovered) {
    // Aircraft AC00 saturates the only qualified technician's single shift;
    // AC01's slot has nowhere to go.
    const CertSet b1t{Certification::B1Technician};
    auto inst = instance({wp(0, {wo(120, {b1t})}), wp(1, {wo(60, {b1t})})},
                         {tech(0, Certification::B1Technician)},
                         {aircraft("AC00", 0, 480, {0, 0, 0, 0}), aircraft("AC01", 0, 60, {1})});
    InstanceLayout layout(inst);
    DecodeContext ctx(layout, /*single_shift=*/true);
    const auto schedule = decode(ctx, first_choice_chromosome(layout));
    ASSERT_EQ(schedule.uncovered.size(), 1u);
    EXPECT_EQ(layout.pairing(schedule.uncovered[0].pairing).aircraft_ref, 1);
    EXPECT_EQ(schedule.bookings[0].size(), 4u);
    const auto report = evaluate(schedule, layout, 1, 10);
    EXPECT_EQ(report.w, 1);
    EXPECT_TRUE(check_schedule(schedule, layout, /*single_shift=*/true).empty());
}

TEST(Decoder, ContentionShiftsSecondBookingAndMatchesOracle) {
    const CertSet b1t{Certification::B1Technician};
    auto inst = instance({wp(0, {wo(60, {b1t})})}, {tech(0, Certification::B1Technician)},
                         {aircraft("AC00", 0, 120, {0}), aircraft("AC01", 0, 120, {0})});
    InstanceLayout layout(inst);
    DecodeContext ctx(layout);
    const auto schedule = decode(ctx, first_choice_chromosome(layout));
    EXPECT_TRUE(schedule.uncovered.empty());
    ASSERT_EQ(schedule.bookings[0].size(), 2u);
    EXPECT_EQ(schedule.bookings[0][0].time, (Interval{0, 60}));
    EXPECT_EQ(schedule.bookings[0][1].time, (Interval{60, 120}));
    const auto report = evaluate(schedule, layout, 1, 10);
    EXPECT_EQ(report.fitness, 0);

    const auto oracle = brute_force_solve(inst);
    EXPECT_EQ(oracle.optimal_penalty, 0);
    EXPECT_EQ(report.fitness, oracle.optimal_penalty);
}

TEST(Decoder, WholeWoShiftsWhenALaterSlotNeedsIt) {
    const CertSet either{Certification::B1Technician, Certification::B2Technician};
    auto inst = instance({wp(0, {wo(60, {either, either})})},
                         {tech(0, Certification::B1Technician, 0),
                          tech(1, Certification::B2Technician, 60)},
                         {aircraft("AC00", 0, 120, {0})});
    InstanceLayout layout(inst);
    DecodeContext ctx(layout);
    Chromosome chrom = first_choice_chromosome(layout);
    chrom.techs = {0, 1};
    const auto schedule = decode(ctx, chrom);
    EXPECT_TRUE(schedule.uncovered.empty());
    EXPECT_EQ(schedule.wo_times[0], (Interval{60, 120}));
    ASSERT_EQ(schedule.bookings[0].size(), 1u);
    EXPECT_EQ(schedule.bookings[0][0].time, (Interval{60, 120})) << "committed booking must move";
    EXPECT_TRUE(check_schedule(schedule, layout).empty());
}

TEST(Decoder, DuplicateTechnicianWithinOneWoIsUncovered) {
    const CertSet either{Certification::B1Technician, Certification::B2Technician};
    auto inst = instance({wp(0, {wo(60, {either, either})})},
                         {tech(0, Certification::B1Technician), tech(1, Certification::B2Technician)},
                         {aircraft("AC00", 0, 120, {0})});
    InstanceLayout layout(inst);
    DecodeContext ctx(layout);
    Chromosome chrom = first_choice_chromosome(layout);
    chrom.techs = {0, 0};
    const auto schedule = decode(ctx, chrom);
    ASSERT_EQ(schedule.uncovered.size(), 1u);
    EXPECT_EQ(schedule.uncovered[0].slot_index, 1);
    EXPECT_TRUE(check_schedule(schedule, layout).empty());
}

TEST(Decoder, PureFunctionOfItsInputs) {
    Rng rng(314);
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = random_small_instance(rng);
        InstanceLayout layout(inst);
        DecodeContext ctx(layout);
        const auto chrom = random_chromosome(layout, rng);
        const auto a = decode(ctx, chrom);
        const auto b = decode(ctx, chrom);
        EXPECT_EQ(a, b);
    }
}

TEST(Decoder, RandomSchedulesPassIndependentVerification) {
    Rng rng(2718);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = random_small_instance(rng);
        InstanceLayout layout(inst);
        DecodeContext ctx(layout);
        const auto chrom = random_chromosome(layout, rng);
        const auto schedule = decode(ctx, chrom);
        const auto violations = check_schedule(schedule, layout);
        EXPECT_TRUE(violations.empty())
            << "trial " << trial << ": " << violations.front().message;
    }
}

TEST(CheckSchedule, DetectsDoubleBooking) {
    const CertSet b1t{Certification::B1Technician};
    auto inst = instance({wp(0, {wo(60, {b1t})})}, {tech(0, Certification::B1Technician)},
                         {aircraft("AC00", 0, 120, {0}), aircraft("AC01", 0, 120, {0})});
    InstanceLayout layout(inst);
    DecodeContext ctx(layout);
    auto schedule = decode(ctx, first_choice_chromosome(layout));
    // Drag tech 0's second booking back on top of the first.
    ASSERT_EQ(schedule.bookings[0].size(), 2u);
    schedule.bookings[0][1].time = schedule.bookings[0][0].time;
    const auto violations = check_schedule(schedule, layout);
    EXPECT_TRUE(std::any_of(violations.begin(), violations.end(), [](const auto& v) {
        return v.kind == ScheduleViolation::Kind::DoubleBooking;
    }));
}

TEST(CheckSchedule, DetectsSequencingViolation) {
    auto inst = instance({wp(0, {wo(30, {any_cert()}), wo(40, {any_cert()})})},
                         {tech(0, Certification::B1Technician), tech(1, Certification::B2Technician)},
                         {aircraft("AC00", 0, 140, {0})});
    InstanceLayout layout(inst);
    DecodeContext ctx(layout);
    auto schedule = decode(ctx, first_choice_chromosome(layout));
    schedule.wo_times[1] = {10, 50}; // starts before wo0 ends
    const auto violations = check_schedule(schedule, layout);
    EXPECT_TRUE(std::any_of(violations.begin(), violations.end(), [](const auto& v) {
        return v.kind == ScheduleViolation::Kind::Sequencing;
    }));
}

TEST(Evaluate, PenaltyArithmeticIsExact) {
    auto inst = instance({wp(0, {wo(60, {any_cert()})})}, {tech(0, Certification::B1Technician)},
                         {aircraft("AC00", 0, 120, {0})});
    InstanceLayout layout(inst);
    DecodeContext ctx(layout);
    auto schedule = decode(ctx, first_choice_chromosome(layout));

    auto report = evaluate(schedule, layout, 1, 10);
    EXPECT_EQ(report.fitness, 0);
    EXPECT_EQ(report.w, 0);
    EXPECT_EQ(report.l, 0);

    schedule.uncovered.push_back({0, 0, 0});
    schedule.uncovered.push_back({0, 0, 0});
    schedule.wo_times[0] = {100, 160}; // ends past departure 120
    report = evaluate(schedule, layout, 1, 10);
    EXPECT_EQ(report.w, 2);
    EXPECT_EQ(report.l, 1);
    EXPECT_EQ(report.fitness, 12);

    schedule.uncovered.push_back({0, 0, 0});
    schedule.wo_times[0] = {0, 60};
    report = evaluate(schedule, layout, 1, 10);
    EXPECT_EQ(report.w, 3);
    EXPECT_EQ(report.l, 0);
    EXPECT_EQ(report.fitness, 3);
}

TEST(Evaluate, MonotoneAndLinearInPenalties) {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const auto inst = random_small_instance(rng);
        InstanceLayout layout(inst);
        DecodeContext ctx(layout);
        const auto schedule = decode(ctx, random_chromosome(layout, rng));
        const auto base = evaluate(schedule, layout, 1, 10);
        const auto heavier = evaluate(schedule, layout, 1, 20);
        EXPECT_GE(heavier.fitness, base.fitness);
        for (int wp_pen : {1, 2, 5}) {
            for (int lp_pen : {10, 20}) {
                const auto r = evaluate(schedule, layout, wp_pen, lp_pen);
                EXPECT_EQ(r.fitness, static_cast<long long>(r.w) * wp_pen +
                                         static_cast<long long>(r.l) * lp_pen);
                EXPECT_EQ(r.fitness == 0, r.w == 0 && r.l == 0);
            }
        }
    }
}
