#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "sepfam/phased_select.hpp"
#include "sepfam/rational.hpp"
#include "sepfam/setsystem.hpp"

using namespace sepfam;

namespace {

SetFamily full_family(int n) {
    std::vector<Mask> members;
    members.reserve(std::size_t(1) << n);
    for (Mask a = 0; a < (Mask(1) << n); ++a) members.push_back(a);
    return SetFamily(GroundSet(n), std::move(members));
}

bool all_members(const std::vector<Mask>& sel, const SetFamily& f) {
    return std::all_of(sel.begin(), sel.end(), [&](Mask a) {
        return std::find(f.members.begin(), f.members.end(), a) != f.members.end();
    });
}

std::vector<std::pair<int, int>> pairs_of(const std::vector<Mask>& fam,
                                          const SeparationInstance& base) {
    SeparationInstance probe;
    probe.family = SetFamily(base.family.ground, fam);
    probe.parts = base.parts;
    return separated_pairs(probe);
}

}  // namespace

TEST_CASE("cuts_well compares the intersection against quarter bounds exactly") {
    const Mask y4 = mask_of({0, 1, 2, 3});
    CHECK(cuts_well(mask_of({0, 1}), y4));          // 2 in [1, 3]
    CHECK_FALSE(cuts_well(0, y4));                   // 0 misses the lower bound
    CHECK(cuts_well(mask_of({3}), y4));              // 1 hits the lower boundary
    CHECK(cuts_well(mask_of({0, 1, 2}), y4));        // 3 hits the upper boundary
    CHECK_FALSE(cuts_well(y4, y4));                  // 4 > 3
    CHECK(cuts_well(mask_of({1}), mask_of({1, 5}))); // 1 in [1/2, 3/2]
    // extra bits outside y never matter
    CHECK(cuts_well(mask_of({1, 9, 12}), mask_of({1, 5})));
    // singleton blocks are never cut well: 0 and 1 both fall outside [1/4, 3/4]
    CHECK_FALSE(cuts_well(0, mask_of({2})));
    CHECK_FALSE(cuts_well(mask_of({2}), mask_of({2})));
    // |y| = 8 has the inclusive window [2, 6]
    const Mask y8 = mask_of({0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(cuts_well(mask_of({0, 1}), y8));
    CHECK_FALSE(cuts_well(mask_of({0}), y8));
    CHECK(cuts_well(mask_of({0, 1, 2, 3, 4, 5}), y8));
    CHECK_FALSE(cuts_well(mask_of({0, 1, 2, 3, 4, 5, 6}), y8));
    CHECK_THROWS_AS(cuts_well(mask_of({0}), 0), std::invalid_argument);
}

TEST_CASE("non-well-cutting fraction of an m-set is at most min(1/2, 2^(-m/10))") {
    for (int m = 2; m <= 12; ++m) {
        const Mask y = (Mask(1) << m) - 1;
        long long bad = 0;
        for (Mask s = 0; s < (Mask(1) << m); ++s)
            if (!cuts_well(s, y)) ++bad;
        // fraction <= 1/2  <=>  2 * bad <= 2^m
        CHECK(Int(2) * bad <= pow2(unsigned(m)));
        // fraction <= 2^(-m/10)  <=>  bad^10 <= 2^(9m), all integers
        Int power = 1;
        for (int i = 0; i < 10; ++i) power *= bad;
        CHECK(power <= pow2(unsigned(9 * m)));
    }
}

TEST_CASE("union cover returns the first small subfamily covering the ground") {
    {
        const std::vector<Mask> fprime = {mask_of({0, 1}), mask_of({0, 1, 2})};
        const auto cover = brace_daykin_cover(3, fprime, 1);
        REQUIRE(cover.has_value());
        CHECK(*cover == std::vector<Mask>{mask_of({0, 1, 2})});
    }
    {
        const std::vector<Mask> fprime = {mask_of({0}), mask_of({1})};
        const auto cover = brace_daykin_cover(2, fprime, 2);
        REQUIRE(cover.has_value());
        CHECK(*cover == std::vector<Mask>{mask_of({0}), mask_of({1})});
        // budget 1 is too small and reports not-found
        CHECK_FALSE(brace_daykin_cover(2, fprime, 1).has_value());
    }
    // union short of the ground set violates the precondition outright
    CHECK_THROWS_AS(brace_daykin_cover(2, {mask_of({0})}, 3), std::invalid_argument);
}

TEST_CASE("density above (t+2)/2^(t+1) guarantees a cover of size t") {
    // |Y| = 8, 160 of 256 subsets gives density 5/8 > (2+2)/2^3 = 1/2.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::vector<Mask> all(256);
        std::iota(all.begin(), all.end(), Mask(0));
        std::mt19937_64 rng(seed);
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<Mask> fprime(all.begin(), all.begin() + 160);
        const auto cover = brace_daykin_cover(8, fprime, 2);
        REQUIRE(cover.has_value());
        CHECK(cover->size() <= 2);
        Mask unioned = 0;
        for (Mask a : *cover) {
            unioned |= a;
            CHECK(std::find(fprime.begin(), fprime.end(), a) != fprime.end());
        }
        CHECK(unioned == Mask(0xff));
    }
}

TEST_CASE("halving phase is a no-op when blocks are already under its threshold") {
    // density 1/4 means the threshold is max(2, ceil(10 * log2(4))) = 20 >= 6
    const SeparationInstance inst = gen_random_family(6, Rat(1, 4), 3);
    const PhaseOutcome out = phase2_select(inst.family, inst.parts);
    CHECK(out.selected.empty());
    CHECK(out.parts == inst.parts);
    CHECK_FALSE(out.stalled);
}

TEST_CASE("halving phase drives the full family's single block down to pairs") {
    const SetFamily f = full_family(16);
    const PhaseOutcome out = phase2_select(f, Partition::single_block(16));
    CHECK_FALSE(out.stalled);
    // density 1 gives threshold 2; every round multiplies the max block by <= 3/4,
    // so 16 -> 12 -> 9 -> 6 -> 4 -> 3 -> 2 takes at most 6 rounds of 2 picks each
    CHECK(out.parts.max_block() <= 2);
    CHECK(out.selected.size() >= 2);
    CHECK(out.selected.size() <= 12);
    CHECK(all_members(out.selected, f));
}

TEST_CASE("halving phase picks actual members on a dense but incomplete family") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        std::vector<Mask> all(4096);
        std::iota(all.begin(), all.end(), Mask(0));
        std::mt19937_64 rng(seed);
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(3996);  // drop 100 random masks; density stays near 1
        const SetFamily f(GroundSet(12), all);
        const PhaseOutcome out = phase2_select(f, Partition::single_block(12));
        CHECK_FALSE(out.stalled);
        CHECK(out.parts.max_block() <= 2);
        // 12 -> 9 -> 6 -> 4 -> 3 -> 2 is at most 5 rounds
        CHECK(out.selected.size() <= 10);
        CHECK(all_members(out.selected, f));
    }
}

TEST_CASE("union-cover phase selects nothing when every block is a singleton") {
    const SetFamily f = full_family(6);
    std::vector<std::vector<int>> singles;
    for (int e = 0; e < 6; ++e) singles.push_back({e});
    const Partition atomic = Partition::of_blocks(singles, f.ground);
    const Phase3Outcome out = phase3_select(f, atomic);
    CHECK(out.selected.empty());
    CHECK(out.parts == atomic);
    CHECK_FALSE(out.stalled);
}

TEST_CASE("union-cover phase on the full family has no bad blocks and shrinks the block") {
    const SetFamily f = full_family(8);
    const Phase3Outcome out = phase3_select(f, Partition::single_block(8));
    CHECK_FALSE(out.stalled);
    // density 1 runs exactly one round
    REQUIRE(out.rounds.size() == 1);
    const GoodBadReport& r = out.rounds.front();
    CHECK(r.bad_ids.empty());
    REQUIRE(r.good_ids == std::vector<int>{0});
    CHECK(r.ground_size == 1);
    // the projection of the full family realizes every pattern on the good blocks
    CHECK(r.image_count == 2);
    REQUIRE(r.well_tables.size() == 1);
    const auto& table = r.well_tables.front().second;
    CHECK(table.size() == 128);  // exactly half of the block's 2^8 subsets
    const Mask block = mask_of({0, 1, 2, 3, 4, 5, 6, 7});
    for (Mask b : table) {
        CHECK((b & ~block) == 0);
        CHECK(cuts_well(b, block));
    }
    CHECK(out.parts.max_block() <= 6);  // one round caps the block at 3*8/4
    CHECK(out.selected.size() <= 2);    // cover budget for density 1 is t = 2
    CHECK(all_members(out.selected, f));
}

TEST_CASE("union-cover phase preserves density under projection and honors table shape") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const SeparationInstance inst = gen_random_family(10, Rat(1, 4), seed);
        const SetFamily& f = inst.family;
        const Phase3Outcome out = phase3_select(f, inst.parts);
        CHECK_FALSE(out.stalled);
        CHECK(out.parts.max_block() <= inst.parts.max_block());
        CHECK(all_members(out.selected, f));
        for (const GoodBadReport& r : out.rounds) {
            CHECK(r.ground_size == int(r.good_ids.size()));
            // good and bad blocks never overlap
            for (int g : r.good_ids)
                CHECK(std::find(r.bad_ids.begin(), r.bad_ids.end(), g) == r.bad_ids.end());
            if (r.ground_size > 0) {
                // the projection takes every value equally often, so its density
                // is at least the family's
                CHECK(Rat(Int(r.image_count), pow2(unsigned(r.ground_size))) >= f.density());
            }
        }
        // only the first round's block positions refer to the input partition,
        // so the per-block table shape is checked there
        REQUIRE(!out.rounds.empty());
        const GoodBadReport& first = out.rounds.front();
        for (const auto& [pos, table] : first.well_tables) {
            REQUIRE(pos >= 0);
            REQUIRE(pos < int(inst.parts.blocks.size()));
            const Mask block = mask_of(inst.parts.blocks[std::size_t(pos)]);
            // exactly half of the block's subsets, all distinct, all cutting it
            // well, at least one being the trace of an actual member
            CHECK(Int(table.size()) == pow2(unsigned(popcount(block) - 1)));
            std::set<Mask> distinct(table.begin(), table.end());
            CHECK(distinct.size() == table.size());
            bool witnessed = false;
            for (Mask b : table) {
                CHECK((b & ~block) == 0);
                CHECK(cuts_well(b, block));
            }
            for (Mask a : f.members)
                if (distinct.count(a & block)) {
                    witnessed = true;
                    break;
                }
            CHECK(witnessed);
        }
    }
}

TEST_CASE("greedy completion is empty on an atomic partition") {
    const SetFamily f = full_family(5);
    std::vector<std::vector<int>> singles;
    for (int e = 0; e < 5; ++e) singles.push_back({e});
    const Partition atomic = Partition::of_blocks(singles, f.ground);
    const PhaseOutcome out = phase4_select(f, atomic);
    CHECK(out.selected.empty());
    CHECK(out.parts == atomic);
}

TEST_CASE("greedy completion splits a block with the only available member") {
    const SetFamily f(GroundSet(3), {mask_of({0})});
    const PhaseOutcome out = phase4_select(f, Partition::single_block(3));
    CHECK(out.selected == std::vector<Mask>{mask_of({0})});
    CHECK(out.parts == Partition::of_blocks({{0}, {1, 2}}, f.ground));
}

TEST_CASE("greedy completion always reaches the full-family refinement") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const SeparationInstance inst = gen_random_family(9, Rat(1, 8), seed, 1 + int(seed % 3));
        const PhaseOutcome out = phase4_select(inst.family, inst.parts);
        CHECK(out.parts == partition_by(inst.family.members, inst.parts));
        CHECK(all_members(out.selected, inst.family));
        const PhaseOutcome again = phase4_select(inst.family, inst.parts);
        CHECK(again.selected == out.selected);  // deterministic least-member rule
    }
}

TEST_CASE("pipeline on a dense family finishes inside the coset phase") {
    const SeparationInstance inst = gen_random_family(8, Rat(5, 8), 11);
    const PipelineResult res = select_logpalpha(inst);
    CHECK_FALSE(res.stalled);
    REQUIRE(res.trace.entries.size() == 4);
    CHECK(res.trace.entries[0].phase == "coset-basis");
    CHECK(res.trace.entries[1].phase == "coset-halving");
    CHECK(res.trace.entries[2].phase == "union-cover");
    CHECK(res.trace.entries[3].phase == "greedy-completion");
    // density above 1/2 forces singleton blocks after the coset phase
    CHECK(res.trace.entries[0].max_block_after <= 1);
    for (std::size_t i = 1; i < 4; ++i) CHECK(res.trace.entries[i].selected.empty());
    CHECK(is_separating(res.subfamily, inst, Scope::FamilySeparated).ok);
}

TEST_CASE("pipeline separates exactly what the family separates") {
    // Members either avoid Y = {0,1,2} or contain it, so pairs inside Y are
    // inseparable while every other pair is separated.
    const GroundSet g(8);
    const Mask y = mask_of({0, 1, 2});
    std::vector<Mask> members;
    for (Mask a = 0; a < (Mask(1) << 8); ++a)
        if ((a & y) == 0 || (a & y) == y) members.push_back(a);
    SeparationInstance inst;
    inst.family = SetFamily(g, members);
    inst.parts = Partition::single_block(8);
    REQUIRE(inst.family.members.size() == 64);

    const PipelineResult res = select_logpalpha(inst);
    CHECK_FALSE(res.stalled);
    const auto want = separated_pairs(inst);
    const auto got = pairs_of(res.subfamily, inst);
    CHECK(got == want);
    CHECK(want.size() == 25);  // all 28 pairs except the 3 inside Y
    for (const auto& pr : want) CHECK_FALSE(pr.second <= 2);
}

TEST_CASE("pipeline handles the lone empty set") {
    SeparationInstance inst;
    inst.family = SetFamily(GroundSet(4), {Mask(0)});
    inst.parts = Partition::single_block(4);
    CHECK(separated_pairs(inst).empty());
    const PipelineResult res = select_logpalpha(inst);
    CHECK_FALSE(res.stalled);
    CHECK(res.subfamily.size() <= 1);
    CHECK(res.final_parts == inst.parts);
    CHECK(is_separating(res.subfamily, inst, Scope::FamilySeparated).ok);
}

TEST_CASE("pipeline rejects an empty family") {
    SeparationInstance inst;
    inst.family = SetFamily(GroundSet(3), {});
    inst.parts = Partition::single_block(3);
    CHECK_THROWS_AS(select_logpalpha(inst), std::invalid_argument);
}

TEST_CASE("pipeline trace obeys its structural invariants on random instances") {
    const Rat quarter(1, 4), eighth(1, 8);
    int instance = 0;
    for (int n : {10, 12, 14}) {
        for (const Rat& alpha : {quarter, eighth}) {
            const int blocks = 1 + (instance % 3);
            const SeparationInstance inst = gen_random_family(n, alpha, 90 + instance, blocks);
            ++instance;
            const PipelineResult res = select_logpalpha(inst);
            CHECK_FALSE(res.stalled);

            // outputs are distinct members of the family
            std::set<Mask> distinct(res.subfamily.begin(), res.subfamily.end());
            CHECK(distinct.size() == res.subfamily.size());
            CHECK(all_members(res.subfamily, inst.family));

            // separation is exact in both directions
            CHECK(is_separating(res.subfamily, inst, Scope::FamilySeparated).ok);
            CHECK(pairs_of(res.subfamily, inst) == separated_pairs(inst));
            CHECK(res.final_parts == partition_by(inst.family.members, inst.parts));

            // trace bookkeeping
            REQUIRE(res.trace.entries.size() == 4);
            CHECK(res.trace.initial_max_block == inst.parts.max_block());
            int prev_max = res.trace.initial_max_block;
            std::size_t prev_cum = 0;
            for (const PhaseTraceEntry& e : res.trace.entries) {
                CHECK(e.max_block_before == prev_max);
                CHECK(e.max_block_after <= e.max_block_before);
                CHECK(e.cumulative_selected >= prev_cum);
                int total = 0, maxsz = 0;
                for (const auto& [size, count] : e.block_histogram) {
                    total += size * count;
                    maxsz = std::max(maxsz, size);
                }
                CHECK(total == n);
                CHECK(maxsz == e.max_block_after);
                const double expect_loss =
                    double(e.cumulative_selected) -
                    std::log2(double(res.trace.initial_max_block) / double(e.max_block_after));
                CHECK(std::abs(e.loss - expect_loss) < 1e-9);
                prev_max = e.max_block_after;
                prev_cum = e.cumulative_selected;
            }
            CHECK(res.trace.entries.back().cumulative_selected == res.subfamily.size());

            // phase caps: coset phase caps blocks at 1/alpha, halving at its threshold
            const double inv_alpha = 1.0 / alpha.convert_to<double>();
            CHECK(double(res.trace.entries[0].max_block_after) <= inv_alpha + 1e-12);
            const double l = std::log2(inv_alpha);
            const int t2 = std::max(2, int(std::ceil(10.0 * l)));
            CHECK(res.trace.entries[1].max_block_after <= std::max(res.trace.entries[0].max_block_after, t2));

            // overall size bound with the engineering constant 40
            const double budget =
                std::ceil(std::log2(double(n))) + 40.0 * (1.0 + l) * (1.0 + std::log2(1.0 + l));
            CHECK(double(res.subfamily.size()) <= budget);

            // rerunning is deterministic
            CHECK(select_logpalpha(inst).subfamily == res.subfamily);
        }
    }
}
