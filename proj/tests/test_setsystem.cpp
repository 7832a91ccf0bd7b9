#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "brute.hpp"
#include "sepfam/linear_select.hpp"
#include "sepfam/setsystem.hpp"

using namespace sepfam;

namespace {

SetFamily full_family(int n) {
    std::vector<Mask> all;
    for (Mask a = 0; a < (Mask(1) << n); ++a) all.push_back(a);
    return SetFamily(GroundSet(n), all);
}

std::multiset<std::vector<int>> block_set(const Partition& p) {
    return {p.blocks.begin(), p.blocks.end()};
}

}  // namespace

TEST_CASE("set family validates members") {
    CHECK_THROWS_AS(SetFamily(GroundSet(2), {0x4}), std::invalid_argument);
    CHECK_THROWS_AS(SetFamily(GroundSet(2), {0x1, 0x1}), std::invalid_argument);
    const SetFamily f(GroundSet(2), {0x1, 0x2});
    CHECK(f.size() == 2);
}

TEST_CASE("separates is exact membership difference") {
    const Mask a = mask_of({0, 2});
    CHECK(separates(a, 0, 1));
    CHECK_FALSE(separates(a, 0, 2));
    CHECK_FALSE(separates(0, 0, 1));
    CHECK_FALSE(separates(0, 2, 3));
    // complement invariance
    const GroundSet g(5);
    for (Mask m : {Mask(0x3), Mask(0x15), Mask(0x1f)})
        for (int x = 0; x < 5; ++x)
            for (int y = x + 1; y < 5; ++y)
                CHECK(separates(m, x, y) == separates(g.full_mask() ^ m, x, y));
}

TEST_CASE("refine splits blocks in place") {
    const GroundSet g(4);
    const Partition p = Partition::single_block(4);
    const Partition q = refine(p, mask_of({0, 1}));
    CHECK(q.blocks == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
    // no block cut -> unchanged
    CHECK(refine(q, mask_of({0, 1})).blocks == q.blocks);
    // cross cut -> singletons
    const Partition r = refine(q, mask_of({0, 2}));
    CHECK(r.blocks == std::vector<std::vector<int>>{{0}, {1}, {2}, {3}});
    // idempotence
    for (Mask a = 0; a < 16; ++a) {
        const Partition once = refine(p, a);
        CHECK(refine(once, a).blocks == once.blocks);
    }
}

TEST_CASE("partition_by folds refine and ignores order") {
    const Partition p = Partition::single_block(3);
    CHECK(partition_by({}, p).blocks == p.blocks);
    CHECK(partition_by({mask_of({1}), mask_of({2})}, p).max_block() == 1);

    const Partition whole = Partition::single_block(4);
    CHECK(block_set(partition_by({mask_of({0, 1})}, whole)) ==
          block_set(partition_by({mask_of({2, 3})}, whole)));

    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Mask> fam;
        for (int i = 0; i < 5; ++i) fam.push_back(Mask(rng()) & 0x3f);
        std::vector<Mask> shuffled = fam;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const Partition base = Partition::single_block(6);
        CHECK(block_set(partition_by(fam, base)) == block_set(partition_by(shuffled, base)));
    }
}

TEST_CASE("symmetric difference closure never coarsens") {
    // partition_by([a, a+b]) refines at least as much as partition_by([b])
    std::mt19937 rng(11);
    const Partition base = Partition::single_block(6);
    for (int trial = 0; trial < 50; ++trial) {
        const Mask a = Mask(rng()) & 0x3f, b = Mask(rng()) & 0x3f;
        const Partition fine = partition_by({a, Mask(a ^ b)}, base);
        const Partition coarse = partition_by({b}, base);
        for (const auto& fblk : fine.blocks) {
            const Mask fmask = mask_of(fblk);
            bool inside_some = false;
            for (const auto& cblk : coarse.blocks)
                if ((fmask & ~mask_of(cblk)) == 0) { inside_some = true; break; }
            CHECK(inside_some);
        }
    }
}

TEST_CASE("separated pairs within blocks") {
    {
        SeparationInstance inst;
        inst.family = SetFamily(GroundSet(2), {0});
        inst.parts = Partition::single_block(2);
        CHECK(separated_pairs(inst).empty());
    }
    {
        SeparationInstance inst;
        inst.family = full_family(3);
        inst.parts = Partition::single_block(3);
        CHECK(separated_pairs(inst) ==
              std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
    }
    {
        SeparationInstance inst;
        inst.family = SetFamily(GroundSet(3), {mask_of({0})});
        inst.parts = Partition::single_block(3);
        CHECK(separated_pairs(inst) == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});
    }
}

TEST_CASE("is_separating with witness") {
    SeparationInstance inst;
    inst.family = full_family(4);
    inst.parts = Partition::single_block(4);
    const std::vector<Mask> singletons{0x1, 0x2, 0x4, 0x8};
    CHECK(is_separating(singletons, inst, Scope::AllPairs).ok);

    SeparationInstance pairblock;
    pairblock.family = SetFamily(GroundSet(2), {0x3});
    pairblock.parts = Partition::single_block(2);
    const auto check = is_separating({0x3}, pairblock, Scope::AllPairs);
    CHECK_FALSE(check.ok);
    CHECK(check.witness == std::pair<int, int>{0, 1});

    // the tightness instance's full family separates everything in scope
    const SeparationInstance tight = gen_logp1_tight(2);
    CHECK(is_separating(tight.family.members, tight, Scope::AllPairs).ok);
}

TEST_CASE("density is exact") {
    CHECK(full_family(3).density() == Rat(1));
    CHECK(SetFamily(GroundSet(3), {0}).density() == Rat(1, 8));
    CHECK(gen_logp1_tight(2).family.density() == Rat(12, 16));
    // complement sums to one
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        std::set<Mask> pick;
        const int count = int(rng() % 17);
        while (int(pick.size()) < count) pick.insert(Mask(rng()) & 0xf);
        const SetFamily f(GroundSet(4), {pick.begin(), pick.end()});
        CHECK(f.density() + f.complement().density() == Rat(1));
    }
}

TEST_CASE("partition canonical form") {
    const GroundSet g(6);
    const Partition p = Partition::of_blocks({{4, 2}, {0, 1}}, g);
    CHECK(p.blocks == std::vector<std::vector<int>>{{0, 1}, {2, 4}});
    CHECK(p.max_block() == 2);
    CHECK_FALSE(p.is_atomic());
    CHECK(p.block_mask(1) == mask_of({2, 4}));
    CHECK_THROWS_AS(Partition::of_blocks({{0}, {0}}, g), std::invalid_argument);
    CHECK_THROWS_AS(Partition::of_blocks({{}}, g), std::invalid_argument);
    CHECK_THROWS_AS(Partition::of_blocks({{6}}, g), std::invalid_argument);
}

TEST_CASE("seeded random families are deterministic with exact size") {
    const SeparationInstance a = gen_random_family(10, Rat(3, 4), 7);
    CHECK(a.family.size() == 768);
    CHECK(a.family.ground.n == 10);
    const SeparationInstance b = gen_random_family(10, Rat(3, 4), 7);
    CHECK(a.family.members == b.family.members);
    const SeparationInstance c = gen_random_family(10, Rat(3, 4), 8);
    CHECK(a.family.members != c.family.members);

    // ceil rounding, members distinct and sorted
    const SeparationInstance d = gen_random_family(5, Rat(1, 3), 1);
    CHECK(d.family.size() == 11);  // ceil(32/3)
    CHECK(std::is_sorted(d.family.members.begin(), d.family.members.end()));

    // block splitting: near-equal contiguous blocks
    const SeparationInstance e = gen_random_family(10, Rat(1, 2), 2, 4);
    CHECK(e.parts.blocks.size() == 4);
    int covered = 0;
    for (const auto& blk : e.parts.blocks) {
        CHECK((int(blk.size()) == 2 || int(blk.size()) == 3));
        covered += int(blk.size());
    }
    CHECK(covered == 10);

    CHECK(gen_random_family(4, Rat(1), 0).family.size() == 16);
    CHECK(gen_random_family(4, Rat(0), 0).family.size() == 0);
    CHECK_THROWS_AS(gen_random_family(4, Rat(3, 2), 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_random_family(4, Rat(1, 2), 0, 5), std::invalid_argument);
}
