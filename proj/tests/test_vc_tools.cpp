#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "sepfam/oracle.hpp"
#include "sepfam/setsystem.hpp"
#include "sepfam/vc_tools.hpp"
#include "brute.hpp"

using namespace sepfam;

namespace {

SetFamily full_family(int n) {
    std::vector<Mask> members;
    for (Mask a = 0; a < (Mask(1) << n); ++a) members.push_back(a);
    return SetFamily(GroundSet(n), std::move(members));
}

SetFamily singletons(int n) {
    std::vector<Mask> members;
    for (int e = 0; e < n; ++e) members.push_back(Mask(1u) << e);
    return SetFamily(GroundSet(n), std::move(members));
}

// All nonempty contiguous ranges {i..j}.
SetFamily intervals(int n) {
    std::vector<Mask> members;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Mask a = 0;
            for (int e = i; e <= j; ++e) a |= Mask(1u) << e;
            members.push_back(a);
        }
    return SetFamily(GroundSet(n), std::move(members));
}

bool pattern_unrealized(const SetFamily& f, const TypeAssignment& t) {
    Mask target = 0;
    const Mask amask = mask_of(t.elements);
    for (std::size_t p = 0; p < t.elements.size(); ++p)
        if ((t.pattern_mask >> p) & 1u) target |= Mask(1u) << t.elements[p];
    return std::none_of(f.members.begin(), f.members.end(),
                        [&](Mask m) { return (m & amask) == target; });
}

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

TEST_CASE("vc dimension of the canonical families") {
    {
        const VCReport r = vc_dimension(singletons(4));
        CHECK(r.dimension == 1);
        CHECK(r.witness == mask_of({0}));  // least shattered set of maximum size
        CHECK(brute::shattered(singletons(4).members, r.witness));
    }
    {
        const VCReport r = vc_dimension(full_family(3));
        CHECK(r.dimension == 3);
        CHECK(r.witness == mask_of({0, 1, 2}));
    }
    {
        // an interval cannot exclude the middle of a 3-set, so the dimension is 2
        const VCReport r = vc_dimension(intervals(6));
        CHECK(r.dimension == 2);
        CHECK(popcount(r.witness) == 2);
        CHECK(brute::shattered(intervals(6).members, r.witness));
    }
    CHECK_THROWS_AS(vc_dimension(SetFamily(GroundSet(3), {})), std::invalid_argument);
    CHECK_THROWS_AS(vc_dimension(SetFamily(GroundSet(21), {mask_of({20})})), SizeLimitError);
}

TEST_CASE("vc dimension matches the all-subsets scan on random families") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const SeparationInstance inst = gen_random_family(6, Rat(1, 4), 30 + seed);
        const VCReport r = vc_dimension(inst.family);
        CHECK(r.dimension == brute::vc_dimension(inst.family.members, 6));
        CHECK(popcount(r.witness) == r.dimension);
        CHECK(brute::shattered(inst.family.members, r.witness));
    }
}

TEST_CASE("shatter function values and the Sauer-Shelah bound") {
    CHECK(shatter_function(full_family(4), 2) == 4);
    CHECK(shatter_function(full_family(4), 0) == 1);
    CHECK(shatter_function(intervals(6), 3) == 7);  // C(3,0)+C(3,1)+C(3,2)
    CHECK(shatter_function(singletons(5), 2) == 3);
    CHECK_THROWS_AS(shatter_function(full_family(3), 4), std::invalid_argument);

    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const SeparationInstance inst = gen_random_family(6, Rat(1, 4), 60 + seed);
        const int d = vc_dimension(inst.family).dimension;
        for (int m = 0; m <= 6; ++m) {
            const int value = shatter_function(inst.family, m);
            CHECK(value == brute::shatter_function(inst.family.members, 6, m));
            long long sauer = 0;
            for (int i = 0; i <= d; ++i) sauer += binom(m, i);
            CHECK(value <= sauer);
        }
    }
}

TEST_CASE("vc dimension and shatter function are monotone in the family") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const SeparationInstance inst = gen_random_family(6, Rat(1, 2), seed);
        std::vector<Mask> half(inst.family.members.begin(),
                               inst.family.members.begin() + inst.family.members.size() / 2);
        const SetFamily sub(inst.family.ground, half);
        CHECK(vc_dimension(sub).dimension <= vc_dimension(inst.family).dimension);
        for (int m = 0; m <= 6; m += 2)
            CHECK(shatter_function(sub, m) <= shatter_function(inst.family, m));
    }
}

TEST_CASE("types are the least unrealized trace pattern") {
    {
        // singletons never realize the full trace of a pair; patterns {} (empty
        // member? no — the empty trace IS realized by a disjoint singleton), {1},
        // {2} are realized, so the least unrealized is {1,2} -> mask 0x3
        const auto t = type_of(singletons(4), {0, 1});
        REQUIRE(t.has_value());
        CHECK(t->elements == std::vector<int>{0, 1});
        CHECK(t->pattern_mask == 0x3);
        REQUIRE(t->regular.size() == 1);
        CHECK_FALSE(t->regular[0]);  // {1,2} separates nothing
        CHECK(pattern_unrealized(singletons(4), *t));
    }
    CHECK_FALSE(type_of(full_family(3), {0, 1}).has_value());
    {
        const SetFamily f = intervals(5);
        const auto t = type_of(f, {0, 2, 4});
        REQUIRE(t.has_value());
        // an interval containing both endpoints also contains the middle, so
        // pattern {1,3} (mask 0x5) is unrealized; the returned pattern is the
        // least unrealized one, hence at most 0x5 and itself unrealized
        TypeAssignment probe = *t;
        probe.pattern_mask = 0x5;
        CHECK(pattern_unrealized(f, probe));
        CHECK(t->pattern_mask <= 0x5);
        CHECK(pattern_unrealized(f, *t));
        // every pattern below the returned one is realized
        for (Mask below = 0; below < t->pattern_mask; ++below) {
            TypeAssignment lower = *t;
            lower.pattern_mask = below;
            CHECK_FALSE(pattern_unrealized(f, lower));
        }
    }
    CHECK_THROWS_AS(type_of(singletons(4), {}), std::invalid_argument);
    CHECK_THROWS_AS(type_of(singletons(4), {1, 0}), std::invalid_argument);
}

TEST_CASE("regular flags mark indices the pattern separates") {
    // intervals on 4: A = {0,1,2}; pattern realized-structure gives a mix
    const SetFamily f = intervals(4);
    const auto t = type_of(f, {0, 1, 2});
    if (t.has_value()) {
        REQUIRE(t->regular.size() == 2);
        for (std::size_t i = 0; i + 1 < t->elements.size(); ++i) {
            const bool in_i = (t->pattern_mask >> i) & 1u;
            const bool in_next = (t->pattern_mask >> (i + 1)) & 1u;
            CHECK(t->regular[i] == (in_i != in_next));
        }
    }
}

TEST_CASE("homogeneous subsets exist for singletons and are verified") {
    {
        const auto found = homogeneous_subset(singletons(6), 1, 4);
        REQUIRE(found.has_value());
        CHECK(popcount(*found) == 4);
        CHECK(*found == mask_of({0, 1, 2, 3}));  // first subset in ascending order
        // all pairs inside the subset carry the same pattern
        std::vector<int> elems;
        for (int e = 0; e < 6; ++e)
            if ((*found >> e) & 1u) elems.push_back(e);
        std::set<Mask> patterns;
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t j = i + 1; j < elems.size(); ++j) {
                const auto t = type_of(singletons(6), {elems[i], elems[j]});
                REQUIRE(t.has_value());
                patterns.insert(t->pattern_mask);
            }
        CHECK(patterns.size() == 1);
    }
    {
        // a (d+1)-sized target only needs one unshattered (d+1)-set
        const auto found = homogeneous_subset(intervals(6), 2, 3);
        REQUIRE(found.has_value());
        CHECK(*found == mask_of({0, 1, 2}));
    }
    // a fully shattering family assigns no types at all
    CHECK_FALSE(homogeneous_subset(full_family(4), 1, 2).has_value());
    CHECK_THROWS_AS(homogeneous_subset(singletons(4), 1, 9), SizeLimitError);
}

TEST_CASE("the consecutive-pairs family is tight for its dimension") {
    {
        const SetFamily f = gen_vc_tight_family(1, 5);
        // direct filter: masks containing 0 separating at most one pair (i, i+1)
        std::vector<Mask> expect;
        for (Mask a = 0; a < 32; ++a) {
            if (!(a & 1u)) continue;
            int alternations = 0;
            for (int i = 0; i + 1 < 5; ++i)
                if (((a >> i) & 1u) != ((a >> (i + 1)) & 1u)) ++alternations;
            if (alternations <= 1) expect.push_back(a);
        }
        CHECK(f.members == expect);
        CHECK(vc_dimension(f).dimension == 1);

        // the oracle needs (universe-1)/d members to separate everything
        SeparationInstance inst;
        inst.family = f;
        inst.parts = Partition::single_block(5);
        const SeparatorMinimum res = min_separating_subfamily(inst, Scope::AllPairs);
        REQUIRE(res.status == CoverStatus::Found);
        CHECK(res.minimum == 4);
    }
    CHECK(vc_dimension(gen_vc_tight_family(2, 6)).dimension == 2);
    {
        // d = universe - 1 leaves the alternation constraint vacuous
        const SetFamily f = gen_vc_tight_family(3, 4);
        CHECK(f.members.size() == 8);
        for (Mask a : f.members) CHECK((a & 1u) == 1u);
    }
    CHECK_THROWS_AS(gen_vc_tight_family(1, 21), SizeLimitError);
}

TEST_CASE("dual binomial families separate their subset ground set") {
    {
        const DualBinomialFamily dual = gen_dual_binomial_separator(4, 1);
        CHECK(dual.family.ground.n == 4);  // the four 1-subsets
        CHECK(dual.family.members.size() == 4);
        CHECK(dual.ground_subsets.size() == 4);
        SeparationInstance inst;
        inst.family = dual.family;
        inst.parts = Partition::single_block(4);
        CHECK(is_separating(dual.family.members, inst, Scope::AllPairs).ok);
    }
    {
        const DualBinomialFamily dual = gen_dual_binomial_separator(5, 2);
        CHECK(dual.family.ground.n == 10);  // C(5,3) ground elements
        CHECK(dual.family.members.size() == 5);
        CHECK(std::is_sorted(dual.ground_subsets.begin(), dual.ground_subsets.end()));
        for (Mask s : dual.ground_subsets) CHECK(popcount(s) == 3);
        // member y holds exactly the positions of subsets containing y
        for (int y = 0; y < 5; ++y)
            for (std::size_t pos = 0; pos < dual.ground_subsets.size(); ++pos) {
                const bool in_member = (dual.family.members[std::size_t(y)] >> pos) & 1u;
                const bool y_in_subset = (dual.ground_subsets[pos] >> y) & 1u;
                CHECK(in_member == y_in_subset);
            }
        SeparationInstance inst;
        inst.family = dual.family;
        inst.parts = Partition::single_block(10);
        CHECK(is_separating(dual.family.members, inst, Scope::AllPairs).ok);
    }
    // the dual of the (2^d - 1)-uniform system keeps its dimension at most d
    for (int m = 4; m <= 6; ++m) CHECK(vc_dimension(gen_dual_binomial_separator(m, 1).family).dimension <= 1);
    for (int m = 5; m <= 6; ++m) CHECK(vc_dimension(gen_dual_binomial_separator(m, 2).family).dimension <= 2);

    CHECK_THROWS_AS(gen_dual_binomial_separator(2, 2), std::invalid_argument);  // 3 > 2
    CHECK_THROWS_AS(gen_dual_binomial_separator(3, 2), std::invalid_argument);  // members coincide
    CHECK_THROWS_AS(gen_dual_binomial_separator(12, 2), SizeLimitError);  // C(12,3) = 220 > 30
}

TEST_CASE("separator size is bounded below by (n-1)/d") {
    {
        // intervals have dimension 2, so at least ceil((6-1)/2) = 3 members
        SeparationInstance inst;
        inst.family = intervals(6);
        inst.parts = Partition::single_block(6);
        const SeparatorMinimum res = min_separating_subfamily(inst, Scope::AllPairs);
        REQUIRE(res.status == CoverStatus::Found);
        CHECK(res.minimum * 2 >= 5);
    }
}
