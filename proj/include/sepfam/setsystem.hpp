// Set families over small ground sets and the partition-refinement
// vocabulary shared by every selection algorithm: a family member "separates"
// a pair when it contains exactly one of the two elements, and a subfamily
// refines a partition by repeatedly splitting blocks.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sepfam/masks.hpp"
#include "sepfam/rational.hpp"

namespace sepfam {

// Family of distinct subsets; member order is meaningful (witnesses are
// reported as indices into it).
struct SetFamily {
    GroundSet ground;
    std::vector<Mask> members;

    SetFamily() = default;
    SetFamily(GroundSet g, std::vector<Mask> m);

    [[nodiscard]] size_t size() const { return members.size(); }
    // |members| / 2^n as an exact rational.
    [[nodiscard]] Rat density() const;
    [[nodiscard]] SetFamily complement() const;
};

// Blocks cover a designated subset of the ground set; each block is sorted
// ascending and blocks are kept sorted by their minimum element.
struct Partition {
    std::vector<std::vector<int>> blocks;

    static Partition single_block(int n);
    static Partition of_blocks(std::vector<std::vector<int>> blocks, const GroundSet& ground);

    [[nodiscard]] int max_block() const;
    [[nodiscard]] bool is_atomic() const { return max_block() <= 1; }
    [[nodiscard]] Mask block_mask(size_t i) const { return mask_of(blocks[i]); }
    bool operator==(const Partition&) const = default;

    void canonicalize();
};

struct SeparationInstance {
    SetFamily family;
    Partition parts;

    SeparationInstance() = default;
    SeparationInstance(SetFamily f, Partition p);
};

enum class Scope { AllPairs, FamilySeparated };

struct SeparationCheck {
    bool ok = true;
    std::optional<std::pair<int, int>> witness;  // an unseparated in-scope pair
};

// True iff a contains exactly one of x, y.
inline bool separates(Mask a, int x, int y) { return test_bit(a, x) != test_bit(a, y); }

// Split every block of p into its intersection with a and the rest.
Partition refine(const Partition& p, Mask a);

// Fold refine over the family; the result depends only on the set of masks.
Partition partition_by(const std::vector<Mask>& family, const Partition& initial);

// Unordered within-block pairs separated by at least one family member,
// sorted ascending.
std::vector<std::pair<int, int>> separated_pairs(const SeparationInstance& inst);

// Does fam separate every in-scope pair? Scope AllPairs takes all
// within-block pairs; FamilySeparated only the pairs inst.family separates.
SeparationCheck is_separating(const std::vector<Mask>& fam, const SeparationInstance& inst, Scope scope);

// Deterministic seeded family of ceil(density * 2^n) distinct masks, members
// ascending, with the ground split into `blocks` near-equal contiguous
// blocks. Above half density the complement is sampled instead, so the draw
// count stays below 2^(n-1).
SeparationInstance gen_random_family(int n, const Rat& density, std::uint64_t seed, int blocks = 1);

}  // namespace sepfam
