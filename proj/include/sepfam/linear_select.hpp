// GF(2) linear algebra over the subset lattice (symmetric difference as
// vector addition) and the coset-basis selection algorithms: a dense family
// admits a separating subfamily of logarithmic size, found by locating a
// coset of the code subspace where the family concentrates.
#pragma once

#include <string>
#include <vector>

#include "sepfam/setsystem.hpp"

namespace sepfam {

// Reduced row-echelon basis; each pivot bit occurs in exactly one basis mask.
class Gf2Basis {
public:
    // Reduce v against the basis; the result has zero in every pivot
    // coordinate and differs from v by a span element. The map is a group
    // homomorphism onto coset representatives.
    [[nodiscard]] Mask reduce(Mask v) const;

    // Insert v if independent; returns true when the rank grew.
    bool insert(Mask v);

    [[nodiscard]] int rank() const { return int(pivots_.size()); }
    [[nodiscard]] const std::vector<std::pair<int, Mask>>& pivots() const { return pivots_; }

private:
    std::vector<std::pair<int, Mask>> pivots_;  // (pivot element-id, mask), sorted by pivot
};

inline Mask gf2_reduce(Mask v, const Gf2Basis& basis) { return basis.reduce(v); }

Gf2Basis gf2_basis_of(const std::vector<Mask>& vectors);

// Greedy spanning subset: scans candidates in ascending mask order and keeps
// those that grow the rank, so the chosen basis consists of input vectors.
std::vector<Mask> independent_subset(std::vector<Mask> candidates);

// A coset of span(basis) intersected with the family.
struct DenseCoset {
    Mask representative = 0;
    std::vector<Mask> members;  // sorted ascending
};

// The coset holding the most family members; ties go to the least
// representative. Throws invalid_argument on an empty family.
DenseCoset densest_coset(const std::vector<Mask>& family, const Gf2Basis& basis);

// Binary within-block codes: element e gets its ascending-id index inside its
// block, and sets[j] collects the elements whose index has bit j set. The
// sets separate every block.
struct CodeFamily {
    std::vector<Mask> sets;
    std::vector<int> code_of_element;  // within-block index; 0 outside all blocks
    int bits = 0;                      // = ceil(log2 max_block)
};

CodeFamily binary_code_family(const Partition& parts, int n_elements);

struct DensityTooLowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Subfamily of <= ceil(log2 max_block) + 1 members separating every block,
// for families of density > 1/2. Deterministic: ties among maximal cosets,
// basis picks and the anchor member go to the least mask.
std::vector<Mask> select_logp1(const SeparationInstance& inst);

// Tightness instance for the bound above: 2^(n-1) blocks of size n; the
// family holds exactly the masks that are trivial (empty or full) on at
// least one block, so |F| = 2^|X| - (2^n - 2)^(2^(n-1)) and no
// ceil(log2 n)-member subfamily separates every block.
SeparationInstance gen_logp1_tight(int n);

struct PhaseOutcome {
    std::vector<Mask> selected;
    Partition parts;
    bool stalled = false;
    std::string stall_reason;
};

// First pipeline phase: shrink the maximum block to at most 1/density by
// selecting an anchor member C from a dense coset plus one parity shift of C
// per independent direction. |selected| <= ceil(log2 max_block) + 1.
PhaseOutcome phase1_select(const SeparationInstance& inst);

}  // namespace sepfam
