#include "sepfam/linear_select.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "sepfam/constraint_select.hpp"

namespace sepfam {

Mask Gf2Basis::reduce(Mask v) const {
    // Reduced echelon form: no basis mask contains another's pivot, so a
    // single pass clears every pivot coordinate.
    for (const auto& [pivot, mask] : pivots_)
        if (test_bit(v, pivot)) v ^= mask;
    return v;
}

bool Gf2Basis::insert(Mask v) {
    v = reduce(v);
    if (v == 0) return false;
    const int pivot = mask_elements(v).front();
    for (auto& [p, mask] : pivots_)
        if (test_bit(mask, pivot)) mask ^= v;  // keep rows reduced
    pivots_.emplace_back(pivot, v);
    std::sort(pivots_.begin(), pivots_.end());
    return true;
}

Gf2Basis gf2_basis_of(const std::vector<Mask>& vectors) {
    Gf2Basis b;
    for (Mask v : vectors) b.insert(v);
    return b;
}

std::vector<Mask> independent_subset(std::vector<Mask> candidates) {
    std::sort(candidates.begin(), candidates.end());
    Gf2Basis probe;
    std::vector<Mask> chosen;
    for (Mask v : candidates)
        if (probe.insert(v)) chosen.push_back(v);
    return chosen;
}

CodeFamily binary_code_family(const Partition& parts, int n_elements) {
    if (parts.max_block() < 1) throw std::invalid_argument("binary_code_family: no blocks");
    CodeFamily out;
    out.code_of_element.assign(size_t(n_elements), 0);
    for (const auto& blk : parts.blocks)
        for (size_t i = 0; i < blk.size(); ++i) out.code_of_element[size_t(blk[i])] = int(i);
    out.bits = ceil_log2(unsigned(parts.max_block()));
    out.sets.reserve(size_t(out.bits));
    for (int j = 0; j < out.bits; ++j) {
        Mask s = 0;
        for (const auto& blk : parts.blocks)
            for (int e : blk)
                if (test_bit(Mask(out.code_of_element[size_t(e)]), j)) s |= bit(e);
        out.sets.push_back(s);
    }
    return out;
}

DenseCoset densest_coset(const std::vector<Mask>& family, const Gf2Basis& basis) {
    if (family.empty()) throw std::invalid_argument("densest_coset: family is empty");
    std::map<Mask, std::vector<Mask>> groups;
    for (Mask a : family) groups[basis.reduce(a)].push_back(a);
    const std::vector<Mask>* best = nullptr;
    Mask best_rep = 0;
    for (auto& [rep, members] : groups) {
        if (!best || members.size() > best->size()) {  // map order => least rep wins ties
            best = &members;
            best_rep = rep;
        }
    }
    DenseCoset out;
    out.representative = best_rep;
    out.members = *best;
    std::sort(out.members.begin(), out.members.end());
    return out;
}

std::vector<Mask> select_logp1(const SeparationInstance& inst) {
    const SetFamily& f = inst.family;
    if (f.density() <= Rat(1, 2))
        throw DensityTooLowError("select_logp1: family density must exceed 1/2");

    const CodeFamily code = binary_code_family(inst.parts, f.ground.n);
    const Gf2Basis code_span = gf2_basis_of(code.sets);

    const DenseCoset coset = densest_coset(f.members, code_span);
    // Averaging over cosets guarantees a strict majority coset.
    if (Int(coset.members.size()) * 2 <= pow2(unsigned(code_span.rank())))
        throw std::logic_error("select_logp1: no coset holds a strict majority");

    const Mask anchor = coset.members.front();  // least member of the dense coset

    // Span elements x with anchor + x still in the family; any strict
    // majority subset of a subspace spans it, so the greedy pick below
    // recovers a full basis made of such x's.
    std::vector<Mask> shifts;
    const int r = code_span.rank();
    std::vector<Mask> span_elements;
    span_elements.reserve(1u << r);
    span_elements.push_back(0);
    for (const auto& [pivot, mask] : code_span.pivots()) {
        const size_t sz = span_elements.size();
        for (size_t i = 0; i < sz; ++i) span_elements.push_back(span_elements[i] ^ mask);
    }
    std::sort(span_elements.begin(), span_elements.end());
    std::vector<Mask> in_family_shifts;
    {
        std::vector<Mask> sorted_members = f.members;
        std::sort(sorted_members.begin(), sorted_members.end());
        for (Mask x : span_elements)
            if (std::binary_search(sorted_members.begin(), sorted_members.end(), anchor ^ x))
                in_family_shifts.push_back(x);
    }
    shifts = independent_subset(std::move(in_family_shifts));
    if (int(shifts.size()) != r)
        throw std::logic_error("select_logp1: majority subset failed to span the code space");

    std::vector<Mask> out{anchor};
    for (Mask z : shifts) out.push_back(anchor ^ z);
    std::sort(out.begin(), out.end());
    return out;
}

PhaseOutcome phase1_select(const SeparationInstance& inst) {
    const SetFamily& f = inst.family;
    if (f.members.empty()) throw std::invalid_argument("phase1_select: family is empty");

    const int n = f.ground.n;
    const CodeFamily code = binary_code_family(inst.parts, n);
    const int r = code.bits;

    // parity_mask(x) = elements whose code has odd dot product with x; these
    // are exactly the XOR combinations of the code sets.
    auto parity_mask = [&](Mask x) {
        Mask m = 0;
        for (int j = 0; j < r; ++j)
            if (test_bit(x, j)) m ^= code.sets[size_t(j)];
        return m;
    };

    const Gf2Basis code_span = gf2_basis_of(code.sets);
    const DenseCoset coset = densest_coset(f.members, code_span);
    // densest coset reaches the average density
    if (Int(coset.members.size()) * pow2(unsigned(n)) <
        Int(f.size()) * pow2(unsigned(code_span.rank())))
        throw std::logic_error("phase1_select: densest coset below average density");

    const Mask anchor = coset.members.front();

    std::vector<Mask> sorted_members = f.members;
    std::sort(sorted_members.begin(), sorted_members.end());
    std::vector<Mask> covered_directions;  // x in F_2^r with anchor + parity_mask(x) in F
    for (Mask x = 0; x < (Mask(1) << r); ++x)
        if (std::binary_search(sorted_members.begin(), sorted_members.end(), anchor ^ parity_mask(x)))
            covered_directions.push_back(x);
    const std::vector<Mask> dirs = independent_subset(std::move(covered_directions));

    PhaseOutcome out;
    out.selected.push_back(anchor);
    for (Mask x : dirs) out.selected.push_back(anchor ^ parity_mask(x));
    std::sort(out.selected.begin(), out.selected.end());
    out.selected.erase(std::unique(out.selected.begin(), out.selected.end()), out.selected.end());
    out.parts = partition_by(out.selected, inst.parts);

    // 2^(r - rank) <= 1/alpha, i.e. blocks shrink below the inverse density.
    const Int bound = pow2(unsigned(r - int(dirs.size())));
    if (Int(out.parts.max_block()) > bound)
        throw std::logic_error("phase1_select: refined block exceeds the code bound");
    if (bound * Int(f.size()) > pow2(unsigned(n)))
        throw std::logic_error("phase1_select: block bound exceeds inverse density");
    return out;
}

SeparationInstance gen_logp1_tight(int n) {
    if (n < 2) throw std::invalid_argument("gen_logp1_tight: need n >= 2");
    const int block_count = 1 << (n - 1);
    const long long total = static_cast<long long>(n) * block_count;
    if (total > kMaxGroundSize)
        throw SizeLimitError("gen_logp1_tight: ground set of n * 2^(n-1) elements exceeds 30");

    std::vector<Mask> block_masks;
    std::vector<std::vector<int>> blocks;
    for (int b = 0; b < block_count; ++b) {
        std::vector<int> elems;
        for (int j = 0; j < n; ++j) elems.push_back(b * n + j);
        block_masks.push_back(mask_of(elems));
        blocks.push_back(std::move(elems));
    }

    // Keep the masks that look empty or full on at least one block; the
    // complement count is (2^n - 2)^(2^(n-1)).
    std::vector<Mask> members;
    const Mask limit = Mask(1) << total;
    for (Mask a = 0; a < limit; ++a) {
        for (Mask bm : block_masks) {
            const Mask trace = a & bm;
            if (trace == 0 || trace == bm) {
                members.push_back(a);
                break;
            }
        }
    }

    const GroundSet ground(static_cast<int>(total));
    SeparationInstance inst;
    inst.family = SetFamily(ground, std::move(members));
    inst.parts = Partition::of_blocks(std::move(blocks), ground);
    return inst;
}

}  // namespace sepfam
