#include "sepfam/setsystem.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace sepfam {

SetFamily::SetFamily(GroundSet g, std::vector<Mask> m) : ground(g), members(std::move(m)) {
    std::set<Mask> seen;
    for (Mask a : members) {
        if (!ground.contains(a))
            throw std::invalid_argument("SetFamily: member " + mask_to_hex(a) + " outside ground set");
        if (!seen.insert(a).second)
            throw std::invalid_argument("SetFamily: duplicate member " + mask_to_hex(a));
    }
}

Rat SetFamily::density() const { return Rat(Int(members.size()), pow2(unsigned(ground.n))); }

SetFamily SetFamily::complement() const {
    std::set<Mask> present(members.begin(), members.end());
    std::vector<Mask> rest;
    for (Mask a = 0; a <= ground.full_mask(); ++a)
        if (!present.count(a)) rest.push_back(a);
    return SetFamily(ground, std::move(rest));
}

Partition Partition::single_block(int n) {
    GroundSet g(n);
    std::vector<int> all(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) all[size_t(i)] = i;
    Partition p;
    p.blocks.push_back(std::move(all));
    return p;
}

Partition Partition::of_blocks(std::vector<std::vector<int>> blocks, const GroundSet& ground) {
    Mask used = 0;
    for (auto& b : blocks) {
        if (b.empty()) throw std::invalid_argument("Partition: empty block");
        std::sort(b.begin(), b.end());
        for (int e : b) {
            if (e < 0 || e >= ground.n) throw std::invalid_argument("Partition: element out of range");
            if (test_bit(used, e)) throw std::invalid_argument("Partition: blocks must be disjoint");
            used |= bit(e);
        }
    }
    Partition p;
    p.blocks = std::move(blocks);
    p.canonicalize();
    return p;
}

void Partition::canonicalize() {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

int Partition::max_block() const {
    size_t m = 0;
    for (const auto& b : blocks) m = std::max(m, b.size());
    return int(m);
}

SeparationInstance::SeparationInstance(SetFamily f, Partition p)
    : family(std::move(f)), parts(std::move(p)) {
    for (const auto& b : parts.blocks)
        for (int e : b)
            if (e >= family.ground.n)
                throw std::invalid_argument("SeparationInstance: block element outside ground set");
}

Partition refine(const Partition& p, Mask a) {
    Partition out;
    for (const auto& blk : p.blocks) {
        std::vector<int> inside, outside;
        for (int e : blk) (test_bit(a, e) ? inside : outside).push_back(e);
        if (inside.empty() || outside.empty()) {
            out.blocks.push_back(blk);  // not split
        } else {
            out.blocks.push_back(std::move(inside));
            out.blocks.push_back(std::move(outside));
        }
    }
    out.canonicalize();
    return out;
}

Partition partition_by(const std::vector<Mask>& family, const Partition& initial) {
    Partition p = initial;
    for (Mask a : family) p = refine(p, a);
    return p;
}

std::vector<std::pair<int, int>> separated_pairs(const SeparationInstance& inst) {
    std::vector<std::pair<int, int>> out;
    for (const auto& blk : inst.parts.blocks) {
        for (size_t i = 0; i < blk.size(); ++i) {
            for (size_t j = i + 1; j < blk.size(); ++j) {
                for (Mask a : inst.family.members) {
                    if (separates(a, blk[i], blk[j])) {
                        out.emplace_back(blk[i], blk[j]);
                        break;
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SeparationCheck is_separating(const std::vector<Mask>& fam, const SeparationInstance& inst, Scope scope) {
    const GroundSet& g = inst.family.ground;
    for (Mask a : fam)
        if (!g.contains(a))
            throw std::invalid_argument("is_separating: candidate mask outside ground set");

    auto fam_separates = [&](int x, int y) {
        for (Mask a : fam)
            if (separates(a, x, y)) return true;
        return false;
    };

    for (const auto& blk : inst.parts.blocks) {
        for (size_t i = 0; i < blk.size(); ++i) {
            for (size_t j = i + 1; j < blk.size(); ++j) {
                const int x = blk[i], y = blk[j];
                if (scope == Scope::FamilySeparated) {
                    bool in_scope = false;
                    for (Mask a : inst.family.members)
                        if (separates(a, x, y)) { in_scope = true; break; }
                    if (!in_scope) continue;
                }
                if (!fam_separates(x, y)) return {false, std::make_pair(x, y)};
            }
        }
    }
    return {true, std::nullopt};
}

SeparationInstance gen_random_family(int n, const Rat& density, std::uint64_t seed, int blocks) {
    const GroundSet g(n);
    if (density < 0 || density > 1)
        throw std::invalid_argument("gen_random_family: density must be in [0,1]");
    if (blocks < 1 || blocks > n)
        throw std::invalid_argument("gen_random_family: blocks must be in [1,n]");

    const Int total = pow2(unsigned(n));
    // ceil(density * 2^n)
    const Int want_int = (numerator(density) * total + denominator(density) - 1) / denominator(density);
    const auto want = static_cast<std::uint64_t>(want_int);

    // Masking a 64-bit draw to n bits is exactly uniform; sample whichever of
    // the family and its complement is smaller so at most 2^(n-1) draws land.
    const bool sample_complement = Int(want) * 2 > total;
    const auto target = static_cast<std::uint64_t>(sample_complement ? total - Int(want) : Int(want));
    std::mt19937_64 rng(seed);
    std::set<Mask> drawn;
    while (drawn.size() < target) drawn.insert(Mask(rng()) & g.full_mask());

    std::vector<Mask> members;
    if (sample_complement) {
        for (Mask a = 0;; ++a) {
            if (!drawn.count(a)) members.push_back(a);
            if (a == g.full_mask()) break;
        }
    } else {
        members.assign(drawn.begin(), drawn.end());
    }

    std::vector<std::vector<int>> parts(static_cast<size_t>(blocks));
    for (int e = 0; e < n; ++e)
        parts[size_t(static_cast<long long>(e) * blocks / n)].push_back(e);

    SeparationInstance inst;
    inst.family = SetFamily(g, std::move(members));
    inst.parts = Partition::of_blocks(std::move(parts), g);
    return inst;
}

}  // namespace sepfam
