#include "sepfam/phased_select.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "sepfam/oracle.hpp"
#include "sepfam/rational.hpp"

namespace sepfam {

bool cuts_well(Mask a, Mask y) {
    const int ysz = popcount(y);
    if (ysz == 0) throw std::invalid_argument("cuts_well: reference set is empty");
    const int hit = popcount(a & y);
    return 4 * hit >= ysz && 4 * hit <= 3 * ysz;
}

std::optional<std::vector<Mask>> brace_daykin_cover(int ground_size,
                                                    const std::vector<Mask>& fprime, int t) {
    if (ground_size < 1 || ground_size > kMaxGroundSize)
        throw std::invalid_argument("brace_daykin_cover: ground size out of range");
    if (t < 1) throw std::invalid_argument("brace_daykin_cover: budget must be >= 1");
    const Mask full = (Mask(1) << ground_size) - 1;
    Mask uni = 0;
    for (Mask a : fprime) {
        if (a & ~full) throw std::invalid_argument("brace_daykin_cover: mask outside the ground set");
        uni |= a;
    }
    if (uni != full)
        throw std::invalid_argument("brace_daykin_cover: family union misses part of the ground set");

    // Size-then-lexicographic search == minimum cover with the lex-least
    // witness, which the exact cover oracle produces directly.
    CoverProblem p;
    p.n_requirements = size_t(ground_size);
    p.coverage.reserve(fprime.size());
    for (Mask a : fprime) {
        CoverRow row(static_cast<size_t>(ground_size));
        for (int e : mask_elements(a)) row.set(size_t(e));
        p.coverage.push_back(std::move(row));
    }
    const CoverResult r = min_cover(p, t);
    if (r.status != CoverStatus::Found) return std::nullopt;
    std::vector<Mask> out;
    out.reserve(r.chosen.size());
    for (int idx : r.chosen) out.push_back(fprime[size_t(idx)]);
    return out;
}

namespace {

std::map<int, int> block_histogram(const Partition& p) {
    std::map<int, int> h;
    for (const auto& blk : p.blocks) ++h[int(blk.size())];
    return h;
}

double loss_value(std::size_t cumulative, int initial_max, int current_max) {
    if (initial_max <= 0 || current_max <= 0) return double(cumulative);
    return double(cumulative) - std::log2(double(initial_max) / double(current_max));
}

// Append masks not seen before, preserving first-selection order.
void append_new(std::vector<Mask>& out, std::set<Mask>& seen, const std::vector<Mask>& add) {
    for (Mask a : add)
        if (seen.insert(a).second) out.push_back(a);
}

}  // namespace

PhaseOutcome phase2_select(const SetFamily& f, const Partition& parts) {
    if (f.members.empty()) throw std::invalid_argument("phase2_select: family is empty");
    const int n = f.ground.n;
    const Rat alpha = f.density();
    const int t2 = std::max(2, ceil_mul_log2_inv(alpha, 10));

    std::vector<Mask> sorted_members = f.members;
    std::sort(sorted_members.begin(), sorted_members.end());

    PhaseOutcome out;
    out.parts = parts;
    std::set<Mask> seen;
    while (true) {
        const int m = out.parts.max_block();
        if (m <= t2) break;

        // Fibers: all block elements carrying within-block index v. They are
        // disjoint and nonempty for v < m, so they span a rank-m subspace.
        std::vector<Mask> fibers(size_t(m), 0);
        for (const auto& blk : out.parts.blocks)
            for (size_t i = 0; i < blk.size(); ++i) fibers[i] |= bit(blk[size_t(i)]);
        const Gf2Basis basis = gf2_basis_of(fibers);
        if (basis.rank() != m) throw std::logic_error("phase2_select: fiber masks are dependent");

        const DenseCoset coset = densest_coset(f.members, basis);
        if (Int(coset.members.size()) * pow2(unsigned(n)) < Int(f.size()) * pow2(unsigned(m)))
            throw std::logic_error("phase2_select: densest coset below average density");
        const Mask anchor = coset.members.front();

        // Label patterns realized by the coset: anchor ^ member is a union of
        // fibers; cut well means the pattern splits every block 1/4..3/4.
        const Mask full_labels = (Mask(1) << m) - 1;
        std::optional<Mask> best_pattern;
        for (Mask member : coset.members) {
            const Mask diff = member ^ anchor;
            Mask pattern = 0;
            Mask rebuilt = 0;
            for (int v = 0; v < m; ++v)
                if (diff & fibers[size_t(v)]) {
                    pattern |= bit(v);
                    rebuilt |= fibers[size_t(v)];
                }
            if (rebuilt != diff) throw std::logic_error("phase2_select: coset shift is not a fiber union");
            if (cuts_well(pattern, full_labels) && (!best_pattern || pattern < *best_pattern))
                best_pattern = pattern;
        }
        if (!best_pattern) {
            out.stalled = true;
            out.stall_reason = "no well-cutting label pattern in the dense coset at block size " +
                               std::to_string(m);
            break;
        }
        Mask shift = 0;
        for (int v : mask_elements(*best_pattern)) shift |= fibers[size_t(v)];
        const Mask partner = anchor ^ shift;

        append_new(out.selected, seen, {anchor, partner});
        out.parts = refine(refine(out.parts, anchor), partner);
        if (4 * out.parts.max_block() > 3 * m)
            throw std::logic_error("phase2_select: refined block exceeds 3m/4");
    }
    return out;
}

Phase3Outcome phase3_select(const SetFamily& f, const Partition& parts) {
    if (f.members.empty()) throw std::invalid_argument("phase3_select: family is empty");
    const int n = f.ground.n;
    const Rat alpha = f.density();

    // Round count ceil(log2(10*log2(1/alpha)) / log2(4/3)), clamped to >= 1.
    // The inner log is <= 0 exactly when (1/alpha)^10 <= 2; the round count
    // only bounds effort, so doubles with a small guard are fine beyond that.
    int rounds = 1;
    {
        using boost::multiprecision::pow;
        const Int num = numerator(alpha), den = denominator(alpha);
        if (pow(den, 10) > 2 * pow(num, 10)) {
            const double inner = std::log2(10.0 * std::log2(1.0 / alpha.convert_to<double>()));
            rounds = std::max(1, int(std::ceil(inner / std::log2(4.0 / 3.0) - 1e-9)));
        }
    }
    const int t = least_t_above_threshold(alpha, 1);
    constexpr int kTraceTableCap = 22;  // half of 2^cap masks per table at most

    Phase3Outcome out;
    out.parts = parts;
    std::set<Mask> seen;

    for (int round = 0; round < rounds && !out.stalled; ++round) {
        GoodBadReport rep;
        rep.cover_t = t;

        // Classify blocks of size >= 2: good when some member's trace cuts
        // the block well; remember the least such trace as the witness.
        std::vector<Mask> good_masks;
        std::vector<Mask> witness_traces;
        for (size_t bi = 0; bi < out.parts.blocks.size(); ++bi) {
            if (out.parts.blocks[bi].size() < 2) continue;
            const Mask bm = out.parts.block_mask(bi);
            bool found = false;
            Mask least_trace = 0;
            for (Mask a : f.members) {
                const Mask tr = a & bm;
                if (cuts_well(tr, bm) && (!found || tr < least_trace)) {
                    found = true;
                    least_trace = tr;
                }
            }
            if (found) {
                rep.good_ids.push_back(int(bi));
                good_masks.push_back(bm);
                witness_traces.push_back(least_trace);
            } else {
                rep.bad_ids.push_back(int(bi));
            }
        }
        const int g = int(rep.good_ids.size());
        rep.ground_size = g;
        if (g == 0) {
            out.rounds.push_back(std::move(rep));
            continue;
        }

        // Per good block, the lexicographically least half of its subsets
        // that cut it well, with the least witness trace swapped in for the
        // largest entry when missing (it always compares greater).
        for (int i = 0; i < g; ++i) {
            const Mask bm = good_masks[size_t(i)];
            const int s = popcount(bm);
            if (s > kTraceTableCap) {
                out.stalled = true;
                out.stall_reason =
                    "well-cutting table for a block of size " + std::to_string(s) +
                    " exceeds the enumeration cap " + std::to_string(kTraceTableCap);
                break;
            }
            const size_t half = size_t(1) << (s - 1);
            std::vector<Mask> table;
            table.reserve(half);
            for (Mask sub = 0;;) {  // all submasks of bm, ascending
                if (cuts_well(sub, bm)) {
                    table.push_back(sub);
                    if (table.size() == half) break;
                }
                sub = (sub - bm) & bm;
                if (sub == 0) break;
            }
            if (table.size() != half)
                throw std::logic_error("phase3_select: fewer than half the subsets cut the block well");
            const Mask w = witness_traces[size_t(i)];
            if (!std::binary_search(table.begin(), table.end(), w)) {
                if (w <= table.back())
                    throw std::logic_error("phase3_select: witness trace ordering violated");
                table.back() = w;
            }
            rep.well_tables.emplace_back(rep.good_ids[size_t(i)], std::move(table));
        }
        if (out.stalled) {
            out.rounds.push_back(std::move(rep));
            break;
        }

        // Project members to the good-block coordinates where their trace
        // lands in the table; keep the least preimage per image.
        std::vector<Mask> sorted_members = f.members;
        std::sort(sorted_members.begin(), sorted_members.end());
        std::map<Mask, Mask> least_preimage;
        for (Mask a : sorted_members) {
            Mask img = 0;
            for (int i = 0; i < g; ++i) {
                const auto& table = rep.well_tables[size_t(i)].second;
                if (std::binary_search(table.begin(), table.end(), a & good_masks[size_t(i)]))
                    img |= bit(i);
            }
            least_preimage.emplace(img, a);
        }
        std::vector<Mask> images;
        images.reserve(least_preimage.size());
        for (const auto& [img, pre] : least_preimage) images.push_back(img);
        rep.image_count = images.size();

        // Tables hold exactly half the subsets, so projection fibers have
        // equal size and the image family is at least as dense as F.
        if (Int(images.size()) * pow2(unsigned(n)) < Int(f.size()) * pow2(unsigned(g)))
            throw std::logic_error("phase3_select: projected family lost density");

        const auto cover = brace_daykin_cover(g, images, t);
        if (!cover) {
            out.stalled = true;
            out.stall_reason = "no union cover of the projected family within budget t=" +
                               std::to_string(t);
            out.rounds.push_back(std::move(rep));
            break;
        }
        std::vector<Mask> picks;
        picks.reserve(cover->size());
        for (Mask img : *cover) picks.push_back(least_preimage.at(img));
        append_new(out.selected, seen, picks);
        for (Mask a : picks) out.parts = refine(out.parts, a);

        // Covered coordinates split every good block 1/4..3/4, so each good
        // block's fragments shrink to <= 3/4 of its size.
        for (int i = 0; i < g; ++i) {
            const Mask bm = good_masks[size_t(i)];
            const int s = popcount(bm);
            for (const auto& blk : out.parts.blocks) {
                const Mask nb = mask_of(blk);
                if ((nb & bm) == nb && 4 * int(blk.size()) > 3 * s)
                    throw std::logic_error("phase3_select: good-block fragment exceeds 3m/4");
            }
        }
        out.rounds.push_back(std::move(rep));
    }
    return out;
}

PhaseOutcome phase4_select(const SetFamily& f, const Partition& parts) {
    std::vector<Mask> sorted_members = f.members;
    std::sort(sorted_members.begin(), sorted_members.end());

    PhaseOutcome out;
    out.parts = parts;
    std::set<Mask> seen;
    for (;;) {
        std::optional<Mask> splitter;
        for (Mask a : sorted_members) {
            for (const auto& blk : out.parts.blocks) {
                const int hit = popcount(a & mask_of(blk));
                if (hit > 0 && hit < int(blk.size())) {
                    splitter = a;
                    break;
                }
            }
            if (splitter) break;
        }
        if (!splitter) break;
        append_new(out.selected, seen, {*splitter});
        out.parts = refine(out.parts, *splitter);
    }
    if (!(out.parts == partition_by(f.members, parts)))
        throw std::logic_error("phase4_select: greedy refinement is incomplete");
    return out;
}

PipelineResult select_logpalpha(const SeparationInstance& inst) {
    const SetFamily& f = inst.family;
    if (f.members.empty()) throw std::invalid_argument("select_logpalpha: family is empty");

    PipelineResult res;
    res.trace.initial_max_block = inst.parts.max_block();
    std::set<Mask> seen;

    auto record = [&](const char* name, const std::vector<Mask>& selected, int before,
                      const Partition& after) {
        append_new(res.subfamily, seen, selected);
        PhaseTraceEntry e;
        e.phase = name;
        e.selected = selected;
        e.max_block_before = before;
        e.max_block_after = after.max_block();
        e.block_histogram = block_histogram(after);
        e.cumulative_selected = res.subfamily.size();
        e.loss = loss_value(e.cumulative_selected, res.trace.initial_max_block, e.max_block_after);
        res.trace.entries.push_back(std::move(e));
    };

    const PhaseOutcome p1 = phase1_select(inst);
    record("coset-basis", p1.selected, res.trace.initial_max_block, p1.parts);

    const PhaseOutcome p2 = phase2_select(f, p1.parts);
    record("coset-halving", p2.selected, p1.parts.max_block(), p2.parts);

    const Phase3Outcome p3 = phase3_select(f, p2.parts);
    record("union-cover", p3.selected, p2.parts.max_block(), p3.parts);

    const PhaseOutcome p4 = phase4_select(f, p3.parts);
    record("greedy-completion", p4.selected, p3.parts.max_block(), p4.parts);

    res.final_parts = p4.parts;
    if (p2.stalled) {
        res.stalled = true;
        res.stall_reason = p2.stall_reason;
    }
    if (p3.stalled) {
        res.stalled = true;
        res.stall_reason += (res.stall_reason.empty() ? "" : "; ") + p3.stall_reason;
    }
    if (!(res.final_parts == partition_by(f.members, inst.parts)))
        throw std::logic_error("select_logpalpha: output does not match full-family refinement");
    return res;
}

}  // namespace sepfam
