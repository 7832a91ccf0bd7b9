// Multi-phase selection for families of arbitrary positive density: after the
// coset phase caps block sizes at the inverse density, a halving phase and a
// projected union-cover phase shrink blocks geometrically, and a greedy final
// phase restores full separation. Selected masks always come from the family;
// a phase that cannot make its guaranteed progress reports "stalled" as a
// first-class outcome and the greedy phase still completes separation.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sepfam/linear_select.hpp"
#include "sepfam/setsystem.hpp"

namespace sepfam {

// True iff |y|/4 <= |a & y| <= 3|y|/4, compared exactly.
bool cuts_well(Mask a, Mask y);

// First subfamily of size <= t whose union is the full ground set, searching
// subfamilies by size and then lexicographic index order. Guaranteed to exist
// when density(fprime) > (t+2)/2^(t+1); nullopt signals that precondition was
// violated or t is too small.
std::optional<std::vector<Mask>> brace_daykin_cover(int ground_size,
                                                    const std::vector<Mask>& fprime, int t);

struct PhaseTraceEntry {
    std::string phase;
    std::vector<Mask> selected;
    int max_block_before = 0;
    int max_block_after = 0;
    std::map<int, int> block_histogram;   // size -> count, after the phase
    std::size_t cumulative_selected = 0;  // distinct masks selected so far
    double loss = 0.0;                    // cumulative_selected - log2(initial/current max block)
};

struct PhaseTrace {
    int initial_max_block = 0;
    std::vector<PhaseTraceEntry> entries;
};

// Per-round record of the projected union-cover phase.
struct GoodBadReport {
    std::vector<int> good_ids;  // block positions whose block some member cuts well
    std::vector<int> bad_ids;   // blocks of size >= 2 nobody cuts well
    // per good block: exactly half of its subsets, all cutting it well,
    // including the least well-cutting trace of an actual member
    std::vector<std::pair<int, std::vector<Mask>>> well_tables;
    int cover_t = 0;            // union-cover budget used this round
    std::size_t image_count = 0;
    int ground_size = 0;        // number of good blocks
};

struct Phase3Outcome {
    std::vector<Mask> selected;
    Partition parts;
    std::vector<GoodBadReport> rounds;
    bool stalled = false;
    std::string stall_reason;
};

// Halving phase: while the maximum block exceeds max(2, ceil(10*log2(1/alpha)))
// pick an anchor from a dense coset of the block-labeling subspace and a
// shift of it realizing a well-cutting label pattern; each round caps every
// block at 3m/4.
PhaseOutcome phase2_select(const SetFamily& f, const Partition& parts);

// Projected union-cover phase: per round, classify blocks good/bad, project
// members through their well-cutting traces and pull a small union cover of
// the good blocks back to concrete members; good blocks fragment to <= 3/4
// of their size each round.
Phase3Outcome phase3_select(const SetFamily& f, const Partition& parts);

// Greedy completion: repeatedly select the least member splitting a block.
// Afterwards the partition equals the full-family refinement.
PhaseOutcome phase4_select(const SetFamily& f, const Partition& parts);

struct PipelineResult {
    std::vector<Mask> subfamily;  // distinct, in first-selection order
    PhaseTrace trace;
    Partition final_parts;
    bool stalled = false;
    std::string stall_reason;
};

// Full pipeline. The output separates exactly the within-block pairs the
// family separates; its size is logarithmic in the maximum block size plus a
// term polylogarithmic in the inverse density.
PipelineResult select_logpalpha(const SeparationInstance& inst);

}  // namespace sepfam
