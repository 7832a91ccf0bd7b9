// Exact minimum-cover oracle. Every constructive selection algorithm in this
// library is checked against these exhaustive searches, so results here favor
// provable exactness and deterministic witnesses over speed.
//
// Practical limits: intended for |candidates| <= 4096 and optima <= ~6..12;
// branch-and-bound explores candidate subsets exhaustively within the bound.
#pragma once

#include <boost/dynamic_bitset.hpp>
#include <climits>
#include <optional>
#include <utility>
#include <vector>

#include "sepfam/constraint_select.hpp"
#include "sepfam/setsystem.hpp"

namespace sepfam {

using CoverRow = boost::dynamic_bitset<>;

// Requirements 0..n_requirements-1 must each be covered by some chosen
// candidate; coverage[c] lists the requirements candidate c covers.
struct CoverProblem {
    size_t n_requirements = 0;
    std::vector<CoverRow> coverage;
};

enum class CoverStatus { Found, Infeasible, BoundExceeded };

inline constexpr int kNoCoverBound = INT_MAX / 2;

struct CoverResult {
    CoverStatus status = CoverStatus::Found;
    // Original candidate indices, ascending; the lexicographically least
    // index sequence among all minimum covers.
    std::vector<int> chosen;
    int minimum = 0;                    // defined when Found
    int lower_bound = 0;                // proven lower bound (any status)
    int uncoverable_requirement = -1;   // defined when Infeasible
};

// Exhaustive branch-and-bound: duplicate coverages are deduplicated and
// subset coverages discarded for the size search, candidates are explored in
// decreasing-coverage order, and a greedy disjoint-requirement matching
// provides the lower bound. A second lexicographic pass over the unfiltered
// candidate list recovers the canonical witness, which is re-verified before
// return.
CoverResult min_cover(const CoverProblem& p, int max_size = kNoCoverBound);

struct SeparatorMinimum {
    CoverStatus status = CoverStatus::Found;
    std::vector<int> member_indices;    // lex-least minimum witness
    int minimum = 0;
    int lower_bound = 0;
    std::optional<std::pair<int, int>> inseparable_pair;  // when Infeasible
};

// Minimum subfamily of inst.family separating every in-scope within-block
// pair. Scope AllPairs is infeasible when the family itself fails to
// separate some pair; scope FamilySeparated is always feasible.
SeparatorMinimum min_separating_subfamily(const SeparationInstance& inst, Scope scope,
                                          int max_size = kNoCoverBound);

struct SatisfierMinimum {
    CoverStatus status = CoverStatus::Found;
    std::vector<int> member_indices;
    int minimum = 0;
    int lower_bound = 0;
    int unsatisfiable_constraint = -1;  // when Infeasible
};

// Minimum subfamily satisfying every constraint.
SatisfierMinimum min_satisfying_subfamily(const SetFamily& f, const std::vector<Constraint>& cs,
                                          int max_size = kNoCoverBound);

}  // namespace sepfam
