// VC-dimension machinery at exhaustive-search scale: exact dimension with a
// shattering witness, the shatter function, unrealized trace patterns
// ("types") of (d+1)-subsets, homogeneous-subset search, and two explicit
// families whose separator size is pinned by the dimension.
#pragma once

#include <optional>
#include <vector>

#include "sepfam/constraint_select.hpp"  // SizeLimitError
#include "sepfam/setsystem.hpp"

namespace sepfam {

struct VCReport {
    int dimension = 0;
    Mask witness = 0;  // least shattered set of maximum size
};

// Exact VC dimension by level-wise search: a set can only be shattered when
// all its subsets one smaller are, so each level extends the previous one.
// Requires |X| <= 20 and a nonempty family.
VCReport vc_dimension(const SetFamily& f);

// Maximum number of distinct traces f realizes on any m-subset.
int shatter_function(const SetFamily& f, int m);

// An unrealized trace pattern of the ascending (d+1)-subset a, as 1-based
// positions into a; pattern_mask bit p encodes position p+1. Index i <= d is
// regular when the pattern separates positions i and i+1.
struct TypeAssignment {
    std::vector<int> elements;  // ascending
    Mask pattern_mask = 0;
    std::vector<bool> regular;  // regular[i] for positions (i+1, i+2)
};

// Least unrealized pattern by binary encoding; nullopt when a is shattered.
std::optional<TypeAssignment> type_of(const SetFamily& f, const std::vector<int>& a);

// First subset of the given size (ascending mask order) whose (d+1)-subsets
// all carry the same type; every type re-verified. |X| <= 16, target <= 8.
std::optional<Mask> homogeneous_subset(const SetFamily& f, int d, int target_size);

// All masks over {0..universe-1} containing element 0 and separating at most
// d consecutive pairs (i, i+1); its VC dimension is d and separating the
// whole ground set takes about (universe-1)/d members.
SetFamily gen_vc_tight_family(int d, int universe);

struct DualBinomialFamily {
    SetFamily family;                  // one member per point of the m-set
    std::vector<Mask> ground_subsets;  // the (2^d - 1)-subsets, ascending
    int m = 0;
    int d = 0;
};

// Dual of the complete (2^d - 1)-uniform system on m points: ground elements
// are the (2^d - 1)-subsets, member y collects the subsets containing y. The
// m members separate the C(m, 2^d - 1) ground elements.
DualBinomialFamily gen_dual_binomial_separator(int m, int d);

}  // namespace sepfam
