// Inclusion/exclusion constraints over a ground set and the randomized
// selection of a small satisfying subfamily: a seeded uniform sampling stage
// keeps the draws that help, then a deterministic greedy stage completes
// whatever is still unsatisfied.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sepfam/setsystem.hpp"

namespace sepfam {

// A member A satisfies the constraint when v is inside A and w avoids A.
struct Constraint {
    Mask v = 0;
    Mask w = 0;

    Constraint() = default;
    Constraint(Mask v_, Mask w_);

    [[nodiscard]] Mask support() const { return v | w; }
    [[nodiscard]] int size() const { return popcount(support()); }
    bool operator==(const Constraint&) const = default;
};

inline bool satisfies(Mask a, const Constraint& c) {
    return (c.v & ~a) == 0 && (c.w & a) == 0;
}

struct ConstraintClassification {
    std::vector<std::uint64_t> satisfier_counts;  // per constraint
    std::vector<bool> good;                       // count >= epsilon * |F|, inclusive
};

// Exact rational comparison decides the good/bad split.
ConstraintClassification classify_constraints(const SetFamily& f, const std::vector<Constraint>& cs,
                                              const Rat& epsilon);

struct SatcondParams {
    Rat epsilon{1, 4};
    int arms = 3;              // sunflower arm count, diagnostics only
    std::uint64_t seed = 0;
};

struct SatcondResult {
    std::vector<int> member_indices;  // ascending; union of kept draws and greedy picks
    std::vector<Mask> members;
    int t_random = 0;
    int random_kept = 0;
    int greedy_added = 0;
};

// ceil(log2(N) / epsilon) decided exactly (least t with 2^(t*eps) >= N).
int satcond_t_random(std::uint64_t n_constraints, const Rat& epsilon);

// Seeded uniform draws (kept only when they satisfy some constraint),
// followed by greedy completion picking the member that satisfies the most
// still-unsatisfied constraints, ties broken by least mask.
// Throws UnsatisfiableConstraint when some constraint no member satisfies.
SatcondResult select_satcond(const SetFamily& f, const std::vector<Constraint>& cs,
                             const SatcondParams& params);

struct UnsatisfiableConstraint : std::runtime_error {
    int index;
    explicit UnsatisfiableConstraint(int i)
        : std::runtime_error("constraint " + std::to_string(i) + " is satisfied by no family member"),
          index(i) {}
};

struct SunflowerReport {
    Mask core = 0;
    std::vector<int> constraint_indices;  // lexicographically least witness
};

// Brute-force search for `arms` constraints whose supports pairwise intersect
// in one common core; the witness is re-verified before return.
std::optional<SunflowerReport> find_sunflower(const std::vector<Constraint>& cs, int arms);

struct ConstraintInstance {
    SetFamily family;
    std::vector<Constraint> constraints;
};

// Hard instance on |X| = N + m - 1 elements: the family holds every subset
// missing part of the first m-1 elements plus all m-element subsets, and each
// of the N constraints pins one specific m-element subset, so any satisfying
// subfamily needs all N of them. Density exceeds 1 - 2^(1-m) exactly.
ConstraintInstance gen_satcond_lower_bound(int m, int N);

// Budget diagnostic for the bad-constraint regime: m! * 2^m * (a * 2^m)^m.
Int satcond_extra_budget(int m, int arms);

struct SizeLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sepfam
