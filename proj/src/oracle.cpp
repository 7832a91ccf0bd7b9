#include "sepfam/oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace sepfam {

namespace {

struct Searcher {
    const CoverProblem& p;
    CoverRow universe;
    std::vector<int> kept;                        // after dedup + dominance, big coverages first
    std::vector<std::vector<int>> covering_kept;  // requirement -> positions into kept
    std::vector<CoverRow> reach;                  // requirement -> union of covering coverages
    std::vector<size_t> bound_order;              // requirements, smallest reach first
    std::vector<size_t> pick_order;               // requirements, fewest covering candidates first
    int best = 0;

    explicit Searcher(const CoverProblem& problem) : p(problem), universe(problem.n_requirements) {
        universe.set();
    }

    // Greedy disjoint-requirement matching: requirements no single candidate
    // covers together each need their own pick. Taking small-reach requirements
    // first keeps the matching large; the cap stops work once the caller's
    // prune condition is already decided.
    int disjoint_requirement_bound(const CoverRow& covered, int cap) const {
        CoverRow blocked = covered;
        int lb = 0;
        for (size_t r : bound_order) {
            if (blocked.test(r)) continue;
            ++lb;
            if (lb >= cap) return lb;
            blocked |= reach[r];
        }
        return lb;
    }

    void search_size(const CoverRow& covered, int count) {
        if (covered == universe) {
            best = std::min(best, count);
            return;
        }
        if (count + disjoint_requirement_bound(covered, best - count) >= best) return;

        // branch on the uncovered requirement with fewest covering candidates
        size_t pick = SIZE_MAX;
        for (size_t r : pick_order) {
            if (!covered.test(r)) {
                pick = r;
                break;
            }
        }

        // try large gains first so the incumbent tightens early
        std::vector<std::pair<size_t, int>> branches;  // (gain, kept position)
        branches.reserve(covering_kept[pick].size());
        for (int ki : covering_kept[pick]) {
            CoverRow gain = p.coverage[size_t(kept[size_t(ki)])];
            gain -= covered;
            branches.emplace_back(gain.count(), ki);
        }
        std::sort(branches.begin(), branches.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        for (const auto& [gain, ki] : branches) {
            CoverRow next = covered;
            next |= p.coverage[size_t(kept[size_t(ki)])];
            search_size(next, count + 1);
        }
    }

    // Decision query for the witness pass: can the uncovered requirements be
    // covered by at most `target` candidates drawn from indices >= min_index?
    // Same requirement-branching shape as search_size, rebuilt over the
    // restricted candidate range (a candidate dominated inside the range may
    // still be dominated only by candidates outside it, so the global kept
    // list cannot be reused).
    bool feasible(const CoverRow& covered0, size_t min_index, int target) const {
        if (covered0 == universe) return true;
        if (target <= 0) return false;

        std::vector<std::vector<int>> covering(p.n_requirements);
        std::vector<CoverRow> range_reach(p.n_requirements, CoverRow(p.n_requirements));
        for (size_t i = min_index; i < p.coverage.size(); ++i) {
            const CoverRow& row = p.coverage[i];
            for (size_t r = row.find_first(); r != CoverRow::npos; r = row.find_next(r)) {
                if (covered0.test(r)) continue;
                covering[r].push_back(int(i));
                range_reach[r] |= row;
            }
        }
        std::vector<size_t> order;
        for (size_t r = 0; r < p.n_requirements; ++r)
            if (!covered0.test(r)) {
                if (covering[r].empty()) return false;
                order.push_back(r);
            }
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return covering[a].size() < covering[b].size();
        });

        const std::function<bool(const CoverRow&, int)> go = [&](const CoverRow& covered,
                                                                 int remaining) {
            if (covered == universe) return true;
            CoverRow blocked = covered;
            int need = 0;
            for (size_t r : order) {
                if (blocked.test(r)) continue;
                ++need;
                if (need > remaining) return false;
                blocked |= range_reach[r];
            }
            size_t pick = SIZE_MAX;
            for (size_t r : order)
                if (!covered.test(r)) {
                    pick = r;
                    break;
                }
            std::vector<std::pair<size_t, int>> branches;
            branches.reserve(covering[pick].size());
            for (int i : covering[pick]) {
                CoverRow gain = p.coverage[size_t(i)];
                gain -= covered;
                branches.emplace_back(gain.count(), i);
            }
            std::sort(branches.begin(), branches.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
            for (const auto& [gain, i] : branches) {
                CoverRow next = covered;
                next |= p.coverage[size_t(i)];
                if (go(next, remaining - 1)) return true;
            }
            return false;
        };
        return go(covered0, target);
    }

    // Lexicographically least minimum cover: fix the least candidate whose
    // prefix still completes to a cover of the proven optimum size, position
    // by position. Comparing sorted index sequences, the greedy prefix choice
    // is optimal at every position, so the result is the lex-least witness.
    std::vector<int> lex_witness(int optimum) const {
        std::vector<int> chosen;
        CoverRow covered(p.n_requirements);
        size_t start = 0;
        int remaining = optimum;
        while (covered != universe) {
            bool fixed = false;
            for (size_t i = start; i < p.coverage.size(); ++i) {
                CoverRow gain = p.coverage[i];
                gain -= covered;
                if (gain.none()) continue;  // a minimum cover has no redundant member
                CoverRow next = covered;
                next |= p.coverage[i];
                if (feasible(next, i + 1, remaining - 1)) {
                    chosen.push_back(int(i));
                    covered = std::move(next);
                    start = i + 1;
                    --remaining;
                    fixed = true;
                    break;
                }
            }
            if (!fixed) throw std::logic_error("min_cover: witness pass failed to reproduce the optimum");
        }
        return chosen;
    }
};

}  // namespace

CoverResult min_cover(const CoverProblem& p, int max_size) {
    for (const CoverRow& row : p.coverage)
        if (row.size() != p.n_requirements)
            throw std::invalid_argument("min_cover: coverage row width mismatch");
    if (max_size < 0) throw std::invalid_argument("min_cover: max_size must be >= 0");

    CoverResult res;
    if (p.n_requirements == 0) return res;  // Found, minimum 0

    CoverRow all(p.n_requirements);
    for (const CoverRow& row : p.coverage) all |= row;
    if (!all.all()) {
        res.status = CoverStatus::Infeasible;
        CoverRow missing = all;
        missing.flip();
        res.uncoverable_requirement = int(missing.find_first());
        return res;
    }

    // Requirement dominance: when every candidate covering r1 also covers r2,
    // covering r1 covers r2 for free, so r2 can be dropped (equal coverer sets
    // keep the least index). Covers of the reduced problem and of the original
    // coincide as candidate families, so the minimum and the lexicographically
    // least witness are both unchanged.
    const size_t n_cand = p.coverage.size();
    std::vector<CoverRow> coverers(p.n_requirements, CoverRow(n_cand));
    for (size_t i = 0; i < n_cand; ++i) {
        const CoverRow& row = p.coverage[i];
        for (size_t r = row.find_first(); r != CoverRow::npos; r = row.find_next(r))
            coverers[r].set(i);
    }
    std::vector<size_t> essential;
    for (size_t r = 0; r < p.n_requirements; ++r) {
        bool drop = false;
        for (size_t r2 = 0; r2 < p.n_requirements && !drop; ++r2) {
            if (r2 == r) continue;
            if (coverers[r2] == coverers[r]) drop = r2 < r;
            else drop = coverers[r2].is_subset_of(coverers[r]);
        }
        if (!drop) essential.push_back(r);
    }

    CoverProblem q;
    q.n_requirements = essential.size();
    q.coverage.reserve(n_cand);
    for (const CoverRow& row : p.coverage) {
        CoverRow reduced(essential.size());
        for (size_t c = 0; c < essential.size(); ++c)
            if (row.test(essential[c])) reduced.set(c);
        q.coverage.push_back(std::move(reduced));
    }

    Searcher s(q);

    // Dedup equal coverages (keep the least index) and discard strictly
    // dominated candidates; domination is transitive, so checking against all
    // candidates is sound.
    for (size_t i = 0; i < n_cand; ++i) {
        bool drop = false;
        for (size_t j = 0; j < n_cand && !drop; ++j) {
            if (j == i) continue;
            if (q.coverage[i] == q.coverage[j]) drop = j < i;
            else drop = q.coverage[i].is_subset_of(q.coverage[j]);
        }
        if (!drop) s.kept.push_back(int(i));
    }
    std::stable_sort(s.kept.begin(), s.kept.end(), [&](int a, int b) {
        return q.coverage[size_t(a)].count() > q.coverage[size_t(b)].count();
    });

    s.covering_kept.assign(q.n_requirements, {});
    s.reach.assign(q.n_requirements, CoverRow(q.n_requirements));
    for (size_t ki = 0; ki < s.kept.size(); ++ki) {
        const CoverRow& row = q.coverage[size_t(s.kept[ki])];
        for (size_t r = row.find_first(); r != CoverRow::npos; r = row.find_next(r)) {
            s.covering_kept[r].push_back(int(ki));
            s.reach[r] |= row;
        }
    }

    s.bound_order.resize(q.n_requirements);
    s.pick_order.resize(q.n_requirements);
    for (size_t r = 0; r < q.n_requirements; ++r) s.bound_order[r] = s.pick_order[r] = r;
    std::vector<size_t> reach_count(q.n_requirements);
    for (size_t r = 0; r < q.n_requirements; ++r) reach_count[r] = s.reach[r].count();
    std::stable_sort(s.bound_order.begin(), s.bound_order.end(),
                     [&](size_t a, size_t b) { return reach_count[a] < reach_count[b]; });
    std::stable_sort(s.pick_order.begin(), s.pick_order.end(), [&](size_t a, size_t b) {
        if (s.covering_kept[a].size() != s.covering_kept[b].size())
            return s.covering_kept[a].size() < s.covering_kept[b].size();
        return reach_count[a] < reach_count[b];
    });

    // greedy upper bound: most new coverage first
    int greedy_size = 0;
    {
        CoverRow covered(q.n_requirements);
        while (covered != s.universe) {
            size_t best_gain = 0;
            int best_ki = -1;
            for (size_t ki = 0; ki < s.kept.size(); ++ki) {
                CoverRow gain = q.coverage[size_t(s.kept[ki])];
                gain -= covered;
                if (gain.count() > best_gain) {
                    best_gain = gain.count();
                    best_ki = int(ki);
                }
            }
            covered |= q.coverage[size_t(s.kept[size_t(best_ki)])];
            ++greedy_size;
        }
    }

    s.best = std::min(greedy_size, max_size + 1);
    {
        CoverRow covered(q.n_requirements);
        s.search_size(covered, 0);
    }

    if (s.best > max_size) {
        res.status = CoverStatus::BoundExceeded;
        res.lower_bound = max_size + 1;  // no cover of size <= max_size exists
        return res;
    }

    std::vector<int> chosen = s.lex_witness(s.best);

    CoverRow check(q.n_requirements);
    for (int c : chosen) check |= q.coverage[size_t(c)];
    if (!check.all() || int(chosen.size()) != s.best)
        throw std::logic_error("min_cover: witness failed re-verification");

    res.chosen = std::move(chosen);
    res.minimum = res.lower_bound = s.best;
    return res;
}

SeparatorMinimum min_separating_subfamily(const SeparationInstance& inst, Scope scope, int max_size) {
    std::vector<std::pair<int, int>> pairs;
    if (scope == Scope::AllPairs) {
        for (const auto& blk : inst.parts.blocks)
            for (size_t i = 0; i < blk.size(); ++i)
                for (size_t j = i + 1; j < blk.size(); ++j)
                    pairs.emplace_back(blk[i], blk[j]);
        std::sort(pairs.begin(), pairs.end());
    } else {
        pairs = separated_pairs(inst);
    }

    CoverProblem p;
    p.n_requirements = pairs.size();
    p.coverage.reserve(inst.family.size());
    for (Mask a : inst.family.members) {
        CoverRow row(pairs.size());
        for (size_t r = 0; r < pairs.size(); ++r)
            if (separates(a, pairs[r].first, pairs[r].second)) row.set(r);
        p.coverage.push_back(std::move(row));
    }

    const CoverResult cr = min_cover(p, max_size);
    SeparatorMinimum out;
    out.status = cr.status;
    out.member_indices = cr.chosen;
    out.minimum = cr.minimum;
    out.lower_bound = cr.lower_bound;
    if (cr.status == CoverStatus::Infeasible)
        out.inseparable_pair = pairs[size_t(cr.uncoverable_requirement)];
    return out;
}

SatisfierMinimum min_satisfying_subfamily(const SetFamily& f, const std::vector<Constraint>& cs,
                                          int max_size) {
    CoverProblem p;
    p.n_requirements = cs.size();
    p.coverage.reserve(f.size());
    for (Mask a : f.members) {
        CoverRow row(cs.size());
        for (size_t r = 0; r < cs.size(); ++r)
            if (satisfies(a, cs[r])) row.set(r);
        p.coverage.push_back(std::move(row));
    }

    const CoverResult cr = min_cover(p, max_size);
    SatisfierMinimum out;
    out.status = cr.status;
    out.member_indices = cr.chosen;
    out.minimum = cr.minimum;
    out.lower_bound = cr.lower_bound;
    out.unsatisfiable_constraint = cr.uncoverable_requirement;
    return out;
}

}  // namespace sepfam
