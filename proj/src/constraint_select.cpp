#include "sepfam/constraint_select.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace sepfam {

Constraint::Constraint(Mask v_, Mask w_) : v(v_), w(w_) {
    if (v & w) throw std::invalid_argument("Constraint: v and w must be disjoint");
}

ConstraintClassification classify_constraints(const SetFamily& f, const std::vector<Constraint>& cs,
                                              const Rat& epsilon) {
    if (epsilon < 0 || epsilon > 1)
        throw std::invalid_argument("classify_constraints: epsilon must be in [0, 1]");
    ConstraintClassification out;
    out.satisfier_counts.reserve(cs.size());
    out.good.reserve(cs.size());
    const Int total(f.size());
    for (const Constraint& c : cs) {
        std::uint64_t count = 0;
        for (Mask a : f.members) count += satisfies(a, c);
        out.satisfier_counts.push_back(count);
        // count >= epsilon * |F|, cross-multiplied to stay exact
        out.good.push_back(Int(count) * denominator(epsilon) >= numerator(epsilon) * total);
    }
    return out;
}

int satcond_t_random(std::uint64_t n_constraints, const Rat& epsilon) {
    if (epsilon <= 0) throw std::invalid_argument("satcond_t_random: epsilon must be > 0");
    if (n_constraints <= 1) return 0;
    // least t with t >= log2(N)/eps, i.e. 2^(t*num) >= N^den
    const Int num = numerator(epsilon), den = denominator(epsilon);
    if (num > 64 || den > 64)
        throw std::invalid_argument("satcond_t_random: epsilon terms too large");
    Int target = 1;
    for (Int i = 0; i < den; ++i) target *= Int(n_constraints);
    int t = 0;
    while (pow2(unsigned(t) * unsigned(num)) < target) ++t;
    return t;
}

SatcondResult select_satcond(const SetFamily& f, const std::vector<Constraint>& cs,
                             const SatcondParams& params) {
    for (const Constraint& c : cs)
        if (!f.ground.contains(c.support()))
            throw std::invalid_argument("select_satcond: constraint support outside ground set");
    for (size_t i = 0; i < cs.size(); ++i) {
        bool ok = false;
        for (Mask a : f.members)
            if (satisfies(a, cs[i])) { ok = true; break; }
        if (!ok) throw UnsatisfiableConstraint(int(i));
    }

    SatcondResult res;
    res.t_random = satcond_t_random(cs.size(), params.epsilon);
    if (cs.empty()) return res;

    std::vector<bool> satisfied(cs.size(), false);
    std::set<int> picked;

    auto mark = [&](Mask a) {
        for (size_t i = 0; i < cs.size(); ++i)
            if (!satisfied[i] && satisfies(a, cs[i])) satisfied[i] = true;
    };

    // Random stage: draws that satisfy nothing are discarded.
    // Index draws use modulo reduction so results are identical across
    // platforms for a fixed seed.
    std::mt19937_64 rng(params.seed);
    for (int d = 0; d < res.t_random; ++d) {
        const int idx = int(rng() % f.size());
        const Mask a = f.members[size_t(idx)];
        bool useful = false;
        for (const Constraint& c : cs)
            if (satisfies(a, c)) { useful = true; break; }
        if (useful && picked.insert(idx).second) {
            ++res.random_kept;
            mark(a);
        }
    }

    // Greedy completion: most still-unsatisfied constraints, ties least mask.
    for (;;) {
        bool open = false;
        for (bool s : satisfied)
            if (!s) { open = true; break; }
        if (!open) break;

        int best_idx = -1;
        std::uint64_t best_gain = 0;
        for (size_t i = 0; i < f.members.size(); ++i) {
            std::uint64_t gain = 0;
            for (size_t j = 0; j < cs.size(); ++j)
                if (!satisfied[j] && satisfies(f.members[i], cs[j])) ++gain;
            if (gain > best_gain ||
                (gain == best_gain && gain > 0 && best_idx >= 0 && f.members[i] < f.members[size_t(best_idx)])) {
                best_gain = gain;
                best_idx = int(i);
            }
        }
        // Every open constraint has a satisfier, so a positive gain exists.
        if (best_idx < 0 || best_gain == 0)
            throw std::logic_error("select_satcond: greedy stage found no progress");
        picked.insert(best_idx);
        ++res.greedy_added;
        mark(f.members[size_t(best_idx)]);
    }

    res.member_indices.assign(picked.begin(), picked.end());
    for (int i : res.member_indices) res.members.push_back(f.members[size_t(i)]);
    return res;
}

namespace {

// Depth-first search for pairwise-equal support intersections, visiting index
// sequences in lexicographic order so the first hit is the canonical witness.
bool sunflower_extend(const std::vector<Mask>& supports, int arms, size_t start,
                      std::vector<int>& chosen, std::optional<Mask>& core) {
    if (int(chosen.size()) == arms) return true;
    for (size_t i = start; i < supports.size(); ++i) {
        std::optional<Mask> next_core = core;
        bool ok = true;
        for (int c : chosen) {
            const Mask inter = supports[size_t(c)] & supports[i];
            if (!next_core) next_core = inter;
            else if (*next_core != inter) { ok = false; break; }
        }
        if (!ok) continue;
        chosen.push_back(int(i));
        std::optional<Mask> saved = core;
        core = next_core;
        if (sunflower_extend(supports, arms, i + 1, chosen, core)) return true;
        core = saved;
        chosen.pop_back();
    }
    return false;
}

}  // namespace

std::optional<SunflowerReport> find_sunflower(const std::vector<Constraint>& cs, int arms) {
    if (arms < 1) throw std::invalid_argument("find_sunflower: arms must be >= 1");
    if (size_t(arms) > cs.size()) return std::nullopt;
    std::vector<Mask> supports;
    supports.reserve(cs.size());
    for (const Constraint& c : cs) supports.push_back(c.support());

    std::vector<int> chosen;
    std::optional<Mask> core;
    if (!sunflower_extend(supports, arms, 0, chosen, core)) return std::nullopt;

    SunflowerReport rep;
    rep.constraint_indices = chosen;
    rep.core = core.value_or(supports[size_t(chosen.front())]);
    // re-verify the witness
    for (size_t a = 0; a < chosen.size(); ++a)
        for (size_t b = a + 1; b < chosen.size(); ++b)
            if ((supports[size_t(chosen[a])] & supports[size_t(chosen[b])]) != rep.core)
                throw std::logic_error("find_sunflower: witness failed re-verification");
    return rep;
}

ConstraintInstance gen_satcond_lower_bound(int m, int N) {
    if (m < 1 || N < 1) throw std::invalid_argument("gen_satcond_lower_bound: m and N must be >= 1");
    const int n = N + m - 1;
    if (n > kMaxGroundSize)
        throw SizeLimitError("gen_satcond_lower_bound: ground set would exceed 30 elements");
    if (n > 26)
        throw SizeLimitError("gen_satcond_lower_bound: explicit family listing beyond 2^26 members");

    const GroundSet g(n);
    const Mask y = (m >= 2) ? (bit(m - 1) - 1) : 0;  // first m-1 elements

    std::vector<Mask> members;
    for (Mask a = 0;; ++a) {
        const bool misses_y = (y & ~a) != 0;
        if (misses_y || popcount(a) == m) members.push_back(a);
        if (a == g.full_mask()) break;
    }

    std::vector<Constraint> cs;
    cs.reserve(size_t(N));
    for (int x = m - 1; x < n; ++x) cs.emplace_back(y | bit(x), Mask(0));

    return {SetFamily(g, std::move(members)), std::move(cs)};
}

Int satcond_extra_budget(int m, int arms) {
    if (m < 0 || arms < 0) throw std::invalid_argument("satcond_extra_budget: negative input");
    Int fact = 1;
    for (int i = 2; i <= m; ++i) fact *= i;
    Int arm_term = 1;
    const Int per_arm = Int(arms) * pow2(unsigned(m));
    for (int i = 0; i < m; ++i) arm_term *= per_arm;
    return fact * pow2(unsigned(m)) * arm_term;
}

}  // namespace sepfam
