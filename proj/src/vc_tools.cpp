#include "sepfam/vc_tools.hpp"

#include <algorithm>
#include <stdexcept>

#include "sepfam/rational.hpp"

namespace sepfam {

namespace {

// Distinct traces of f on the elements of s, with an optional early exit once
// `cap` traces are seen. Dense bitmap for small s, sort-unique beyond.
int distinct_traces(const SetFamily& f, Mask s, int cap) {
    const auto elems = mask_elements(s);
    const int k = int(elems.size());
    auto compress = [&](Mask a) {
        unsigned idx = 0;
        for (size_t i = 0; i < elems.size(); ++i)
            if (test_bit(a, elems[i])) idx |= 1u << i;
        return idx;
    };
    if (k <= 20) {
        std::vector<char> seen(size_t(1) << k, 0);
        int found = 0;
        for (Mask a : f.members) {
            const unsigned idx = compress(a);
            if (!seen[idx]) {
                seen[idx] = 1;
                if (++found == cap) return found;
            }
        }
        return found;
    }
    std::vector<Mask> traces;
    traces.reserve(f.members.size());
    for (Mask a : f.members) traces.push_back(a & s);
    std::sort(traces.begin(), traces.end());
    traces.erase(std::unique(traces.begin(), traces.end()), traces.end());
    return int(std::min<size_t>(traces.size(), size_t(cap)));
}

}  // namespace

VCReport vc_dimension(const SetFamily& f) {
    if (f.members.empty()) throw std::invalid_argument("vc_dimension: family is empty");
    const int n = f.ground.n;
    if (n > 20) throw SizeLimitError("vc_dimension: ground set larger than 20");

    VCReport best{0, 0};  // the empty set is shattered by any nonempty family
    std::vector<Mask> shattered{0};
    for (int k = 1; k <= n; ++k) {
        if ((std::uint64_t(1) << k) > f.size()) break;  // not enough members for 2^k traces
        std::vector<Mask> level;
        for (Mask s : k_subsets(n, k)) {
            // A set is shattered only if every subset one smaller is.
            bool candidate = true;
            Mask rest = s;
            while (rest) {
                const Mask low = rest & (rest - 1);
                const Mask drop = rest ^ low;  // lowest remaining element
                if (!std::binary_search(shattered.begin(), shattered.end(), s ^ drop)) {
                    candidate = false;
                    break;
                }
                rest = low;
            }
            if (candidate && distinct_traces(f, s, 1 << k) == (1 << k)) level.push_back(s);
        }
        if (level.empty()) break;
        best.dimension = k;
        best.witness = level.front();  // k_subsets order makes this the least
        shattered = std::move(level);
    }
    return best;
}

int shatter_function(const SetFamily& f, int m) {
    if (m < 0 || m > f.ground.n) throw std::invalid_argument("shatter_function: m out of range");
    if (m == 0) return f.members.empty() ? 0 : 1;
    int best = 0;
    for (Mask s : k_subsets(f.ground.n, m)) {
        best = std::max(best, distinct_traces(f, s, 1 << m));
        if (best == (1 << m)) break;
    }
    return best;
}

std::optional<TypeAssignment> type_of(const SetFamily& f, const std::vector<int>& a) {
    if (a.empty()) throw std::invalid_argument("type_of: subset is empty");
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 0 || a[i] >= f.ground.n) throw std::invalid_argument("type_of: element out of range");
        if (i > 0 && a[i] <= a[i - 1]) throw std::invalid_argument("type_of: elements must be ascending");
    }
    const int k = int(a.size());
    if (k > 25) throw SizeLimitError("type_of: subset larger than 25");

    std::vector<char> realized(size_t(1) << k, 0);
    for (Mask mem : f.members) {
        unsigned idx = 0;
        for (int i = 0; i < k; ++i)
            if (test_bit(mem, a[size_t(i)])) idx |= 1u << i;
        realized[idx] = 1;
    }
    for (unsigned pattern = 0; pattern < (1u << k); ++pattern) {
        if (realized[pattern]) continue;
        TypeAssignment t;
        t.elements = a;
        t.pattern_mask = pattern;
        t.regular.resize(size_t(k - 1));
        for (int i = 0; i + 1 < k; ++i)
            t.regular[size_t(i)] = test_bit(pattern, i) != test_bit(pattern, i + 1);
        return t;
    }
    return std::nullopt;  // shattered
}

std::optional<Mask> homogeneous_subset(const SetFamily& f, int d, int target_size) {
    const int n = f.ground.n;
    if (n > 16) throw SizeLimitError("homogeneous_subset: ground set larger than 16");
    if (target_size > 8) throw SizeLimitError("homogeneous_subset: target size larger than 8");
    if (d < 0 || target_size < 0 || target_size > n)
        throw std::invalid_argument("homogeneous_subset: bad dimension or target size");
    if (target_size == 0) return Mask(0);

    for (Mask s : k_subsets(n, target_size)) {
        const auto elems = mask_elements(s);
        bool ok = true;
        std::optional<Mask> common;
        for (Mask positions : k_subsets(target_size, d + 1)) {
            std::vector<int> sub;
            sub.reserve(size_t(d + 1));
            for (int p : mask_elements(positions)) sub.push_back(elems[size_t(p)]);
            const auto ty = type_of(f, sub);
            if (!ty || (common && *common != ty->pattern_mask)) {
                ok = false;
                break;
            }
            if (!common) common = ty->pattern_mask;
        }
        if (ok) return s;
    }
    return std::nullopt;
}

SetFamily gen_vc_tight_family(int d, int universe) {
    if (universe < 1 || universe > 20) throw SizeLimitError("gen_vc_tight_family: universe must be in [1, 20]");
    if (d < 0) throw std::invalid_argument("gen_vc_tight_family: d must be >= 0");
    std::vector<Mask> members;
    for (Mask a = 1; a < (Mask(1) << universe); a += 2) {  // all masks containing element 0
        int separated = 0;
        for (int i = 0; i + 1 < universe; ++i)
            if (test_bit(a, i) != test_bit(a, i + 1)) ++separated;
        if (separated <= d) members.push_back(a);
    }
    return SetFamily(GroundSet(universe), std::move(members));
}

DualBinomialFamily gen_dual_binomial_separator(int m, int d) {
    if (m < 1 || d < 1) throw std::invalid_argument("gen_dual_binomial_separator: m and d must be >= 1");
    const Int k = pow2(unsigned(d)) - 1;
    if (k > m) throw std::invalid_argument("gen_dual_binomial_separator: subset size 2^d-1 exceeds m");
    if (k == m && m > 1)
        throw std::invalid_argument("gen_dual_binomial_separator: members would coincide (2^d-1 = m)");
    Int count = 1;
    for (int i = 0; i < int(k); ++i) count = count * (m - i) / (i + 1);
    if (count > kMaxGroundSize)
        throw SizeLimitError("gen_dual_binomial_separator: C(m, 2^d-1) exceeds the ground cap");

    DualBinomialFamily out;
    out.m = m;
    out.d = d;
    out.ground_subsets = k_subsets(m, int(k));
    std::vector<Mask> members;
    members.reserve(size_t(m));
    for (int y = 0; y < m; ++y) {
        Mask fy = 0;
        for (size_t i = 0; i < out.ground_subsets.size(); ++i)
            if (test_bit(out.ground_subsets[i], y)) fy |= bit(int(i));
        members.push_back(fy);
    }
    out.family = SetFamily(GroundSet(int(out.ground_subsets.size())), std::move(members));
    return out;
}

}  // namespace sepfam
