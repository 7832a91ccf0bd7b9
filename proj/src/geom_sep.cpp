#include "sepfam/geom_sep.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace sepfam {

namespace {

Rat dot(const Vec& a, const Vec& b) {
    Rat s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Exact determinant by fraction-free-enough Gaussian elimination on Rats.
Rat determinant(std::vector<std::vector<Rat>> m) {
    const size_t n = m.size();
    Rat det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t pivot = n;
        for (size_t r = c; r < n; ++r)
            if (m[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot == n) return Rat(0);
        if (pivot != c) {
            std::swap(m[pivot], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            const Rat f = m[r][c] / m[c][c];
            for (size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

int sign_of(const Rat& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// p on the closed segment [a, b] (2D, exact).
bool on_segment_2d(const Vec& p, const Vec& a, const Vec& b) {
    if (orientation({a, b, p}) != 0) return false;
    for (int c = 0; c < 2; ++c) {
        const Rat lo = std::min(a[size_t(c)], b[size_t(c)]);
        const Rat hi = std::max(a[size_t(c)], b[size_t(c)]);
        if (p[size_t(c)] < lo || p[size_t(c)] > hi) return false;
    }
    return true;
}

// Exact phase-1 simplex (Bland's rule) for: exists lambda >= 0 with
// sum lambda_j * gens[j] = p and sum lambda_j = 1.
bool lp_in_hull(const Vec& p, const std::vector<Vec>& gens) {
    const size_t d = p.size();
    const size_t g = gens.size();
    const size_t m = d + 1;                // equality rows
    const size_t cols = g + m;             // structural + artificial
    std::vector<std::vector<Rat>> t(m, std::vector<Rat>(cols + 1, Rat(0)));
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < g; ++j) t[i][j] = gens[j][i];
        t[i][cols] = p[i];
    }
    for (size_t j = 0; j < g; ++j) t[m - 1][j] = Rat(1);
    t[m - 1][cols] = Rat(1);
    for (size_t i = 0; i < m; ++i) {
        if (t[i][cols] < 0)
            for (size_t j = 0; j <= cols; ++j) t[i][j] = -t[i][j];
        t[i][g + i] = Rat(1);
    }
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) basis[i] = g + i;

    // Minimize the artificial sum. wcoef/wval express it over the nonbasic
    // variables; artificial columns never re-enter (sound for feasibility).
    std::vector<Rat> wcoef(cols, Rat(0));
    Rat wval(0);
    for (size_t i = 0; i < m; ++i) {
        wval += t[i][cols];
        for (size_t j = 0; j < g; ++j) wcoef[j] -= t[i][j];
    }
    for (;;) {
        size_t enter = cols;
        for (size_t j = 0; j < g; ++j)
            if (wcoef[j] < 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        size_t leave = m;
        for (size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            if (leave == m) {
                leave = i;
                continue;
            }
            const Rat cur = t[i][cols] * t[leave][enter];
            const Rat best = t[leave][cols] * t[i][enter];
            if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
        }
        if (leave == m) throw std::logic_error("lp_in_hull: unbounded phase-1 objective");

        const Rat pivot = t[leave][enter];
        for (size_t j = 0; j <= cols; ++j) t[leave][j] /= pivot;
        for (size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rat f = t[i][enter];
            for (size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
        }
        const Rat wf = wcoef[enter];
        if (wf != 0) {
            for (size_t j = 0; j < cols; ++j) wcoef[j] -= wf * t[leave][j];
            wval += wf * t[leave][cols];
        }
        basis[leave] = enter;
    }
    return wval == 0;
}

Vec circle_point(const Rat& t) {
    const Rat den = 1 + t * t;
    return {(1 - t * t) / den, (2 * t) / den};
}

Vec negate(const Vec& v) {
    Vec out;
    out.reserve(v.size());
    for (const Rat& x : v) out.push_back(-x);
    return out;
}

// Normal of the hyperplane through d affinely independent points in R^d,
// via cofactors of the difference matrix (generalized cross product).
Vec hyperplane_normal(const std::vector<Vec>& pts) {
    const size_t d = pts[0].size();
    if (d == 1) return {Rat(1)};
    std::vector<std::vector<Rat>> diff(d - 1, std::vector<Rat>(d));
    for (size_t i = 0; i + 1 < d; ++i)
        for (size_t j = 0; j < d; ++j) diff[i][j] = pts[i + 1][j] - pts[0][j];
    Vec normal(d);
    for (size_t skip = 0; skip < d; ++skip) {
        std::vector<std::vector<Rat>> minor(d - 1, std::vector<Rat>(d - 1));
        for (size_t i = 0; i + 1 < d; ++i) {
            size_t cc = 0;
            for (size_t j = 0; j < d; ++j)
                if (j != skip) minor[i][cc++] = diff[i][j];
        }
        const Rat det = determinant(minor);
        normal[skip] = (skip % 2 == 0) ? det : -det;
    }
    return normal;
}

}  // namespace

PointConfig::PointConfig(int dim, int tuple, std::vector<Vec> pts)
    : d(dim), k(tuple), points(std::move(pts)) {
    if (d < 1) throw std::invalid_argument("PointConfig: dimension must be >= 1");
    if (k < 1) throw std::invalid_argument("PointConfig: k must be >= 1");
    if (points.empty()) throw std::invalid_argument("PointConfig: no points");
    if (int(points.size()) > kMaxGroundSize)
        throw SizeLimitError("PointConfig: more than 30 points");
    for (const Vec& p : points)
        if (int(p.size()) != d) throw std::invalid_argument("PointConfig: wrong coordinate count");
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j]) throw std::invalid_argument("PointConfig: duplicate points");
}

bool PointConfig::general_position() const {
    if (int(points.size()) <= d) return true;
    for (Mask s : k_subsets(n(), d + 1)) {
        std::vector<Vec> pts;
        pts.reserve(size_t(d + 1));
        for (int e : mask_elements(s)) pts.push_back(points[size_t(e)]);
        if (orientation(pts) == 0) return false;
    }
    return true;
}

int orientation(const std::vector<Vec>& pts) {
    if (pts.empty()) throw std::invalid_argument("orientation: no points");
    const size_t d = pts[0].size();
    if (pts.size() != d + 1)
        throw std::invalid_argument("orientation: need d+1 points of dimension d");
    std::vector<std::vector<Rat>> m(d + 1, std::vector<Rat>(d + 1));
    for (size_t i = 0; i <= d; ++i) {
        if (pts[i].size() != d) throw std::invalid_argument("orientation: mixed dimensions");
        for (size_t j = 0; j < d; ++j) m[i][j] = pts[i][j];
        m[i][d] = Rat(1);
    }
    return sign_of(determinant(std::move(m)));
}

bool in_hull(const Vec& p, const std::vector<Vec>& generators) {
    if (generators.empty()) return false;
    const size_t d = p.size();
    for (const Vec& gv : generators)
        if (gv.size() != d) throw std::invalid_argument("in_hull: mixed dimensions");

    if (d == 1) {
        Rat lo = generators[0][0], hi = generators[0][0];
        for (const Vec& gv : generators) {
            lo = std::min(lo, gv[0]);
            hi = std::max(hi, gv[0]);
        }
        return p[0] >= lo && p[0] <= hi;
    }
    if (d == 2) {
        // Caratheodory: p lies in the hull iff it is a generator, on a
        // generator segment, or in a generator triangle.
        const size_t g = generators.size();
        for (const Vec& gv : generators)
            if (gv == p) return true;
        for (size_t i = 0; i < g; ++i)
            for (size_t j = i + 1; j < g; ++j)
                if (on_segment_2d(p, generators[i], generators[j])) return true;
        for (size_t i = 0; i < g; ++i)
            for (size_t j = i + 1; j < g; ++j)
                for (size_t l = j + 1; l < g; ++l) {
                    const int base = orientation({generators[i], generators[j], generators[l]});
                    if (base == 0) continue;  // degenerate: segment tests cover it
                    const int o1 = orientation({generators[i], generators[j], p});
                    const int o2 = orientation({generators[j], generators[l], p});
                    const int o3 = orientation({generators[l], generators[i], p});
                    if ((o1 == base || o1 == 0) && (o2 == base || o2 == 0) && (o3 == base || o3 == 0))
                        return true;
                }
        return false;
    }
    return lp_in_hull(p, generators);
}

CanonicalConvexSet close_hull(const PointConfig& cfg, Mask generators) {
    if (!GroundSet(cfg.n()).contains(generators))
        throw std::invalid_argument("close_hull: generator labels out of range");
    std::vector<Vec> gen_points;
    for (int e : mask_elements(generators)) gen_points.push_back(cfg.points[size_t(e)]);
    Mask closure = generators;
    for (int x = 0; x < cfg.n(); ++x) {
        if (test_bit(generators, x)) continue;
        if (in_hull(cfg.points[size_t(x)], gen_points)) closure |= bit(x);
    }
    return {generators, closure};
}

bool halfspace_contains(const HalfSpace& h, const Vec& p) {
    if (h.normal.size() != p.size())
        throw std::invalid_argument("halfspace_contains: dimension mismatch");
    return dot(h.normal, p) <= h.offset;
}

Mask points_inside(const PointConfig& cfg, const ConvexSet& c) {
    if (const auto* hull = std::get_if<CanonicalConvexSet>(&c))
        return close_hull(cfg, hull->generators).closure;
    const auto& h = std::get<HalfSpace>(c);
    if (int(h.normal.size()) != cfg.d)
        throw std::invalid_argument("points_inside: half-space dimension mismatch");
    if (std::all_of(h.normal.begin(), h.normal.end(), [](const Rat& r) { return r == 0; }))
        throw std::invalid_argument("points_inside: half-space normal is zero");
    Mask inside = 0;
    for (int x = 0; x < cfg.n(); ++x)
        if (halfspace_contains(h, cfg.points[size_t(x)])) inside |= bit(x);
    return inside;
}

bool containment_separates(const PointConfig& cfg, const ConvexSet& c, Mask a, Mask b) {
    if (a == b) throw std::invalid_argument("containment_separates: subsets are equal");
    const Mask inside = points_inside(cfg, c);
    return ((a & ~inside) == 0) != ((b & ~inside) == 0);
}

bool intersection_separates(const PointConfig& cfg, const ConvexSet& c, Mask a, Mask b) {
    const Mask inside = points_inside(cfg, c);
    return ((a & inside) != 0) != ((b & inside) != 0);
}

VerifyResult verify_separator(const PointConfig& cfg, const std::vector<ConvexSet>& sets,
                              SepMode mode) {
    std::vector<Mask> insides;
    insides.reserve(sets.size());
    for (const ConvexSet& c : sets) insides.push_back(points_inside(cfg, c));

    const std::vector<Mask> subs = k_subsets(cfg.n(), cfg.k);
    for (size_t i = 0; i < subs.size(); ++i)
        for (size_t j = i + 1; j < subs.size(); ++j) {
            bool separated = false;
            for (Mask inside : insides) {
                const bool hit = mode == SepMode::Containment
                                     ? ((subs[i] & ~inside) == 0) != ((subs[j] & ~inside) == 0)
                                     : ((subs[i] & inside) != 0) != ((subs[j] & inside) != 0);
                if (hit) {
                    separated = true;
                    break;
                }
            }
            if (!separated) return {false, std::make_pair(subs[i], subs[j])};
        }
    return {true, std::nullopt};
}

std::vector<CanonicalConvexSet> line_separator(const PointConfig& cfg) {
    if (cfg.d != 1) throw std::invalid_argument("line_separator: configuration must be 1-dimensional");
    if (cfg.k != 2) throw std::invalid_argument("line_separator: k must be 2");
    const int n = cfg.n();
    if (n < 4) throw std::invalid_argument("line_separator: need at least 4 points");

    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[size_t(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return cfg.points[size_t(a)][0] < cfg.points[size_t(b)][0]; });

    std::vector<CanonicalConvexSet> out;
    out.reserve(size_t(2 * n - 4));
    for (int i = 1; i + 1 < n; ++i)
        out.push_back(close_hull(cfg, bit(order.front()) | bit(order[size_t(i)])));
    for (int i = 1; i + 1 < n; ++i)
        out.push_back(close_hull(cfg, bit(order[size_t(i)]) | bit(order.back())));

    std::vector<ConvexSet> as_sets(out.begin(), out.end());
    if (!verify_separator(cfg, as_sets, SepMode::Containment).ok)
        throw std::logic_error("line_separator: construction failed verification");
    return out;
}

std::vector<HalfSpace> halfspace_separator(const PointConfig& cfg) {
    if (cfg.k != cfg.d + 1)
        throw std::invalid_argument(
            "halfspace_separator: k must equal d+1 (hyperplanes pass through k-1 points)");
    if (!cfg.general_position())
        throw DegeneratePositionError("halfspace_separator: configuration is degenerate");

    std::vector<HalfSpace> out;
    for (Mask s : k_subsets(cfg.n(), cfg.d)) {
        std::vector<Vec> pts;
        for (int e : mask_elements(s)) pts.push_back(cfg.points[size_t(e)]);
        Vec normal = hyperplane_normal(pts);
        if (std::all_of(normal.begin(), normal.end(), [](const Rat& r) { return r == 0; }))
            throw std::logic_error("halfspace_separator: degenerate hyperplane normal");
        const Rat offset = dot(normal, pts[0]);
        out.push_back({normal, offset});
        out.push_back({negate(normal), -offset});
    }

    std::vector<ConvexSet> as_sets(out.begin(), out.end());
    if (!verify_separator(cfg, as_sets, SepMode::Containment).ok)
        throw std::logic_error("halfspace_separator: construction failed verification");
    return out;
}

PointConfig gen_circle_apex(int n) {
    if (n < 4) throw std::invalid_argument("gen_circle_apex: need n >= 4");
    std::vector<Vec> pts;
    pts.reserve(size_t(n));
    for (int j = 1; j < n; ++j) pts.push_back(circle_point(Rat(j, n)));
    pts.push_back({Rat(1), Rat(1)});
    PointConfig cfg(2, 2, std::move(pts));
    if (!cfg.general_position())
        throw std::logic_error("gen_circle_apex: produced a degenerate configuration");
    return cfg;
}

PointConfig gen_diameter_fan(int n) {
    if (n < 8) throw std::invalid_argument("gen_diameter_fan: need n >= 8");
    const int half = n / 4;  // K = 2*half outer points in half antipodal pairs
    const int inner = n - 2 * half;

    for (int variant = 1; variant <= 16; ++variant) {
        std::vector<Vec> pts;
        pts.reserve(size_t(n));
        for (int j = 1; j <= half; ++j) pts.push_back(circle_point(Rat(j, half)));
        for (int j = 0; j < half; ++j) pts.push_back(negate(pts[size_t(j)]));
        for (int i = 1; i <= inner; ++i) {
            const Rat scale(i, inner);
            pts.push_back({scale * Rat(1, 8),
                           scale * Rat(1, 16) + Rat(Int(i) * i * variant, Int(1000000))});
        }
        PointConfig cfg(2, 3, std::move(pts));
        if (!cfg.general_position()) continue;

        // Every inner point must be strictly interior to the quadrilateral
        // spanned by any two antipodal pairs (u_a, u_b, -u_a, -u_b in CCW
        // order, since the tangent parameter sorts the angles).
        bool ok = true;
        for (int a = 0; a < half && ok; ++a)
            for (int b = a + 1; b < half && ok; ++b) {
                const Vec& ua = cfg.points[size_t(a)];
                const Vec& ub = cfg.points[size_t(b)];
                const Vec& na = cfg.points[size_t(half + a)];
                const Vec& nb = cfg.points[size_t(half + b)];
                for (int i = 0; i < inner && ok; ++i) {
                    const Vec& q = cfg.points[size_t(2 * half + i)];
                    ok = orientation({ua, ub, q}) > 0 && orientation({ub, na, q}) > 0 &&
                         orientation({na, nb, q}) > 0 && orientation({nb, ua, q}) > 0;
                }
            }
        if (ok) return cfg;
    }
    throw std::logic_error("gen_diameter_fan: no perturbation variant reached general position");
}

PointConfig gen_polar_triples(int n) {
    if (n % 3 != 0) throw std::invalid_argument("gen_polar_triples: n must be divisible by 3");
    if (n < 6) throw std::invalid_argument("gen_polar_triples: need n >= 6");
    const int m = n / 3;

    for (int variant = 1; variant <= 16; ++variant) {
        const Rat delta = Rat(1, Int(100) * m * m * variant);
        std::vector<Vec> pts;
        pts.reserve(size_t(n));
        for (int i = 1; i <= m; ++i) {
            const Rat t(i, 2 * m);
            const Vec u = circle_point(t);
            pts.push_back({u[0] * Rat(99, 100), u[1] * Rat(99, 100)});
            pts.push_back(circle_point(t + delta));
            pts.push_back(circle_point(t - delta));
        }
        PointConfig cfg(2, 2, std::move(pts));
        if (cfg.general_position()) return cfg;
    }
    throw std::logic_error("gen_polar_triples: no perturbation variant reached general position");
}

GeomSeparatorResult min_geom_separator(const PointConfig& cfg, SepMode mode, bool strict,
                                       int max_size) {
    const int n = cfg.n();
    if (n > 10) throw SizeLimitError("min_geom_separator: more than 10 points");
    if (cfg.d > 3) throw SizeLimitError("min_geom_separator: dimension above 3");
    if (mode == SepMode::Containment && cfg.k > cfg.d + 1)
        throw std::invalid_argument("min_geom_separator: containment mode requires k <= d+1");

    // Hull closure of every label subset; candidates are the distinct
    // closures (hulls of point subsets are a complete candidate class).
    std::vector<Mask> closure_of(size_t(1) << n);
    for (Mask s = 0; s < (Mask(1) << n); ++s) closure_of[s] = close_hull(cfg, s).closure;
    std::vector<Mask> candidates = closure_of;
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    GeomSeparatorResult res;
    const std::vector<Mask> subs = k_subsets(n, cfg.k);
    std::vector<std::pair<Mask, Mask>> pairs;
    for (size_t i = 0; i < subs.size(); ++i)
        for (size_t j = i + 1; j < subs.size(); ++j) {
            if (mode == SepMode::Containment && closure_of[subs[i]] == closure_of[subs[j]]) {
                res.inseparable.emplace_back(subs[i], subs[j]);
                continue;
            }
            pairs.emplace_back(subs[i], subs[j]);
        }
    if (strict && !res.inseparable.empty()) {
        res.status = CoverStatus::Infeasible;
        res.unseparated = res.inseparable.front();
        return res;
    }

    CoverProblem p;
    p.n_requirements = pairs.size();
    p.coverage.reserve(candidates.size());
    for (Mask c : candidates) {
        CoverRow row(pairs.size());
        for (size_t r = 0; r < pairs.size(); ++r) {
            const auto& [a, b] = pairs[r];
            const bool hit = mode == SepMode::Containment
                                 ? ((a & ~c) == 0) != ((b & ~c) == 0)
                                 : ((a & c) != 0) != ((b & c) != 0);
            if (hit) row.set(r);
        }
        p.coverage.push_back(std::move(row));
    }
    const CoverResult cover = min_cover(p, max_size);
    res.status = cover.status;
    res.minimum = cover.minimum;
    res.lower_bound = cover.lower_bound;
    if (cover.status == CoverStatus::Infeasible)
        throw std::logic_error("min_geom_separator: a pair resisted every canonical candidate");
    if (cover.status == CoverStatus::Found)
        for (int idx : cover.chosen)
            res.witness.push_back({candidates[size_t(idx)], candidates[size_t(idx)]});
    return res;
}

}  // namespace sepfam
