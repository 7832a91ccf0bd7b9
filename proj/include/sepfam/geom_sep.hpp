// Exact rational geometry for convex separation of k-subsets of a point
// configuration: orientation/hull predicates (no floating point anywhere),
// canonical convex sets identified by the configuration points they contain,
// separator constructions and generators for the extremal configurations,
// and an exact minimum-separator oracle at small scale.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sepfam/constraint_select.hpp"  // SizeLimitError
#include "sepfam/masks.hpp"
#include "sepfam/oracle.hpp"
#include "sepfam/rational.hpp"

namespace sepfam {

using Vec = std::vector<Rat>;  // one point, d exact rational coordinates

struct DegeneratePositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Labeled point list; labels are 0..n-1 and double as mask bit positions.
struct PointConfig {
    int d = 0;
    int k = 0;  // tuple size for separation questions
    std::vector<Vec> points;

    PointConfig() = default;
    PointConfig(int d, int k, std::vector<Vec> points);

    [[nodiscard]] int n() const { return int(points.size()); }
    // No d+1 points on a common (d-1)-dimensional affine subspace.
    [[nodiscard]] bool general_position() const;
};

// Sign of the (d+1)x(d+1) homogeneous determinant of d+1 points in
// dimension d: +1 / -1 for the two orientations, 0 when the points lie on a
// common (d-1)-flat.
int orientation(const std::vector<Vec>& pts);

// Exact membership of p in conv(generators). Dimension 1 reduces to an
// interval test, dimension 2 to orientation tests over generator triples
// (Caratheodory), higher dimensions to exact linear-programming feasibility.
bool in_hull(const Vec& p, const std::vector<Vec>& generators);

// Convex hull of a subset of configuration points, identified by the labels
// it contains; closing is idempotent and monotone in the generators.
struct CanonicalConvexSet {
    Mask generators = 0;
    Mask closure = 0;
};

CanonicalConvexSet close_hull(const PointConfig& cfg, Mask generators);

// Closed half-space normal . x <= offset with normal != 0.
struct HalfSpace {
    Vec normal;
    Rat offset;
};

bool halfspace_contains(const HalfSpace& h, const Vec& p);

using ConvexSet = std::variant<CanonicalConvexSet, HalfSpace>;

// Labels of configuration points inside the set. Canonical sets are
// re-closed from their generators, so stale closures cannot mislead.
Mask points_inside(const PointConfig& cfg, const ConvexSet& c);

// True iff the set contains exactly one of a, b entirely. a == b is an
// error; the subsets are masks of point labels.
bool containment_separates(const PointConfig& cfg, const ConvexSet& c, Mask a, Mask b);

// True iff the set meets exactly one of a, b.
bool intersection_separates(const PointConfig& cfg, const ConvexSet& c, Mask a, Mask b);

enum class SepMode { Containment, Intersection };

struct VerifyResult {
    bool ok = true;
    std::optional<std::pair<Mask, Mask>> witness;  // an unseparated pair of k-subsets
};

// Exhaustive check over all unordered pairs of distinct k-subsets.
VerifyResult verify_separator(const PointConfig& cfg, const std::vector<ConvexSet>& sets,
                              SepMode mode);

// The 2n-4 intervals [first, x_i] and [x_i, last] (1 < i < n in sorted
// order) that containment-separate all pairs on a line. Requires d=1, k=2,
// n >= 4.
std::vector<CanonicalConvexSet> line_separator(const PointConfig& cfg);

// Both closed sides of every hyperplane through k-1 = d configuration
// points: 2*C(n, k-1) half-spaces containment-separating all k-subsets of a
// general-position configuration. Requires k = d+1 exactly (hyperplanes
// through k-1 points are only well-defined then); verified before return.
std::vector<HalfSpace> halfspace_separator(const PointConfig& cfg);

// Apex p=(1,1) plus n-1 rational unit-circle points in the first quadrant
// (tangent half-angle t = j/n); labels 0..n-2 follow the circle, label n-1
// is the apex. k=2; every inner circle point lies in conv of any enclosing
// pair together with the apex.
PointConfig gen_circle_apex(int n);

// 2*floor(n/4) outer points in antipodal unit-circle pairs plus inner points
// climbing a short segment from the origin, perturbed by exact 10^-6-scale
// offsets into general position; every inner point is interior to the hull
// of any two antipodal pairs. k=3, n >= 8.
PointConfig gen_diameter_fan(int n);

// n/3 triples: a point slightly inside the unit circle flanked by two
// on-circle points at small angular offsets; intersection-separation
// instances. n divisible by 3, n >= 6, k=2.
PointConfig gen_polar_triples(int n);

struct GeomSeparatorResult {
    CoverStatus status = CoverStatus::Found;
    int minimum = 0;
    int lower_bound = 0;
    std::vector<CanonicalConvexSet> witness;           // when Found
    std::vector<std::pair<Mask, Mask>> inseparable;    // equal-closure pairs (containment mode)
    std::optional<std::pair<Mask, Mask>> unseparated;  // when Infeasible under strict
};

// Exact minimum number of convex sets separating all pairs of k-subsets,
// over the complete candidate class of hull-closed canonical sets (hulls of
// label subsets, deduplicated by closure). Containment mode excludes
// equal-closure pairs and reports them; strict promotes them to
// infeasibility. n <= 10, d <= 3; containment mode needs k <= d+1.
GeomSeparatorResult min_geom_separator(const PointConfig& cfg, SepMode mode, bool strict = false,
                                       int max_size = kNoCoverBound);

}  // namespace sepfam
