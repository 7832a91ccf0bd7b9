// Thin bindings over the selection algorithms, oracles and generators.
// Masks are plain ints, partitions are lists of lists, rationals cross the
// boundary as "num/den" strings; nothing here adds logic of its own.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "sepfam/constraint_select.hpp"
#include "sepfam/geom_sep.hpp"
#include "sepfam/linear_select.hpp"
#include "sepfam/oracle.hpp"
#include "sepfam/phased_select.hpp"
#include "sepfam/setsystem.hpp"
#include "sepfam/vc_tools.hpp"

namespace py = pybind11;
using namespace sepfam;

namespace {

using Parts = std::optional<std::vector<std::vector<int>>>;

SeparationInstance make_instance(int n, const std::vector<Mask>& members, const Parts& parts) {
    const GroundSet g(n);
    SeparationInstance inst;
    inst.family = SetFamily(g, members);
    inst.parts = parts ? Partition::of_blocks(*parts, g) : Partition::single_block(n);
    return inst;
}

Scope parse_scope(const std::string& s) {
    if (s == "all-pairs") return Scope::AllPairs;
    if (s == "family-separated") return Scope::FamilySeparated;
    throw std::invalid_argument("unknown scope '" + s + "'");
}

SepMode parse_mode(const std::string& s) {
    if (s == "containment") return SepMode::Containment;
    if (s == "intersection") return SepMode::Intersection;
    throw std::invalid_argument("unknown mode '" + s + "'");
}

std::string status_name(CoverStatus s) {
    switch (s) {
        case CoverStatus::Found: return "found";
        case CoverStatus::Infeasible: return "infeasible";
        case CoverStatus::BoundExceeded: return "bound-exceeded";
    }
    throw std::logic_error("unreachable status");
}

py::dict instance_dict(const SeparationInstance& inst) {
    py::dict d;
    d["n"] = inst.family.ground.n;
    d["members"] = inst.family.members;
    d["parts"] = inst.parts.blocks;
    d["density"] = rat_to_string(inst.family.density());
    return d;
}

PointConfig make_config(int d, int k, const std::vector<std::vector<std::string>>& points) {
    std::vector<Vec> pts;
    for (const auto& p : points) {
        Vec v;
        for (const std::string& c : p) v.push_back(rat_from_string(c));
        pts.push_back(std::move(v));
    }
    return PointConfig(d, k, std::move(pts));
}

std::vector<std::vector<std::string>> config_points(const PointConfig& cfg) {
    std::vector<std::vector<std::string>> out;
    for (const Vec& p : cfg.points) {
        std::vector<std::string> row;
        for (const Rat& c : p) row.push_back(rat_to_string(c));
        out.push_back(std::move(row));
    }
    return out;
}

py::dict config_dict(const PointConfig& cfg) {
    py::dict d;
    d["d"] = cfg.d;
    d["k"] = cfg.k;
    d["points"] = config_points(cfg);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "separating set families: selection algorithms, exact oracles, generators";

    m.def(
        "density",
        [](int n, const std::vector<Mask>& members) {
            return rat_to_string(SetFamily(GroundSet(n), members).density());
        },
        py::arg("n"), py::arg("members"), "Exact |F| / 2^n as a num/den string.");

    m.def(
        "is_separating",
        [](int n, const std::vector<Mask>& members, const std::vector<Mask>& subfamily,
           const Parts& parts, const std::string& scope) {
            const auto check =
                sepfam::is_separating(subfamily, make_instance(n, members, parts), parse_scope(scope));
            return py::make_tuple(check.ok, check.witness);
        },
        py::arg("n"), py::arg("members"), py::arg("subfamily"), py::arg("parts") = py::none(),
        py::arg("scope") = "all-pairs",
        "(ok, witness_pair): does the subfamily separate every in-scope pair?");

    m.def(
        "separated_pairs",
        [](int n, const std::vector<Mask>& members, const Parts& parts) {
            return sepfam::separated_pairs(make_instance(n, members, parts));
        },
        py::arg("n"), py::arg("members"), py::arg("parts") = py::none(),
        "Within-block pairs some member separates, ascending.");

    m.def(
        "select_logp1",
        [](int n, const std::vector<Mask>& members, const Parts& parts) {
            return sepfam::select_logp1(make_instance(n, members, parts));
        },
        py::arg("n"), py::arg("members"), py::arg("parts") = py::none(),
        "Separating subfamily of <= ceil(log2 max_block) + 1 members; density must exceed 1/2.");

    m.def(
        "select_logpalpha",
        [](int n, const std::vector<Mask>& members, const Parts& parts) {
            const PipelineResult res = sepfam::select_logpalpha(make_instance(n, members, parts));
            py::dict d;
            d["subfamily"] = res.subfamily;
            d["stalled"] = res.stalled;
            d["stall_reason"] = res.stall_reason;
            d["initial_max_block"] = res.trace.initial_max_block;
            d["loss"] = res.trace.entries.empty() ? 0.0 : res.trace.entries.back().loss;
            return d;
        },
        py::arg("n"), py::arg("members"), py::arg("parts") = py::none(),
        "Four-phase selection for arbitrary positive density.");

    m.def(
        "select_satcond",
        [](int n, const std::vector<Mask>& members,
           const std::vector<std::pair<Mask, Mask>>& constraints, std::uint64_t seed,
           const std::string& epsilon) {
            std::vector<Constraint> cs;
            for (const auto& [v, w] : constraints) cs.emplace_back(v, w);
            SatcondParams params;
            params.epsilon = rat_from_string(epsilon);
            params.seed = seed;
            const SatcondResult res =
                sepfam::select_satcond(SetFamily(GroundSet(n), members), cs, params);
            py::dict d;
            d["member_indices"] = res.member_indices;
            d["members"] = res.members;
            d["t_random"] = res.t_random;
            d["random_kept"] = res.random_kept;
            d["greedy_added"] = res.greedy_added;
            return d;
        },
        py::arg("n"), py::arg("members"), py::arg("constraints"), py::arg("seed"),
        py::arg("epsilon") = "1/4",
        "Seeded random draws plus greedy completion; satisfies every (v, w) constraint.");

    m.def(
        "brace_daykin_cover",
        [](int ground_size, const std::vector<Mask>& fprime, int t) {
            return sepfam::brace_daykin_cover(ground_size, fprime, t);
        },
        py::arg("ground_size"), py::arg("fprime"), py::arg("t"),
        "Least <= t members whose union is the full ground set, or None.");

    m.def(
        "min_separator",
        [](int n, const std::vector<Mask>& members, const Parts& parts, const std::string& scope,
           int max_size) {
            const SeparatorMinimum res = min_separating_subfamily(make_instance(n, members, parts),
                                                                  parse_scope(scope), max_size);
            py::dict d;
            d["status"] = status_name(res.status);
            d["minimum"] = res.minimum;
            d["lower_bound"] = res.lower_bound;
            d["witness"] = res.member_indices;
            d["inseparable_pair"] = res.inseparable_pair;
            return d;
        },
        py::arg("n"), py::arg("members"), py::arg("parts") = py::none(),
        py::arg("scope") = "all-pairs", py::arg("max_size") = kNoCoverBound,
        "Exact minimum separating subfamily (exhaustive branch and bound).");

    m.def(
        "min_constraints",
        [](int n, const std::vector<Mask>& members,
           const std::vector<std::pair<Mask, Mask>>& constraints, int max_size) {
            std::vector<Constraint> cs;
            for (const auto& [v, w] : constraints) cs.emplace_back(v, w);
            const SatisfierMinimum res =
                min_satisfying_subfamily(SetFamily(GroundSet(n), members), cs, max_size);
            py::dict d;
            d["status"] = status_name(res.status);
            d["minimum"] = res.minimum;
            d["lower_bound"] = res.lower_bound;
            d["witness"] = res.member_indices;
            return d;
        },
        py::arg("n"), py::arg("members"), py::arg("constraints"), py::arg("max_size") = kNoCoverBound,
        "Exact minimum subfamily satisfying every constraint.");

    m.def(
        "vc_dimension",
        [](int n, const std::vector<Mask>& members) {
            const VCReport r = sepfam::vc_dimension(SetFamily(GroundSet(n), members));
            return py::make_tuple(r.dimension, r.witness);
        },
        py::arg("n"), py::arg("members"), "(dimension, least shattered witness mask).");

    m.def(
        "shatter_function",
        [](int n, const std::vector<Mask>& members, int m_) {
            return sepfam::shatter_function(SetFamily(GroundSet(n), members), m_);
        },
        py::arg("n"), py::arg("members"), py::arg("m"),
        "Maximum distinct trace count over m-subsets.");

    m.def(
        "gen_random_family",
        [](int n, const std::string& density, std::uint64_t seed, int blocks) {
            return instance_dict(sepfam::gen_random_family(n, rat_from_string(density), seed, blocks));
        },
        py::arg("n"), py::arg("density"), py::arg("seed"), py::arg("blocks") = 1,
        "Seeded family of ceil(density * 2^n) distinct masks.");

    m.def(
        "gen_logp1_tight",
        [](int n) { return instance_dict(sepfam::gen_logp1_tight(n)); }, py::arg("n"),
        "Blocks of size n defeating every ceil(log2 n)-member subfamily.");

    m.def(
        "gen_satcond_lower_bound",
        [](int m_, int n_constraints) {
            const ConstraintInstance inst = sepfam::gen_satcond_lower_bound(m_, n_constraints);
            py::dict d;
            d["n"] = inst.family.ground.n;
            d["members"] = inst.family.members;
            std::vector<std::pair<Mask, Mask>> cs;
            for (const Constraint& c : inst.constraints) cs.emplace_back(c.v, c.w);
            d["constraints"] = cs;
            d["density"] = rat_to_string(inst.family.density());
            return d;
        },
        py::arg("m"), py::arg("N"), "Constraint instance whose minimum satisfier has all N members.");

    m.def(
        "gen_vc_tight_family",
        [](int d, int universe) {
            const SetFamily f = sepfam::gen_vc_tight_family(d, universe);
            py::dict out;
            out["n"] = f.ground.n;
            out["members"] = f.members;
            return out;
        },
        py::arg("d"), py::arg("universe"),
        "VC dimension exactly d; separating needs about (universe-1)/d members.");

    m.def(
        "gen_dual_binomial_separator",
        [](int m_, int d) {
            const DualBinomialFamily dual = sepfam::gen_dual_binomial_separator(m_, d);
            py::dict out;
            out["n"] = dual.family.ground.n;
            out["members"] = dual.family.members;
            out["ground_subsets"] = dual.ground_subsets;
            return out;
        },
        py::arg("m"), py::arg("d"),
        "m members separating the C(m, 2^d - 1) subsets of an m-point set.");

    m.def(
        "gen_circle_apex", [](int n) { return config_dict(sepfam::gen_circle_apex(n)); },
        py::arg("n"), "Rational circle points plus an apex; k = 2.");
    m.def(
        "gen_diameter_fan", [](int n) { return config_dict(sepfam::gen_diameter_fan(n)); },
        py::arg("n"), "Antipodal pairs plus perturbed interior points; k = 3.");
    m.def(
        "gen_polar_triples", [](int n) { return config_dict(sepfam::gen_polar_triples(n)); },
        py::arg("n"), "Near-circle triples for intersection separation; k = 2.");

    m.def(
        "min_geom_separator",
        [](int d, int k, const std::vector<std::vector<std::string>>& points,
           const std::string& mode, bool strict, int max_size) {
            const GeomSeparatorResult res =
                sepfam::min_geom_separator(make_config(d, k, points), parse_mode(mode), strict, max_size);
            py::dict out;
            out["status"] = status_name(res.status);
            out["minimum"] = res.minimum;
            out["lower_bound"] = res.lower_bound;
            std::vector<std::vector<int>> hulls;
            for (const CanonicalConvexSet& s : res.witness) hulls.push_back(mask_elements(s.generators));
            out["witness"] = hulls;
            out["inseparable"] = res.inseparable;
            out["unseparated"] = res.unseparated;
            return out;
        },
        py::arg("d"), py::arg("k"), py::arg("points"), py::arg("mode") = "containment",
        py::arg("strict") = false, py::arg("max_size") = kNoCoverBound,
        "Exact minimum over canonical convex sets; coordinates are num/den strings.");

    m.def(
        "verify_geom_separator",
        [](int d, int k, const std::vector<std::vector<std::string>>& points,
           const std::vector<std::vector<int>>& hulls, const std::string& mode) {
            const PointConfig cfg = make_config(d, k, points);
            std::vector<ConvexSet> sets;
            for (const auto& labels : hulls) {
                const Mask g = mask_of(labels);
                sets.emplace_back(CanonicalConvexSet{g, g});
            }
            const VerifyResult vr = verify_separator(cfg, sets, parse_mode(mode));
            return py::make_tuple(vr.ok, vr.witness);
        },
        py::arg("d"), py::arg("k"), py::arg("points"), py::arg("hulls"),
        py::arg("mode") = "containment",
        "(ok, witness_pair): do the hulls separate every pair of k-subsets?");
}
