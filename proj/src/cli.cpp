// Command-line surface: generators, solvers, exact oracles and certificate
// verification over the canonical JSON formats. Exit codes are part of the
// contract: 0 valid, 1 usage/input error (including digest mismatches and
// oracle budget exhaustion), 2 certificate invalid (witness printed),
// 3 internal verification failure.
#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sepfam/constraint_select.hpp"
#include "sepfam/geom_sep.hpp"
#include "sepfam/json_io.hpp"
#include "sepfam/linear_select.hpp"
#include "sepfam/oracle.hpp"
#include "sepfam/phased_select.hpp"
#include "sepfam/setsystem.hpp"
#include "sepfam/vc_tools.hpp"
#include "sha256.hpp"

namespace sepfam {
namespace {

constexpr int kExitValid = 0;
constexpr int kExitError = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 3;

// Floats never reach JSON directly; fixed six-digit strings keep the output
// canonical and byte-stable.
std::string fixed6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return std::string(buf);
}

void emit(const Json& j) { std::cout << canonical_dump(j); }

std::string file_digest(const std::string& path) { return sha256_hex(read_file_bytes(path)); }

std::vector<int> indices_of(const SetFamily& f, const std::vector<Mask>& chosen) {
    std::map<Mask, int> where;
    for (size_t i = 0; i < f.members.size(); ++i) where.emplace(f.members[i], int(i));
    std::vector<int> out;
    for (Mask a : chosen) {
        const auto it = where.find(a);
        if (it == where.end()) throw std::logic_error("selected mask is not a family member");
        out.push_back(it->second);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Mask> masks_at(const SetFamily& f, const std::vector<int>& indices) {
    std::vector<Mask> out;
    for (int i : indices) {
        if (i < 0 || size_t(i) >= f.members.size())
            throw std::invalid_argument("certificate index " + std::to_string(i) + " out of range");
        out.push_back(f.members[size_t(i)]);
    }
    return out;
}

Scope scope_from_string(const std::string& s) {
    if (s == "all-pairs") return Scope::AllPairs;
    if (s == "family-separated") return Scope::FamilySeparated;
    throw std::invalid_argument("unknown scope '" + s + "'");
}

Json hex_list(const std::vector<Mask>& masks) {
    Json a = Json::array();
    for (Mask m : masks) a.push_back(mask_to_hex(m));
    return a;
}

Json trace_to_json(const PhaseTrace& t) {
    Json entries = Json::array();
    for (const PhaseTraceEntry& e : t.entries) {
        Json hist = Json::object();
        for (const auto& [size, count] : e.block_histogram) hist[std::to_string(size)] = count;
        entries.push_back(Json{{"phase", e.phase},
                               {"selected", hex_list(e.selected)},
                               {"max_block_before", e.max_block_before},
                               {"max_block_after", e.max_block_after},
                               {"block_histogram", hist},
                               {"cumulative_selected", e.cumulative_selected},
                               {"loss", fixed6(e.loss)}});
    }
    return Json{{"initial_max_block", t.initial_max_block}, {"entries", entries}};
}

// --- gen ---

int finish_family_gen(const SeparationInstance& inst, const std::string& out,
                      Json extra = Json::object()) {
    write_json_file(out, instance_to_json(inst));
    Json summary{{"n", inst.family.ground.n},
                 {"members", inst.family.size()},
                 {"blocks", inst.parts.blocks.size()},
                 {"density", rat_to_string(inst.family.density())},
                 {"out", out}};
    summary.update(extra);
    emit(summary);
    return kExitValid;
}

int finish_geom_gen(const PointConfig& cfg, const std::string& out) {
    write_json_file(out, point_config_to_json(cfg));
    emit(Json{{"d", cfg.d}, {"k", cfg.k}, {"points", cfg.n()}, {"out", out}});
    return kExitValid;
}

int cmd_gen_satcond_lb(int m, int n_constraints, const std::string& out) {
    const ConstraintInstance inst = gen_satcond_lower_bound(m, n_constraints);
    write_json_file(out, constraint_instance_to_json(inst));
    emit(Json{{"n", inst.family.ground.n},
              {"members", inst.family.size()},
              {"constraints", inst.constraints.size()},
              {"density", rat_to_string(inst.family.density())},
              {"out", out}});
    return kExitValid;
}

// --- solve ---

int cmd_solve_logp1(const std::string& instance_path, const std::string& cert_path) {
    const SeparationInstance inst = instance_from_json(load_json_file(instance_path));
    const std::vector<Mask> selected = select_logp1(inst);
    if (const SeparationCheck check = is_separating(selected, inst, Scope::AllPairs); !check.ok)
        throw std::logic_error("output fails to separate pair (" +
                               std::to_string(check.witness->first) + "," +
                               std::to_string(check.witness->second) + ")");

    Certificate cert;
    cert.claim = "separates-parts";
    cert.scope = "all-pairs";
    cert.selected_indices = indices_of(inst.family, selected);
    cert.digest = file_digest(instance_path);
    write_json_file(cert_path, certificate_to_json(cert));

    const int max_block = inst.parts.max_block();
    emit(Json{{"algorithm", "logp1"},
              {"size", selected.size()},
              {"max_block", max_block},
              {"bound", ceil_log2(static_cast<unsigned long long>(max_block)) + 1},
              {"cert", cert_path}});
    return kExitValid;
}

int cmd_solve_logpalpha(const std::string& instance_path, const std::string& cert_path,
                        const std::string& trace_path) {
    const SeparationInstance inst = instance_from_json(load_json_file(instance_path));
    const PipelineResult res = select_logpalpha(inst);
    if (res.stalled) {
        std::cerr << "error: pipeline stalled: " << res.stall_reason << "\n";
        return kExitError;
    }
    if (const SeparationCheck check = is_separating(res.subfamily, inst, Scope::FamilySeparated);
        !check.ok)
        throw std::logic_error("output fails to separate pair (" +
                               std::to_string(check.witness->first) + "," +
                               std::to_string(check.witness->second) + ")");

    Certificate cert;
    cert.claim = "separates-parts";
    cert.scope = "family-separated";
    cert.selected_indices = indices_of(inst.family, res.subfamily);
    cert.digest = file_digest(instance_path);
    write_json_file(cert_path, certificate_to_json(cert));
    if (!trace_path.empty()) write_json_file(trace_path, trace_to_json(res.trace));

    // log2(max block) plus the polylog term in the inverse density.
    const double inv_log = -std::log2(static_cast<double>(inst.family.density()));
    const double bound = ceil_log2(static_cast<unsigned long long>(inst.family.ground.n)) +
                         40.0 * (1.0 + inv_log) * (1.0 + std::log2(1.0 + inv_log));
    const double loss = res.trace.entries.empty() ? 0.0 : res.trace.entries.back().loss;
    emit(Json{{"algorithm", "logpalpha"},
              {"size", res.subfamily.size()},
              {"initial_max_block", res.trace.initial_max_block},
              {"bound", fixed6(bound)},
              {"loss", fixed6(loss)},
              {"cert", cert_path}});
    return kExitValid;
}

int cmd_solve_satcond(const std::string& instance_path, const std::string& cert_path,
                      std::uint64_t seed) {
    const ConstraintInstance inst = constraint_instance_from_json(load_json_file(instance_path));
    SatcondParams params;
    params.seed = seed;
    const SatcondResult res = select_satcond(inst.family, inst.constraints, params);
    for (size_t i = 0; i < inst.constraints.size(); ++i) {
        bool hit = false;
        for (Mask a : res.members)
            if (satisfies(a, inst.constraints[i])) { hit = true; break; }
        if (!hit)
            throw std::logic_error("output satisfies no member of constraint " + std::to_string(i));
    }

    Certificate cert;
    cert.claim = "satisfies-constraints";
    cert.selected_indices = res.member_indices;
    cert.digest = file_digest(instance_path);
    write_json_file(cert_path, certificate_to_json(cert));

    emit(Json{{"algorithm", "satcond"},
              {"size", res.member_indices.size()},
              {"t_random", res.t_random},
              {"random_kept", res.random_kept},
              {"greedy_added", res.greedy_added},
              {"cert", cert_path}});
    return kExitValid;
}

// --- oracle ---

void maybe_write_family_cert(const std::string& cert_path, const std::string& claim,
                             const std::string& scope, const std::vector<int>& indices,
                             const std::string& instance_path) {
    if (cert_path.empty()) return;
    Certificate cert;
    cert.claim = claim;
    cert.scope = scope;
    cert.selected_indices = indices;
    cert.digest = file_digest(instance_path);
    write_json_file(cert_path, certificate_to_json(cert));
}

int cmd_oracle_min_separator(const std::string& instance_path, const std::string& scope_str,
                             int max_size, const std::string& cert_path) {
    const SeparationInstance inst = instance_from_json(load_json_file(instance_path));
    const Scope scope = scope_from_string(scope_str);
    const SeparatorMinimum res = min_separating_subfamily(inst, scope, max_size);
    Json j{{"problem", "min-separator"}, {"scope", scope_str}, {"lower_bound", res.lower_bound}};
    switch (res.status) {
        case CoverStatus::Found:
            j["status"] = "found";
            j["minimum"] = res.minimum;
            j["witness"] = res.member_indices;
            maybe_write_family_cert(cert_path, "separates-parts", scope_str, res.member_indices,
                                    instance_path);
            emit(j);
            return kExitValid;
        case CoverStatus::Infeasible:
            j["status"] = "infeasible";
            j["pair"] = Json::array({res.inseparable_pair->first, res.inseparable_pair->second});
            emit(j);
            return kExitValid;
        case CoverStatus::BoundExceeded:
            j["status"] = "bound-exceeded";
            emit(j);
            return kExitError;
    }
    throw std::logic_error("unreachable oracle status");
}

int cmd_oracle_min_constraints(const std::string& instance_path, int max_size,
                               const std::string& cert_path) {
    const ConstraintInstance inst = constraint_instance_from_json(load_json_file(instance_path));
    const SatisfierMinimum res = min_satisfying_subfamily(inst.family, inst.constraints, max_size);
    Json j{{"problem", "min-constraints"}, {"lower_bound", res.lower_bound}};
    switch (res.status) {
        case CoverStatus::Found:
            j["status"] = "found";
            j["minimum"] = res.minimum;
            j["witness"] = res.member_indices;
            maybe_write_family_cert(cert_path, "satisfies-constraints", "", res.member_indices,
                                    instance_path);
            emit(j);
            return kExitValid;
        case CoverStatus::Infeasible:
            j["status"] = "infeasible";
            j["unsatisfiable_constraint"] = res.unsatisfiable_constraint;
            emit(j);
            return kExitValid;
        case CoverStatus::BoundExceeded:
            j["status"] = "bound-exceeded";
            emit(j);
            return kExitError;
    }
    throw std::logic_error("unreachable oracle status");
}

int cmd_oracle_min_geom(const std::string& instance_path, const std::string& mode_str, bool strict,
                        int max_size, const std::string& cert_path) {
    const PointConfig cfg = point_config_from_json(load_json_file(instance_path));
    SepMode mode;
    if (mode_str == "containment") mode = SepMode::Containment;
    else if (mode_str == "intersection") mode = SepMode::Intersection;
    else throw std::invalid_argument("unknown mode '" + mode_str + "'");

    const GeomSeparatorResult res = min_geom_separator(cfg, mode, strict, max_size);
    Json j{{"problem", "min-geom"}, {"mode", mode_str}, {"lower_bound", res.lower_bound}};
    if (!res.inseparable.empty()) {
        Json pairs = Json::array();
        for (const auto& [a, b] : res.inseparable)
            pairs.push_back(Json::array({mask_to_hex(a), mask_to_hex(b)}));
        j["inseparable"] = pairs;
    }
    switch (res.status) {
        case CoverStatus::Found: {
            j["status"] = "found";
            j["minimum"] = res.minimum;
            Json sets = Json::array();
            for (const CanonicalConvexSet& s : res.witness) sets.push_back(convex_set_to_json(s));
            j["witness"] = sets;
            if (!cert_path.empty()) {
                Certificate cert;
                cert.claim = mode == SepMode::Containment ? "containment-separator"
                                                          : "intersection-separator";
                for (const CanonicalConvexSet& s : res.witness) cert.selected_sets.emplace_back(s);
                cert.digest = file_digest(instance_path);
                write_json_file(cert_path, certificate_to_json(cert));
            }
            emit(j);
            return kExitValid;
        }
        case CoverStatus::Infeasible:
            j["status"] = "infeasible";
            if (res.unseparated)
                j["pair"] = Json::array(
                    {mask_to_hex(res.unseparated->first), mask_to_hex(res.unseparated->second)});
            emit(j);
            return kExitValid;
        case CoverStatus::BoundExceeded:
            j["status"] = "bound-exceeded";
            emit(j);
            return kExitError;
    }
    throw std::logic_error("unreachable oracle status");
}

// --- verify ---

int cmd_verify(const std::string& instance_path, const std::string& cert_path) {
    const Certificate cert = certificate_from_json(load_json_file(cert_path));
    if (file_digest(instance_path) != cert.digest) {
        std::cerr << "error: certificate digest does not match '" << instance_path << "'\n";
        return kExitError;
    }

    if (cert.claim == "separates-parts") {
        const SeparationInstance inst = instance_from_json(load_json_file(instance_path));
        const Scope scope = scope_from_string(cert.scope);
        const std::vector<Mask> masks = masks_at(inst.family, cert.selected_indices);
        if (const SeparationCheck check = is_separating(masks, inst, scope); !check.ok) {
            emit(Json{{"status", "invalid"},
                      {"witness", Json{{"pair", Json::array({check.witness->first,
                                                             check.witness->second})}}}});
            return kExitInvalid;
        }
    } else if (cert.claim == "satisfies-constraints") {
        const ConstraintInstance inst = constraint_instance_from_json(load_json_file(instance_path));
        const std::vector<Mask> masks = masks_at(inst.family, cert.selected_indices);
        for (size_t i = 0; i < inst.constraints.size(); ++i) {
            bool hit = false;
            for (Mask a : masks)
                if (satisfies(a, inst.constraints[i])) { hit = true; break; }
            if (!hit) {
                emit(Json{{"status", "invalid"}, {"witness", Json{{"constraint", i}}}});
                return kExitInvalid;
            }
        }
    } else {
        const PointConfig cfg = point_config_from_json(load_json_file(instance_path));
        const SepMode mode = cert.claim == "containment-separator" ? SepMode::Containment
                                                                   : SepMode::Intersection;
        const VerifyResult vr = verify_separator(cfg, cert.selected_sets, mode);
        if (!vr.ok) {
            emit(Json{{"status", "invalid"},
                      {"witness", Json{{"pair", Json::array({mask_to_hex(vr.witness->first),
                                                             mask_to_hex(vr.witness->second)})}}}});
            return kExitInvalid;
        }
    }
    emit(Json{{"status", "valid"}});
    return kExitValid;
}

// --- vcdim / shatter ---

int cmd_vcdim(const std::string& instance_path) {
    const SeparationInstance inst = instance_from_json(load_json_file(instance_path));
    const VCReport report = vc_dimension(inst.family);
    emit(Json{{"dimension", report.dimension}, {"witness", mask_to_hex(report.witness)}});
    return kExitValid;
}

int cmd_shatter(const std::string& instance_path, int m) {
    const SeparationInstance inst = instance_from_json(load_json_file(instance_path));
    emit(Json{{"m", m}, {"value", shatter_function(inst.family, m)}});
    return kExitValid;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"separating set families: generators, selection algorithms, exact oracles"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads; results are identical for any value")
        ->check(CLI::PositiveNumber);

    std::function<int()> action;

    // gen
    auto* gen = app.add_subcommand("gen", "write a generated instance as canonical JSON");
    gen->require_subcommand(1);
    gen->fallthrough();
    struct {
        int m = 2, n_constraints = 3, n = 2, d = 1, universe = 2, blocks = 1;
        std::uint64_t seed = 0;
        std::string density, out;
    } g;

    auto* g_satcond = gen->add_subcommand("satcond-lb", "constraint instance needing all N members");
    g_satcond->add_option("--m", g.m, "constraint size")->required();
    g_satcond->add_option("--N", g.n_constraints, "constraint count")->required();
    g_satcond->add_option("--out", g.out, "output path")->required();
    g_satcond->callback([&] {
        action = [&] { return cmd_gen_satcond_lb(g.m, g.n_constraints, g.out); };
    });

    auto* g_logp1 = gen->add_subcommand(
        "logp1-tight", "blocks of size n that defeat every ceil(log2 n)-member subfamily");
    g_logp1->add_option("--n", g.n, "block size")->required();
    g_logp1->add_option("--out", g.out, "output path")->required();
    g_logp1->callback([&] {
        action = [&] { return finish_family_gen(gen_logp1_tight(g.n), g.out); };
    });

    auto* g_vc = gen->add_subcommand("vc-tight", "family of VC dimension d needing ~(u-1)/d members");
    g_vc->add_option("--d", g.d, "VC dimension")->required();
    g_vc->add_option("--universe", g.universe, "ground set size")->required();
    g_vc->add_option("--out", g.out, "output path")->required();
    g_vc->callback([&] {
        action = [&] {
            const SetFamily f = gen_vc_tight_family(g.d, g.universe);
            SeparationInstance inst;
            inst.parts = Partition::single_block(f.ground.n);
            inst.family = f;
            return finish_family_gen(inst, g.out);
        };
    });

    auto* g_dual = gen->add_subcommand("dual-binomial",
                                       "m members separating all (2^d - 1)-subsets of an m-set");
    g_dual->add_option("--m", g.m, "point count")->required();
    g_dual->add_option("--d", g.d, "VC dimension parameter")->required();
    g_dual->add_option("--out", g.out, "output path")->required();
    g_dual->callback([&] {
        action = [&] {
            const DualBinomialFamily dual = gen_dual_binomial_separator(g.m, g.d);
            SeparationInstance inst;
            inst.parts = Partition::single_block(dual.family.ground.n);
            inst.family = dual.family;
            return finish_family_gen(inst, g.out, Json{{"ground_subsets", hex_list(dual.ground_subsets)}});
        };
    });

    auto* g_circle = gen->add_subcommand("circle-apex", "circle points plus an apex, k = 2");
    g_circle->add_option("--n", g.n, "point count")->required();
    g_circle->add_option("--out", g.out, "output path")->required();
    g_circle->callback([&] {
        action = [&] { return finish_geom_gen(gen_circle_apex(g.n), g.out); };
    });

    auto* g_fan = gen->add_subcommand("diameter-fan", "antipodal pairs plus interior points, k = 3");
    g_fan->add_option("--n", g.n, "point count")->required();
    g_fan->add_option("--out", g.out, "output path")->required();
    g_fan->callback([&] {
        action = [&] { return finish_geom_gen(gen_diameter_fan(g.n), g.out); };
    });

    auto* g_polar = gen->add_subcommand("polar-triples",
                                        "near-circle triples for intersection separation, k = 2");
    g_polar->add_option("--n", g.n, "point count (divisible by 3)")->required();
    g_polar->add_option("--out", g.out, "output path")->required();
    g_polar->callback([&] {
        action = [&] { return finish_geom_gen(gen_polar_triples(g.n), g.out); };
    });

    auto* g_rand = gen->add_subcommand("random-family", "seeded family of ceil(density * 2^n) masks");
    g_rand->add_option("--n", g.n, "ground set size")->required();
    g_rand->add_option("--density", g.density, "target density as num/den")->required();
    auto* g_rand_seed = g_rand->add_option("--seed", g.seed, "RNG seed");
    g_rand->add_option("--blocks", g.blocks, "contiguous block count");
    g_rand->add_option("--out", g.out, "output path")->required();
    g_rand->callback([&] {
        action = [&] {
            if (g_rand_seed->count() == 0)
                throw std::invalid_argument("random-family requires --seed");
            return finish_family_gen(
                gen_random_family(g.n, rat_from_string(g.density), g.seed, g.blocks), g.out);
        };
    });

    // solve
    auto* solve = app.add_subcommand("solve", "run a selection algorithm and write a certificate");
    solve->fallthrough();
    struct {
        std::string algorithm, instance, cert, trace;
        std::uint64_t seed = 0;
    } s;
    solve->add_option("--algorithm", s.algorithm, "logp1 | logpalpha | satcond")
        ->required()
        ->check(CLI::IsMember({"logp1", "logpalpha", "satcond"}));
    solve->add_option("--instance", s.instance, "instance JSON path")->required();
    solve->add_option("--cert", s.cert, "certificate output path")->required();
    auto* solve_seed = solve->add_option("--seed", s.seed, "RNG seed (required for satcond)");
    auto* solve_trace = solve->add_option("--trace", s.trace, "phase trace output path (logpalpha)");
    solve->callback([&] {
        action = [&] {
            if (s.algorithm == "satcond") {
                if (solve_seed->count() == 0)
                    throw std::invalid_argument("satcond requires --seed (no implicit default)");
                if (solve_trace->count() > 0)
                    throw std::invalid_argument("--trace is only available for logpalpha");
                return cmd_solve_satcond(s.instance, s.cert, s.seed);
            }
            if (solve_seed->count() > 0)
                throw std::invalid_argument("--seed applies to satcond only");
            if (s.algorithm == "logp1") {
                if (solve_trace->count() > 0)
                    throw std::invalid_argument("--trace is only available for logpalpha");
                return cmd_solve_logp1(s.instance, s.cert);
            }
            return cmd_solve_logpalpha(s.instance, s.cert, s.trace);
        };
    });

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact minimum with a lexicographically least witness");
    oracle->fallthrough();
    struct {
        std::string problem, instance, scope = "all-pairs", mode = "containment", cert;
        bool strict = false;
        int max_size = kNoCoverBound;
    } o;
    oracle->add_option("--problem", o.problem, "min-separator | min-constraints | min-geom")
        ->required()
        ->check(CLI::IsMember({"min-separator", "min-constraints", "min-geom"}));
    oracle->add_option("--instance", o.instance, "instance JSON path")->required();
    oracle->add_option("--scope", o.scope, "all-pairs | family-separated (min-separator)")
        ->check(CLI::IsMember({"all-pairs", "family-separated"}));
    oracle->add_option("--mode", o.mode, "containment | intersection (min-geom)")
        ->check(CLI::IsMember({"containment", "intersection"}));
    oracle->add_flag("--strict", o.strict, "min-geom: equal-closure pairs make the instance infeasible");
    oracle->add_option("--max-size", o.max_size, "search budget; exceeding it exits 1")
        ->check(CLI::PositiveNumber);
    oracle->add_option("--cert", o.cert, "also write the witness as a certificate");
    oracle->callback([&] {
        action = [&] {
            if (o.problem == "min-separator")
                return cmd_oracle_min_separator(o.instance, o.scope, o.max_size, o.cert);
            if (o.problem == "min-constraints")
                return cmd_oracle_min_constraints(o.instance, o.max_size, o.cert);
            return cmd_oracle_min_geom(o.instance, o.mode, o.strict, o.max_size, o.cert);
        };
    });

    // verify
    auto* verify = app.add_subcommand("verify", "check a certificate against its instance");
    verify->fallthrough();
    struct {
        std::string instance, cert;
    } v;
    verify->add_option("--instance", v.instance, "instance JSON path")->required();
    verify->add_option("--cert", v.cert, "certificate JSON path")->required();
    verify->callback([&] {
        action = [&] { return cmd_verify(v.instance, v.cert); };
    });

    // vcdim / shatter
    auto* vcdim = app.add_subcommand("vcdim", "exact VC dimension with a shattering witness");
    vcdim->fallthrough();
    std::string vc_instance;
    vcdim->add_option("--instance", vc_instance, "instance JSON path")->required();
    vcdim->callback([&] {
        action = [&] { return cmd_vcdim(vc_instance); };
    });

    auto* shatter = app.add_subcommand("shatter", "maximum trace count over m-subsets");
    shatter->fallthrough();
    struct {
        std::string instance;
        int m = 0;
    } sh;
    shatter->add_option("--instance", sh.instance, "instance JSON path")->required();
    shatter->add_option("--m", sh.m, "subset size")->required();
    shatter->callback([&] {
        action = [&] { return cmd_shatter(sh.instance, sh.m); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitValid : kExitError;
    }

    if (!action) {
        std::cerr << app.help();
        return kExitError;
    }
    try {
        return action();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::logic_error& e) {
        std::cerr << "internal verification failure: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace sepfam
