#include "sepfam/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sepfam {

namespace {

Json rat_to_json(const Rat& r) {
    return Json::array({numerator(r).str(), denominator(r).str()});
}

Rat rat_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
        throw std::invalid_argument("rational must be a [\"num\",\"den\"] string pair");
    const Int num(j[0].get<std::string>());
    const Int den(j[1].get<std::string>());
    if (den <= 0) throw std::invalid_argument("rational denominator must be positive");
    return Rat(num, den);
}

std::vector<int> ids_from_json(const Json& j, int n, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const Json& e : j) {
        if (!e.is_number_integer()) throw std::invalid_argument(std::string(what) + " must hold integers");
        const int v = e.get<int>();
        if (v < 0 || v >= n) throw std::invalid_argument(std::string(what) + " element out of range");
        out.push_back(v);
    }
    return out;
}

std::vector<Mask> family_from_json(const Json& j, const GroundSet& g) {
    if (!j.is_array()) throw std::invalid_argument("\"family\" must be an array");
    std::vector<Mask> members;
    members.reserve(j.size());
    for (const Json& e : j) {
        if (!e.is_string()) throw std::invalid_argument("family members must be hex strings");
        const Mask m = mask_from_hex(e.get<std::string>());
        if (!g.contains(m)) throw std::invalid_argument("family member outside the ground set");
        members.push_back(m);
    }
    return members;
}

int ground_size_from_json(const Json& j) {
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw std::invalid_argument("instance needs an integer \"n\"");
    return j["n"].get<int>();
}

}  // namespace

Json instance_to_json(const SeparationInstance& inst) {
    Json j;
    j["n"] = inst.family.ground.n;
    Json fam = Json::array();
    for (Mask m : inst.family.members) fam.push_back(mask_to_hex(m));
    j["family"] = fam;
    Json parts = Json::array();
    for (const auto& blk : inst.parts.blocks) parts.push_back(blk);
    j["parts"] = parts;
    return j;
}

SeparationInstance instance_from_json(const Json& j) {
    const int n = ground_size_from_json(j);
    const GroundSet g(n);
    SetFamily fam(g, family_from_json(j.value("family", Json::array()), g));
    Partition parts = Partition::single_block(n);
    if (j.contains("parts")) {
        if (!j["parts"].is_array()) throw std::invalid_argument("\"parts\" must be an array");
        std::vector<std::vector<int>> blocks;
        for (const Json& b : j["parts"]) blocks.push_back(ids_from_json(b, n, "block"));
        parts = Partition::of_blocks(std::move(blocks), g);
    }
    return {std::move(fam), std::move(parts)};
}

Json constraint_instance_to_json(const ConstraintInstance& inst) {
    Json j;
    j["n"] = inst.family.ground.n;
    Json fam = Json::array();
    for (Mask m : inst.family.members) fam.push_back(mask_to_hex(m));
    j["family"] = fam;
    Json cs = Json::array();
    for (const Constraint& c : inst.constraints) {
        Json e;
        e["v"] = mask_elements(c.v);
        e["w"] = mask_elements(c.w);
        cs.push_back(e);
    }
    j["constraints"] = cs;
    return j;
}

ConstraintInstance constraint_instance_from_json(const Json& j) {
    const int n = ground_size_from_json(j);
    const GroundSet g(n);
    ConstraintInstance inst;
    inst.family = SetFamily(g, family_from_json(j.value("family", Json::array()), g));
    if (!j.contains("constraints") || !j["constraints"].is_array())
        throw std::invalid_argument("constraint instance needs a \"constraints\" array");
    for (const Json& e : j["constraints"]) {
        if (!e.is_object()) throw std::invalid_argument("constraints must be objects");
        const Mask v = mask_of(ids_from_json(e.value("v", Json::array()), n, "constraint v"));
        const Mask w = mask_of(ids_from_json(e.value("w", Json::array()), n, "constraint w"));
        inst.constraints.emplace_back(v, w);
    }
    return inst;
}

Json point_config_to_json(const PointConfig& cfg) {
    Json j;
    j["d"] = cfg.d;
    j["k"] = cfg.k;
    Json pts = Json::array();
    for (const Vec& p : cfg.points) {
        Json coords = Json::array();
        for (const Rat& c : p) coords.push_back(rat_to_json(c));
        pts.push_back(coords);
    }
    j["points"] = pts;
    return j;
}

PointConfig point_config_from_json(const Json& j) {
    if (!j.contains("d") || !j["d"].is_number_integer() || !j.contains("k") ||
        !j["k"].is_number_integer() || !j.contains("points") || !j["points"].is_array())
        throw std::invalid_argument("point configuration needs integer \"d\", \"k\" and a \"points\" array");
    const int d = j["d"].get<int>();
    std::vector<Vec> points;
    for (const Json& p : j["points"]) {
        if (!p.is_array() || int(p.size()) != d)
            throw std::invalid_argument("each point needs exactly d coordinates");
        Vec v;
        for (const Json& c : p) v.push_back(rat_from_json(c));
        points.push_back(std::move(v));
    }
    return {d, j["k"].get<int>(), std::move(points)};
}

Json convex_set_to_json(const ConvexSet& c) {
    Json j;
    if (const auto* hull = std::get_if<CanonicalConvexSet>(&c)) {
        j["hull"] = mask_elements(hull->generators);
    } else {
        const auto& h = std::get<HalfSpace>(c);
        Json normal = Json::array();
        for (const Rat& x : h.normal) normal.push_back(rat_to_json(x));
        j["halfspace"] = Json{{"normal", normal}, {"offset", rat_to_json(h.offset)}};
    }
    return j;
}

ConvexSet convex_set_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("convex set must be an object");
    if (j.contains("hull")) {
        const Json& labels = j["hull"];
        if (!labels.is_array()) throw std::invalid_argument("\"hull\" must be an array of labels");
        Mask gens = 0;
        for (const Json& e : labels) {
            if (!e.is_number_integer()) throw std::invalid_argument("hull labels must be integers");
            const int v = e.get<int>();
            if (v < 0 || v >= kMaxGroundSize) throw std::invalid_argument("hull label out of range");
            gens |= bit(v);
        }
        return CanonicalConvexSet{gens, gens};
    }
    if (j.contains("halfspace")) {
        const Json& h = j["halfspace"];
        if (!h.is_object() || !h.contains("normal") || !h["normal"].is_array() || !h.contains("offset"))
            throw std::invalid_argument("\"halfspace\" needs \"normal\" and \"offset\"");
        HalfSpace out;
        for (const Json& c : h["normal"]) out.normal.push_back(rat_from_json(c));
        out.offset = rat_from_json(h["offset"]);
        if (std::all_of(out.normal.begin(), out.normal.end(), [](const Rat& r) { return r == 0; }))
            throw std::invalid_argument("half-space normal must be nonzero");
        return out;
    }
    throw std::invalid_argument("convex set must have \"hull\" or \"halfspace\"");
}

Json certificate_to_json(const Certificate& c) {
    Json j;
    j["claim"] = c.claim;
    j["digest"] = c.digest;
    if (!c.scope.empty()) j["scope"] = c.scope;
    if (c.claim == "containment-separator" || c.claim == "intersection-separator") {
        Json sets = Json::array();
        for (const ConvexSet& s : c.selected_sets) sets.push_back(convex_set_to_json(s));
        j["selected"] = sets;
    } else {
        j["selected"] = c.selected_indices;
    }
    return j;
}

Certificate certificate_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("claim") || !j["claim"].is_string() || !j.contains("digest") ||
        !j["digest"].is_string() || !j.contains("selected") || !j["selected"].is_array())
        throw std::invalid_argument("certificate needs \"claim\", \"digest\" and \"selected\"");
    Certificate c;
    c.claim = j["claim"].get<std::string>();
    c.digest = j["digest"].get<std::string>();
    c.scope = j.value("scope", std::string());
    if (c.claim == "containment-separator" || c.claim == "intersection-separator") {
        for (const Json& e : j["selected"]) c.selected_sets.push_back(convex_set_from_json(e));
    } else if (c.claim == "separates-parts" || c.claim == "satisfies-constraints") {
        for (const Json& e : j["selected"]) {
            if (!e.is_number_integer())
                throw std::invalid_argument("certificate member indices must be integers");
            c.selected_indices.push_back(e.get<int>());
        }
    } else {
        throw std::invalid_argument("unknown certificate claim '" + c.claim + "'");
    }
    return c;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("cannot parse '" + path + "': " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
    out << canonical_dump(j);
    if (!out) throw std::invalid_argument("failed to write '" + path + "'");
}

std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace sepfam
