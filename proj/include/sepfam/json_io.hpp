// Canonical JSON schemas for instances, point configurations, convex sets
// and certificates. Output is stable byte-for-byte: keys sorted, masks as
// lowercase hex strings, rationals as ["num","den"] decimal-string pairs,
// no floats.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sepfam/constraint_select.hpp"
#include "sepfam/geom_sep.hpp"
#include "sepfam/setsystem.hpp"

namespace sepfam {

using Json = nlohmann::json;

// {"n": int, "family": ["0x..", ...], "parts": [[ids], ...]}
Json instance_to_json(const SeparationInstance& inst);
SeparationInstance instance_from_json(const Json& j);  // "parts" optional: one full block

// {"n": int, "family": [...], "constraints": [{"v": [ids], "w": [ids]}, ...]}
Json constraint_instance_to_json(const ConstraintInstance& inst);
ConstraintInstance constraint_instance_from_json(const Json& j);

// {"d": int, "k": int, "points": [[["num","den"], ...], ...]}
Json point_config_to_json(const PointConfig& cfg);
PointConfig point_config_from_json(const Json& j);

// {"hull": [labels]} or {"halfspace": {"normal": [["num","den"],...], "offset": ["num","den"]}}
Json convex_set_to_json(const ConvexSet& c);
ConvexSet convex_set_from_json(const Json& j);

struct Certificate {
    std::string claim;  // separates-parts | satisfies-constraints |
                        // containment-separator | intersection-separator
    std::string scope;  // for separates-parts: all-pairs | family-separated
    std::vector<int> selected_indices;   // family-member claims
    std::vector<ConvexSet> selected_sets;  // geometry claims
    std::string digest;  // sha256 of the instance file bytes
};

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

// Pretty canonical serialization (sorted keys, two-space indent, newline).
std::string canonical_dump(const Json& j);

Json load_json_file(const std::string& path);             // throws invalid_argument
void write_json_file(const std::string& path, const Json& j);
std::string read_file_bytes(const std::string& path);     // throws invalid_argument

}  // namespace sepfam
