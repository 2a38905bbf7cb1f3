#pragma once

#include <string>
#include <utility>

#include "json.hpp"

#include "hypsurf/collapse.hpp"
#include "hypsurf/cover.hpp"
#include "hypsurf/deform.hpp"
#include "hypsurf/flow.hpp"
#include "hypsurf/halftree.hpp"
#include "hypsurf/surface.hpp"

namespace hs {

using Json = nlohmann::ordered_json;

// Parse errors and missing fields are reported as Error with a JSON-pointer-ish location.
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text, const std::string& where = "<input>");
std::string dump(const Json& j);  // two-space indent, trailing newline

Json to_json(const HalfTree& t);
HalfTree halftree_from_json(const Json& j);

// Surface JSON is HalfTree JSON plus "lengths" (per port), "heights" and "twists" (per vertex).
Json to_json(const Surface& s);
Surface surface_from_json(const Json& j);
bool has_metric(const Json& j);

Json to_json(const CylinderPartition& cp, const SaddlePartition& sp);
std::pair<CylinderPartition, SaddlePartition> partitions_from_json(const Json& j);

Json to_json(const FormalCochain& c);
Json to_json(const VerticalCylinder& v);
Json to_json(const VerticalDecomposition& d);
Json to_json(const StandardPosition& p);
Json to_json(const CandidateReport& r);
Json to_json(const Certification& c);
Json to_json(const DisjointSurface& d);
Json to_json(const VerticalCollapseReport& r);
Json to_json(const HorizontalCollapseReport& r);
Json to_json(const GraphCoverReport& r);
Json to_json(const LemmaReport& r);  // without timing, so output is reproducible

Json to_json(const CoverBlueprint& b);
CoverBlueprint blueprint_from_json(const Json& j);
Json to_json(const CoverMap& m);
Json to_json(const CoverVerdict& v);
Json to_json(const QuotientResult& q);

// Stratum, singularity profile, Weierstrass count and roundtrip status of one surface.
Json profile_json(const Surface& s);

// Each cylinder as a rectangle with its boundary saddles labelled by port id.
std::string surface_svg(const Surface& s);

}  // namespace hs
