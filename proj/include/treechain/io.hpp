#pragma once

#include "treechain/geometry.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace treechain::io {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

/// Raised for malformed or unsupported documents.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json to_json(const VertexId& v);
VertexId vertex_from_json(const Json& j);

Json to_json(const SimplicialGraph& g);
SimplicialGraph graph_from_json(const Json& j);

Json to_json(const SegmentRegion& r);

/// Everything `verify` needs: the trisected diagram, the schedule, the stored
/// fiber and φ tables, and optionally the enlargement radii. Loading does not
/// judge any of the conditions beyond typing.
struct Instance {
    std::vector<GraphPtr> levels;
    std::vector<SimplicialMapping> g_row;
    std::vector<SimplicialMapping> f_row;
    EpsilonSchedule eps;
    std::vector<std::vector<std::vector<int>>> fibers; // [level][vertex] -> top vertices
    std::vector<PatternFunction> phi;
    std::optional<EnlargedFamily> enlarged;

    int length() const { return static_cast<int>(g_row.size()); }
    /// Throws StructureError when a map breaks the edge condition.
    TreeDiagram diagram() const { return TreeDiagram(levels, g_row, f_row); }
};

/// Collects an instance from a built system and its enlargement.
Instance make_instance(const CoverSystem& s, std::optional<EnlargedFamily> enlarged);

Json to_json(const Instance& inst);
/// Malformed documents raise SchemaError. Maps are only checked for totality.
Instance instance_from_json(const Json& j);

Json regions_json(const CoverSystem& s, const RealizedSystem& r);

std::string dump(const Json& j);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace treechain::io
