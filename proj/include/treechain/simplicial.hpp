#pragma once

#include "treechain/rational.hpp"

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace treechain {

/// Raised when a graph, map or diagram is structurally malformed.
class StructureError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Outcome of a predicate that can name the first thing that broke it.
struct CheckResult {
    bool ok = true;
    std::string witness;

    static CheckResult pass() { return {}; }
    static CheckResult fail(std::string why) { return {false, std::move(why)}; }
    explicit operator bool() const { return ok; }
};

/// Vertex label.
///
/// Three kinds exist: grid vertices (side, level) used by the tree family,
/// opaque integer labels for hand-built graphs, and subdivision vertices that
/// record the edge they sit on together with the third (1 or 2) measured from
/// the first endpoint. Subdivision labels are stored with endpoints in
/// canonical (ascending) order, so the same point always gets the same label.
class VertexId {
public:
    enum class Kind { Grid = 0, Opaque = 1, Sub = 2 };

    VertexId() = default;

    static VertexId grid(int side, int level);
    static VertexId opaque(long id);
    static VertexId sub(const VertexId& a, const VertexId& b, int third);

    Kind kind() const { return kind_; }
    int side() const { return a_; }
    int level() const { return b_; }
    long opaque_id() const { return id_; }
    int third() const { return a_; }
    const VertexId& sub_first() const { return ends_->first; }
    const VertexId& sub_second() const { return ends_->second; }

    std::string to_string() const;

    friend std::strong_ordering operator<=>(const VertexId& x, const VertexId& y);
    friend bool operator==(const VertexId& x, const VertexId& y) { return (x <=> y) == 0; }

private:
    Kind kind_ = Kind::Opaque;
    int a_ = 0;
    int b_ = 0;
    long id_ = 0;
    std::shared_ptr<const std::pair<VertexId, VertexId>> ends_;
};

struct Point {
    Rational x;
    Rational y;

    friend bool operator==(const Point& p, const Point& q) { return p.x == q.x && p.y == q.y; }
};

/// Finite one-dimensional simplicial complex, optionally embedded in the plane.
///
/// Immutable. Vertices are kept sorted by label; all index-based accessors
/// refer to that order. When coordinates are supplied the constructor rejects
/// embeddings in which a vertex lies on another edge or two edges cross.
class SimplicialGraph {
public:
    using Edge = std::pair<VertexId, VertexId>;

    SimplicialGraph() = default;
    SimplicialGraph(std::vector<VertexId> vertices, std::vector<Edge> edges,
                    std::optional<std::map<VertexId, Point>> coords = std::nullopt);

    int size() const { return static_cast<int>(vertices_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<VertexId>& vertices() const { return vertices_; }
    const VertexId& vertex(int i) const { return vertices_.at(i); }
    std::optional<int> find(const VertexId& v) const;
    int index_of(const VertexId& v) const;
    bool contains(const VertexId& v) const { return find(v).has_value(); }

    /// Edges as index pairs (first < second), sorted.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int i) const { return adjacency_.at(i); }
    int degree(int i) const { return static_cast<int>(adjacency_.at(i).size()); }
    bool adjacent(int i, int j) const;
    std::optional<int> edge_index(int i, int j) const;

    bool has_coords() const { return !coords_.empty(); }
    const Point& coord(int i) const { return coords_.at(i); }

    bool connected() const;
    bool is_tree() const;
    std::vector<int> bfs_distances(int from) const;

    friend bool operator==(const SimplicialGraph& g, const SimplicialGraph& h);

private:
    std::vector<VertexId> vertices_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<Point> coords_;
};

using GraphPtr = std::shared_ptr<const SimplicialGraph>;

/// Checks that distinct edges meet only in shared endpoints and no vertex
/// lies inside an edge segment. Requires coordinates.
CheckResult check_embedding(const SimplicialGraph& g);

/// Vertex assignment between two graphs. Total on the source by construction;
/// the edge condition is checked separately by validate_simplicial.
class SimplicialMapping {
public:
    SimplicialMapping() = default;
    SimplicialMapping(GraphPtr source, GraphPtr target, std::vector<int> image);
    SimplicialMapping(GraphPtr source, GraphPtr target, const std::map<VertexId, VertexId>& assignment);

    const SimplicialGraph& source() const { return *source_; }
    const SimplicialGraph& target() const { return *target_; }
    const GraphPtr& source_ptr() const { return source_; }
    const GraphPtr& target_ptr() const { return target_; }

    int operator()(int i) const { return image_.at(i); }
    VertexId operator()(const VertexId& v) const;
    const std::vector<int>& image() const { return image_; }

    friend bool operator==(const SimplicialMapping& f, const SimplicialMapping& g);

private:
    GraphPtr source_;
    GraphPtr target_;
    std::vector<int> image_;
};

SimplicialMapping identity_map(GraphPtr g);

/// outer ∘ inner. Throws StructureError when inner's target is not outer's source.
SimplicialMapping compose(const SimplicialMapping& outer, const SimplicialMapping& inner);

CheckResult validate_simplicial(const SimplicialMapping& m);
bool is_surjection(const SimplicialMapping& m);

bool k_close(const SimplicialGraph& g, int u, int v, int k);
bool k_close(const SimplicialGraph& g, const VertexId& u, const VertexId& v, int k);

/// Point (1-t)a + t b of a realization. Canonical form: a vertex is stored as
/// (v, v, 0); an interior point as (a, b, t) with a < b and 0 < t < 1.
struct EdgePoint {
    VertexId a;
    VertexId b;
    Rational t;

    static EdgePoint at_vertex(const VertexId& v) { return {v, v, Rational(0)}; }
    EdgePoint canonical() const;
    bool is_vertex() const { return a == b; }

    friend bool operator==(const EdgePoint& p, const EdgePoint& q);
    friend bool operator<(const EdgePoint& p, const EdgePoint& q);
};

std::string to_string(const EdgePoint& p);

/// Image of p under the piecewise-linear realization of m.
EdgePoint evaluate_realization(const SimplicialMapping& m, const EdgePoint& p);

/// Planar coordinates of a point of an embedded graph.
Point embed(const SimplicialGraph& g, const EdgePoint& p);

/// Trisection G^(3): every edge {u,v} gains the two vertices at 1/3 and 2/3.
SimplicialGraph subdivide3(const SimplicialGraph& g);

/// f^(3) between already-subdivided graphs.
SimplicialMapping lift_map_3(const SimplicialMapping& m, GraphPtr source3, GraphPtr target3);
SimplicialMapping lift_map_3(const SimplicialMapping& m);

/// g_{ij} = maps[i] ∘ ... ∘ maps[j-1] where maps[n] : G_{n+1} -> G_n; g_{ii} is the identity.
SimplicialMapping compose_tower(const std::vector<SimplicialMapping>& maps, int i, int j);

} // namespace treechain
