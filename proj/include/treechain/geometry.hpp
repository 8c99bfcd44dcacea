#pragma once

#include "treechain/covers.hpp"

#include <optional>
#include <string>
#include <vector>

namespace treechain {

/// Sub-interval of an edge parameter range. Ends at 0 or 1 are always open;
/// the vertices there belong to the region's vertex list instead.
struct Interval {
    Rational lo;
    Rational hi;
    bool lo_closed = false;
    bool hi_closed = false;

    bool contains(const Rational& t) const;
    friend bool operator==(const Interval& a, const Interval& b);
};

/// Nonempty intersection of two intervals, if any.
std::optional<Interval> intersect(const Interval& a, const Interval& b);

struct EdgePiece {
    int edge = 0; // index into graph().edges(), parameter measured from the lower endpoint
    std::vector<Interval> intervals;

    friend bool operator==(const EdgePiece&, const EdgePiece&) = default;
};

/// Axis-aligned box used to prune distance scans.
struct Box {
    Rational x0, y0, x1, y1;

    /// Squared distance between boxes; a lower bound for any contained sets.
    friend Rational gap2(const Box& a, const Box& b);
};

/// A subset of the realization of an embedded graph: a set of vertices plus,
/// per edge, disjoint intervals of the open edge. Stored in canonical form
/// (sorted, touching intervals merged) so equal sets compare equal.
class SegmentRegion {
public:
    struct Segment {
        Point a, b;
        Box box;
    };

    SegmentRegion() = default;
    SegmentRegion(GraphPtr graph, std::vector<int> vertices, std::vector<EdgePiece> pieces);

    const GraphPtr& graph() const { return graph_; }
    const std::vector<int>& vertices() const { return vertices_; }
    const std::vector<EdgePiece>& pieces() const { return pieces_; }
    bool empty() const { return vertices_.empty() && pieces_.empty(); }

    bool contains_vertex(int i) const;
    bool contains(const EdgePoint& p) const;

    /// Closed segments and points whose union is the closure; `box` bounds them all.
    const std::vector<Segment>& closed_segments() const { return segments_; }
    const Box& box() const { return box_; }

    friend bool operator==(const SegmentRegion& a, const SegmentRegion& b);

private:
    GraphPtr graph_;
    std::vector<int> vertices_;
    std::vector<EdgePiece> pieces_;
    std::vector<Segment> segments_;
    Box box_;
};

/// st_ε(v): v together with the parameter range [0, ε) of every incident edge.
SegmentRegion star(const GraphPtr& graph, int v, const Rational& eps);
SegmentRegion unite(const std::vector<SegmentRegion>& parts);
SegmentRegion closure(const SegmentRegion& r);

bool region_intersects(const SegmentRegion& a, const SegmentRegion& b);
/// inner ⊆ outer.
bool region_contains(const SegmentRegion& outer, const SegmentRegion& inner);

/// Squared distance between the closures. Throws on empty regions.
Rational set_distance_squared(const SegmentRegion& a, const SegmentRegion& b);
Rational diameter_squared(const SegmentRegion& r);

/// Union of the stars of radius a.epsilon at the vertices of the fiber.
SegmentRegion realize(const CoverSystem& s, const CoverSet& a);

/// Whether p of |T_l| lies in U_n^v, decided through |g_nl|(p) and the star
/// of v in T_n rather than through the realized region.
bool member_by_preimage(const CoverSystem& s, const CoverSet& a, const EdgePoint& p);

/// Realized regions and their closures, indexed like CoverSystem::all_sets().
struct RealizedSystem {
    std::vector<SegmentRegion> regions;
    std::vector<SegmentRegion> closures;
    std::vector<int> level_offset; // first flat index of each level

    int index(int level, int vertex) const { return level_offset.at(level) + vertex; }
    const SegmentRegion& region(int level, int vertex) const { return regions.at(index(level, vertex)); }
};

RealizedSystem realize_system(const CoverSystem& s, Exec exec = Exec::Parallel);

/// region_intersects and closure intersection both equal sets_intersect on
/// every pair of sets, and vertex membership equals contains_member.
CheckResult check_oracle_identity(const CoverSystem& s, const RealizedSystem& r, Exec exec = Exec::Parallel);

/// Disjoint regions of any two levels have disjoint closures.
CheckResult check_taut_geometric(const CoverSystem& s, const RealizedSystem& r, Exec exec = Exec::Parallel);

/// Each level's regions cover every vertex and every edge of |T_l|.
CheckResult check_coverage(const CoverSystem& s, const RealizedSystem& r);

/// No point of |T_l| lies in three distinct regions of one level.
CheckResult check_triples_geometric(const CoverSystem& s, const RealizedSystem& r);

/// Closure of each U_j^w lies in the region of its refinement witness, j > n.
CheckResult check_strong_refinement_geometric(const CoverSystem& s, const RealizedSystem& r);

/// For U in 𝒰_{m+1} and V in 𝒰_m: cl(U) ⊆ V geometrically exactly when the
/// fibers nest, and then cl(φ_m(U)) ⊆ φ_{m-1}(V).
CheckResult check_D2prime_geometric(const CoverSystem& s, const RealizedSystem& r, Exec exec = Exec::Parallel);

struct MeshReport {
    std::optional<Rational> rho2;       // over disjoint pairs of 𝒰_0
    std::vector<Rational> mesh2;        // per level
    std::vector<bool> below_rho_scale;  // mesh(𝒰_n) < ρ/2^(n+1), covers counted from 1
};

MeshReport compute_rho_and_mesh(const CoverSystem& s, const RealizedSystem& r, Exec exec = Exec::Parallel);

/// B(base, r) = {z : d(base, z) < r}; the radius is kept squared.
struct EnlargedSet {
    int level = 0;
    int vertex = 0;
    std::string label;
    Rational radius2;
};

struct EnlargedFamily {
    Rational m2; // m = (1/3) min distance between disjoint members
    std::vector<EnlargedSet> sets; // indexed like CoverSystem::all_sets()
};

/// Radius 2^{-n} m for every set of level n. `levels[i]` is the level of regions[i].
EnlargedFamily enlarge_taut_family(const std::vector<SegmentRegion>& regions, const std::vector<int>& levels, Exec exec = Exec::Parallel);
EnlargedFamily enlarge_taut_family(const CoverSystem& s, const RealizedSystem& r, Exec exec = Exec::Parallel);

/// d(a, b) > ra + rb, compared through squares only.
bool enlarged_closures_disjoint(const Rational& d2, const Rational& ra2, const Rational& rb2);

/// Disjoint members have disjoint enlarged closures.
CheckResult check_enlargement_disjoint(const std::vector<SegmentRegion>& regions, const EnlargedFamily& e, Exec exec = Exec::Parallel);

/// A deeper member contained in a shallower one has cl(U*) ⊆ V*. Given U ⊆ V
/// this reduces to r_U < r_V, since d(z, V) <= d(z, U).
CheckResult check_enlargement_nested(const std::vector<SegmentRegion>& regions, const EnlargedFamily& e, Exec exec = Exec::Parallel);

} // namespace treechain
