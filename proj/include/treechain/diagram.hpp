#pragma once

#include "treechain/simplicial.hpp"

#include <set>
#include <vector>

namespace treechain {

/// Two towers g_n, f_n : G_{n+1} -> G_n over shared levels G_0..G_l.
///
/// Construction checks typing and the simplicial edge condition of every map;
/// surjectivity and commutativity are left to the individual checkers so that
/// negative fixtures can still be loaded and reported on.
class TreeDiagram {
public:
    TreeDiagram() = default;
    TreeDiagram(std::vector<GraphPtr> levels, std::vector<SimplicialMapping> g_row, std::vector<SimplicialMapping> f_row);

    int length() const { return static_cast<int>(g_row_.size()); }
    const std::vector<GraphPtr>& levels() const { return levels_; }
    const SimplicialGraph& level(int n) const { return *levels_.at(n); }
    const std::vector<SimplicialMapping>& g_row() const { return g_row_; }
    const std::vector<SimplicialMapping>& f_row() const { return f_row_; }
    const SimplicialMapping& g(int n) const { return g_row_.at(n); }
    const SimplicialMapping& f(int n) const { return f_row_.at(n); }

private:
    std::vector<GraphPtr> levels_;
    std::vector<SimplicialMapping> g_row_;
    std::vector<SimplicialMapping> f_row_;
};

/// f_{i-1} ∘ g_i = g_{i-1} ∘ f_i vertexwise for i = 1..l-1.
CheckResult check_commutative(const TreeDiagram& d);
CheckResult check_surjective(const TreeDiagram& d);

/// Vertex/edge criterion for coincidence-freeness of |f| and |g|.
CheckResult coincidence_criterion(const SimplicialMapping& f, const SimplicialMapping& g);
bool coincidence_free(const SimplicialMapping& f, const SimplicialMapping& g);

/// Exact coincidence set of |f| and |g|. Isolated points are canonical
/// EdgePoints of the source; source edges on which the maps agree throughout
/// are listed separately (their endpoints also appear in `points`).
struct CoincidenceSet {
    std::set<EdgePoint> points;
    std::vector<std::pair<VertexId, VertexId>> edges;

    bool empty() const { return points.empty() && edges.empty(); }
};

/// Solves |f|(p) = |g|(p) in the plane using the target's coordinates, one
/// linear equation per source edge. Independent of coincidence_criterion.
CoincidenceSet coincidence_oracle(const SimplicialMapping& f, const SimplicialMapping& g);

/// Source vertices whose two images are 2-close in the target.
std::vector<VertexId> proximity_vertices(const SimplicialMapping& f, const SimplicialMapping& g);

/// Subdivides every level and lifts both rows. Requires a commutative,
/// surjective diagram whose level-0 maps have coincidence-free realizations.
TreeDiagram lift_diagram_3(const TreeDiagram& d);

} // namespace treechain
