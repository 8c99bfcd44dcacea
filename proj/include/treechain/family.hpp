#pragma once

#include "treechain/diagram.hpp"

namespace treechain::family {

/// Index pair (k, n) of the tree T_n^k; k >= 2 and 0 <= n <= k-1.
struct FamilyParams {
    int k = 2;
    int n = 0;

    void validate() const;
};

/// Vertex v_level^side of the family, placed at (side, level).
inline VertexId v(int level, int side) { return VertexId::grid(side, level); }

/// T_n^k: two lower arms, a centre column and two upper arms, embedded in the plane.
SimplicialGraph build_tree(FamilyParams p);
GraphPtr tree_ptr(FamilyParams p);

/// Vertical reflection s_n of T_n^k.
SimplicialMapping map_s(FamilyParams p, GraphPtr tree = nullptr);

/// σ_n, τ_n, ω_n = s_n ∘ τ_n : T_{n+1}^k -> T_n^k (n <= k-2).
/// The optional graph arguments let a caller share level graphs between maps.
SimplicialMapping map_sigma(FamilyParams p, GraphPtr upper = nullptr, GraphPtr lower = nullptr);
SimplicialMapping map_tau(FamilyParams p, GraphPtr upper = nullptr, GraphPtr lower = nullptr);
SimplicialMapping map_omega(FamilyParams p, GraphPtr upper = nullptr, GraphPtr lower = nullptr);

/// Diagram over T_0^k..T_{k-1}^k with g-row σ and f-row ω. Construction
/// failures and broken structural checks raise StructureError.
TreeDiagram build_family_diagram(int k);

/// The four endpoints v_0^{±1} and v_{k+1+n}^{±1} of T_n^k.
std::vector<VertexId> endpoints(FamilyParams p);

} // namespace treechain::family
