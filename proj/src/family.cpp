#include "treechain/family.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace treechain::family {

void FamilyParams::validate() const
{
    if (k < 2) throw std::invalid_argument("family needs k >= 2, got " + std::to_string(k));
    if (n < 0 || n > k - 1)
        throw std::invalid_argument("family level n must lie in [0, k-1], got n=" + std::to_string(n) + " for k=" + std::to_string(k));
}

SimplicialGraph build_tree(FamilyParams p)
{
    p.validate();
    const int k = p.k, n = p.n;
    std::vector<std::vector<VertexId>> groups(5);
    for (int mu = 0; mu <= n; ++mu) groups[0].push_back(v(mu, 1));
    groups[0].push_back(v(n + 1, 0));
    for (int mu = 0; mu <= n; ++mu) groups[1].push_back(v(mu, -1));
    groups[1].push_back(v(n + 1, 0));
    for (int mu = n + 1; mu <= k; ++mu) groups[2].push_back(v(mu, 0));
    groups[3].push_back(v(k, 0));
    for (int mu = k + 1; mu <= k + 1 + n; ++mu) groups[3].push_back(v(mu, 1));
    groups[4].push_back(v(k, 0));
    for (int mu = k + 1; mu <= k + 1 + n; ++mu) groups[4].push_back(v(mu, -1));

    std::set<VertexId> vertex_set;
    std::vector<SimplicialGraph::Edge> edges;
    for (const auto& group : groups) {
        vertex_set.insert(group.begin(), group.end());
        for (std::size_t i = 0; i + 1 < group.size(); ++i) edges.emplace_back(group[i], group[i + 1]);
    }
    std::map<VertexId, Point> coords;
    for (const auto& x : vertex_set) coords.emplace(x, Point{Rational(x.side()), Rational(x.level())});
    return SimplicialGraph(std::vector<VertexId>(vertex_set.begin(), vertex_set.end()), std::move(edges), std::move(coords));
}

GraphPtr tree_ptr(FamilyParams p)
{
    return std::make_shared<const SimplicialGraph>(build_tree(p));
}

namespace {

void require_bond_level(FamilyParams p)
{
    p.validate();
    if (p.n > p.k - 2)
        throw std::invalid_argument("bonding maps exist only for n <= k-2 (got n=" + std::to_string(p.n) + ", k=" + std::to_string(p.k) + ")");
}

template <typename Rule>
SimplicialMapping make_bond(FamilyParams p, GraphPtr upper, GraphPtr lower, Rule rule)
{
    require_bond_level(p);
    if (!upper) upper = tree_ptr({p.k, p.n + 1});
    if (!lower) lower = tree_ptr(p);
    std::map<VertexId, VertexId> assignment;
    for (const auto& x : upper->vertices()) assignment.emplace(x, rule(x.level(), x.side()));
    return SimplicialMapping(upper, lower, assignment);
}

} // namespace

SimplicialMapping map_s(FamilyParams p, GraphPtr tree)
{
    p.validate();
    if (!tree) tree = tree_ptr(p);
    std::map<VertexId, VertexId> assignment;
    for (const auto& x : tree->vertices()) assignment.emplace(x, v(x.level(), -x.side()));
    return SimplicialMapping(tree, tree, assignment);
}

SimplicialMapping map_sigma(FamilyParams p, GraphPtr upper, GraphPtr lower)
{
    const int k = p.k, n = p.n;
    return make_bond(p, std::move(upper), std::move(lower), [=](int mu, int nu) {
        if (mu == n + 1) return v(n + 1, 0);
        return v(std::min(mu, k + n + 1), nu);
    });
}

SimplicialMapping map_tau(FamilyParams p, GraphPtr upper, GraphPtr lower)
{
    const int k = p.k;
    return make_bond(p, std::move(upper), std::move(lower), [=](int mu, int nu) {
        if (mu == k + 1) return v(k, 0);
        return v(std::max(mu - 1, 0), nu);
    });
}

SimplicialMapping map_omega(FamilyParams p, GraphPtr upper, GraphPtr lower)
{
    require_bond_level(p);
    if (!lower) lower = tree_ptr(p);
    auto tau = map_tau(p, std::move(upper), lower);
    return compose(map_s(p, lower), tau);
}

TreeDiagram build_family_diagram(int k)
{
    if (k < 2) throw std::invalid_argument("family diagram needs k >= 2");
    std::vector<GraphPtr> levels;
    for (int n = 0; n < k; ++n) levels.push_back(tree_ptr({k, n}));
    std::vector<SimplicialMapping> g_row, f_row;
    for (int n = 0; n + 1 < k; ++n) {
        g_row.push_back(map_sigma({k, n}, levels[n + 1], levels[n]));
        f_row.push_back(map_omega({k, n}, levels[n + 1], levels[n]));
    }
    TreeDiagram d(std::move(levels), std::move(g_row), std::move(f_row));
    if (auto r = check_commutative(d); !r) throw StructureError("family diagram is not commutative: " + r.witness);
    if (auto r = check_surjective(d); !r) throw StructureError("family diagram: " + r.witness);
    for (int n = 0; n < d.length(); ++n) {
        if (!is_surjection(d.f(n))) throw StructureError("family diagram: ω_" + std::to_string(n) + " is not surjective");
        if (auto r = coincidence_criterion(d.f(n), d.g(n)); !r)
            throw StructureError("family diagram level " + std::to_string(n) + ": " + r.witness);
    }
    return d;
}

std::vector<VertexId> endpoints(FamilyParams p)
{
    p.validate();
    return {v(0, 1), v(0, -1), v(p.k + 1 + p.n, 1), v(p.k + 1 + p.n, -1)};
}

} // namespace treechain::family
