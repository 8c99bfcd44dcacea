#include "treechain/diagram.hpp"

#include <algorithm>

namespace treechain {

namespace {

void require_same_ends(const SimplicialMapping& f, const SimplicialMapping& g)
{
    auto same = [](const GraphPtr& a, const GraphPtr& b) { return a == b || *a == *b; };
    if (!same(f.source_ptr(), g.source_ptr()) || !same(f.target_ptr(), g.target_ptr()))
        throw StructureError("maps do not share source and target");
}

} // namespace

TreeDiagram::TreeDiagram(std::vector<GraphPtr> levels, std::vector<SimplicialMapping> g_row,
                         std::vector<SimplicialMapping> f_row)
    : levels_(std::move(levels)), g_row_(std::move(g_row)), f_row_(std::move(f_row))
{
    if (levels_.empty()) throw StructureError("diagram needs at least one level");
    const auto l = levels_.size() - 1;
    if (g_row_.size() != l || f_row_.size() != l)
        throw StructureError("diagram rows must have one map per consecutive level pair");
    for (std::size_t n = 0; n < l; ++n) {
        for (const auto* row : {&g_row_, &f_row_}) {
            const auto& m = (*row)[n];
            const char* name = row == &g_row_ ? "g" : "f";
            if (!(m.source() == *levels_[n + 1]) || !(m.target() == *levels_[n]))
                throw StructureError(std::string(name) + "_" + std::to_string(n) + " is not a map G_" + std::to_string(n + 1)
                                     + " -> G_" + std::to_string(n));
            if (auto r = validate_simplicial(m); !r)
                throw StructureError(std::string(name) + "_" + std::to_string(n) + " is not simplicial: " + r.witness);
        }
    }
}

CheckResult check_commutative(const TreeDiagram& d)
{
    for (int i = 1; i < d.length(); ++i) {
        const auto& src = d.level(i + 1);
        for (int v = 0; v < src.size(); ++v) {
            int lhs = d.f(i - 1)(d.g(i)(v));
            int rhs = d.g(i - 1)(d.f(i)(v));
            if (lhs != rhs)
                return CheckResult::fail("square " + std::to_string(i) + " at " + src.vertex(v).to_string() + ": f∘g gives "
                                         + d.level(i - 1).vertex(lhs).to_string() + ", g∘f gives "
                                         + d.level(i - 1).vertex(rhs).to_string());
        }
    }
    return CheckResult::pass();
}

CheckResult check_surjective(const TreeDiagram& d)
{
    for (int n = 0; n < d.length(); ++n)
        if (!is_surjection(d.g(n))) return CheckResult::fail("g_" + std::to_string(n) + " is not surjective");
    return CheckResult::pass();
}

CheckResult coincidence_criterion(const SimplicialMapping& f, const SimplicialMapping& g)
{
    require_same_ends(f, g);
    const auto& src = f.source();
    for (int v = 0; v < src.size(); ++v)
        if (f(v) == g(v)) return CheckResult::fail("f and g agree at vertex " + src.vertex(v).to_string());
    for (auto [u, v] : src.edges()) {
        int fu = f(u), fv = f(v), gu = g(u), gv = g(v);
        bool inside = (fu == gu || fu == gv) && (fv == gu || fv == gv);
        if (inside)
            return CheckResult::fail("{f(u),f(v)} ⊆ {g(u),g(v)} on edge {" + src.vertex(u).to_string() + ","
                                     + src.vertex(v).to_string() + "}");
    }
    return CheckResult::pass();
}

bool coincidence_free(const SimplicialMapping& f, const SimplicialMapping& g)
{
    return coincidence_criterion(f, g).ok;
}

CoincidenceSet coincidence_oracle(const SimplicialMapping& f, const SimplicialMapping& g)
{
    require_same_ends(f, g);
    const auto& src = f.source();
    const auto& dst = f.target();
    if (!dst.has_coords()) throw StructureError("coincidence oracle needs an embedded target");

    CoincidenceSet out;
    for (int v = 0; v < src.size(); ++v) {
        if (src.degree(v) == 0 && dst.coord(f(v)) == dst.coord(g(v))) out.points.insert(EdgePoint::at_vertex(src.vertex(v)));
    }
    for (auto [u, v] : src.edges()) {
        // (1-t)(P-R) + t(Q-S) = 0 with P,Q the f-images and R,S the g-images.
        const Point& p = dst.coord(f(u));
        const Point& q = dst.coord(f(v));
        const Point& r = dst.coord(g(u));
        const Point& s = dst.coord(g(v));
        Rational ax = p.x - r.x, ay = p.y - r.y;
        Rational bx = q.x - s.x, by = q.y - s.y;
        Rational dx = bx - ax, dy = by - ay;
        const auto& a = src.vertex(u);
        const auto& b = src.vertex(v);
        if (sgn(ax) == 0 && sgn(ay) == 0 && sgn(bx) == 0 && sgn(by) == 0) {
            out.edges.emplace_back(a, b);
            out.points.insert(EdgePoint::at_vertex(a));
            out.points.insert(EdgePoint::at_vertex(b));
            continue;
        }
        Rational t;
        if (sgn(dx) != 0)
            t = -ax / dx;
        else if (sgn(dy) != 0)
            t = -ay / dy;
        else
            continue;
        if (t < 0 || t > 1) continue;
        if (sgn(ax + t * dx) != 0 || sgn(ay + t * dy) != 0) continue;
        out.points.insert(EdgePoint{a, b, t}.canonical());
    }
    return out;
}

std::vector<VertexId> proximity_vertices(const SimplicialMapping& f, const SimplicialMapping& g)
{
    require_same_ends(f, g);
    std::vector<VertexId> out;
    const auto& src = f.source();
    for (int v = 0; v < src.size(); ++v)
        if (k_close(f.target(), f(v), g(v), 2)) out.push_back(src.vertex(v));
    return out;
}

TreeDiagram lift_diagram_3(const TreeDiagram& d)
{
    if (auto r = check_commutative(d); !r) throw StructureError("cannot lift a non-commutative diagram: " + r.witness);
    if (auto r = check_surjective(d); !r) throw StructureError("cannot lift a non-surjective diagram: " + r.witness);
    if (d.length() > 0) {
        if (auto r = coincidence_criterion(d.f(0), d.g(0)); !r)
            throw StructureError("cannot lift: f_0 and g_0 have a coincidence point: " + r.witness);
    }
    std::vector<GraphPtr> levels;
    levels.reserve(d.levels().size());
    for (const auto& g : d.levels()) levels.push_back(std::make_shared<const SimplicialGraph>(subdivide3(*g)));
    std::vector<SimplicialMapping> g_row, f_row;
    for (int n = 0; n < d.length(); ++n) {
        g_row.push_back(lift_map_3(d.g(n), levels[n + 1], levels[n]));
        f_row.push_back(lift_map_3(d.f(n), levels[n + 1], levels[n]));
    }
    return TreeDiagram(std::move(levels), std::move(g_row), std::move(f_row));
}

} // namespace treechain
