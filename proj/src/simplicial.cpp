#include "treechain/simplicial.hpp"

#include "treechain/segment.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace treechain {

// ---------------------------------------------------------------- VertexId

VertexId VertexId::grid(int side, int level)
{
    VertexId v;
    v.kind_ = Kind::Grid;
    v.a_ = side;
    v.b_ = level;
    return v;
}

VertexId VertexId::opaque(long id)
{
    VertexId v;
    v.kind_ = Kind::Opaque;
    v.id_ = id;
    return v;
}

VertexId VertexId::sub(const VertexId& a, const VertexId& b, int third)
{
    if (third != 1 && third != 2) throw StructureError("subdivision third must be 1 or 2");
    if (a == b) throw StructureError("subdivision vertex on a degenerate edge " + a.to_string());
    VertexId v;
    v.kind_ = Kind::Sub;
    if (b < a) {
        v.ends_ = std::make_shared<const std::pair<VertexId, VertexId>>(b, a);
        v.a_ = 3 - third;
    } else {
        v.ends_ = std::make_shared<const std::pair<VertexId, VertexId>>(a, b);
        v.a_ = third;
    }
    return v;
}

std::string VertexId::to_string() const
{
    std::ostringstream out;
    switch (kind_) {
    case Kind::Grid: out << "v[" << b_ << "^" << a_ << "]"; break;
    case Kind::Opaque: out << "#" << id_; break;
    case Kind::Sub:
        out << "sub(" << ends_->first.to_string() << "," << ends_->second.to_string() << "," << a_ << "/3)";
        break;
    }
    return out.str();
}

std::strong_ordering operator<=>(const VertexId& x, const VertexId& y)
{
    if (auto c = static_cast<int>(x.kind_) <=> static_cast<int>(y.kind_); c != 0) return c;
    switch (x.kind_) {
    case VertexId::Kind::Grid:
        if (auto c = x.b_ <=> y.b_; c != 0) return c;
        return x.a_ <=> y.a_;
    case VertexId::Kind::Opaque: return x.id_ <=> y.id_;
    case VertexId::Kind::Sub:
        if (x.ends_ != y.ends_) {
            if (auto c = x.ends_->first <=> y.ends_->first; c != 0) return c;
            if (auto c = x.ends_->second <=> y.ends_->second; c != 0) return c;
        }
        return x.a_ <=> y.a_;
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------- SimplicialGraph

SimplicialGraph::SimplicialGraph(std::vector<VertexId> vertices, std::vector<Edge> edges,
                                 std::optional<std::map<VertexId, Point>> coords)
    : vertices_(std::move(vertices))
{
    std::sort(vertices_.begin(), vertices_.end());
    if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
        throw StructureError("duplicate vertex "
                             + std::adjacent_find(vertices_.begin(), vertices_.end())->to_string());

    adjacency_.assign(vertices_.size(), {});
    for (const auto& [u, v] : edges) {
        auto i = find(u);
        auto j = find(v);
        if (!i || !j)
            throw StructureError("edge {" + u.to_string() + "," + v.to_string() + "} has an endpoint outside the vertex set");
        if (*i == *j) throw StructureError("loop edge at " + u.to_string());
        edges_.emplace_back(std::min(*i, *j), std::max(*i, *j));
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end())
        throw StructureError("duplicate edge {" + vertex(dup->first).to_string() + "," + vertex(dup->second).to_string() + "}");
    for (auto [i, j] : edges_) {
        adjacency_[i].push_back(j);
        adjacency_[j].push_back(i);
    }
    for (auto& row : adjacency_) std::sort(row.begin(), row.end());

    if (coords) {
        coords_.reserve(vertices_.size());
        for (const auto& v : vertices_) {
            auto it = coords->find(v);
            if (it == coords->end()) throw StructureError("missing coordinates for " + v.to_string());
            coords_.push_back(it->second);
        }
        if (auto r = check_embedding(*this); !r) throw StructureError("inconsistent embedding: " + r.witness);
    }
}

std::optional<int> SimplicialGraph::find(const VertexId& v) const
{
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || !(*it == v)) return std::nullopt;
    return static_cast<int>(it - vertices_.begin());
}

int SimplicialGraph::index_of(const VertexId& v) const
{
    auto i = find(v);
    if (!i) throw StructureError("unknown vertex " + v.to_string());
    return *i;
}

bool SimplicialGraph::adjacent(int i, int j) const
{
    const auto& row = adjacency_.at(i);
    return std::binary_search(row.begin(), row.end(), j);
}

std::optional<int> SimplicialGraph::edge_index(int i, int j) const
{
    std::pair<int, int> key{std::min(i, j), std::max(i, j)};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return std::nullopt;
    return static_cast<int>(it - edges_.begin());
}

std::vector<int> SimplicialGraph::bfs_distances(int from) const
{
    std::vector<int> dist(vertices_.size(), -1);
    std::deque<int> queue{from};
    dist.at(from) = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : adjacency_[u]) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

bool SimplicialGraph::connected() const
{
    if (vertices_.empty()) return true;
    auto dist = bfs_distances(0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

bool SimplicialGraph::is_tree() const
{
    return !vertices_.empty() && edge_count() == size() - 1 && connected();
}

bool operator==(const SimplicialGraph& g, const SimplicialGraph& h)
{
    return g.vertices_ == h.vertices_ && g.edges_ == h.edges_ && g.coords_ == h.coords_;
}

CheckResult check_embedding(const SimplicialGraph& g)
{
    if (!g.has_coords()) return CheckResult::fail("graph has no coordinates");
    const int n = g.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (g.coord(i) == g.coord(j))
                return CheckResult::fail(g.vertex(i).to_string() + " and " + g.vertex(j).to_string() + " share a position");

    const auto& edges = g.edges();
    for (auto [a, b] : edges) {
        for (int w = 0; w < n; ++w) {
            if (w == a || w == b) continue;
            if (seg::on_segment(g.coord(w), g.coord(a), g.coord(b)))
                return CheckResult::fail(g.vertex(w).to_string() + " lies on edge {" + g.vertex(a).to_string() + ","
                                         + g.vertex(b).to_string() + "}");
        }
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
        for (std::size_t f = e + 1; f < edges.size(); ++f) {
            auto [a, b] = edges[e];
            auto [c, d] = edges[f];
            if (a == c || a == d || b == c || b == d) continue;
            if (seg::segments_intersect(g.coord(a), g.coord(b), g.coord(c), g.coord(d)))
                return CheckResult::fail("edges {" + g.vertex(a).to_string() + "," + g.vertex(b).to_string() + "} and {"
                                         + g.vertex(c).to_string() + "," + g.vertex(d).to_string() + "} cross");
        }
    }
    return CheckResult::pass();
}

// -------------------------------------------------------- SimplicialMapping

SimplicialMapping::SimplicialMapping(GraphPtr source, GraphPtr target, std::vector<int> image)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image))
{
    if (!source_ || !target_) throw StructureError("mapping needs both a source and a target graph");
    if (static_cast<int>(image_.size()) != source_->size())
        throw StructureError("mapping is not total on its source");
    for (int v : image_)
        if (v < 0 || v >= target_->size()) throw StructureError("mapping value outside the target");
}

SimplicialMapping::SimplicialMapping(GraphPtr source, GraphPtr target, const std::map<VertexId, VertexId>& assignment)
    : source_(std::move(source)), target_(std::move(target))
{
    if (!source_ || !target_) throw StructureError("mapping needs both a source and a target graph");
    image_.reserve(source_->size());
    for (const auto& v : source_->vertices()) {
        auto it = assignment.find(v);
        if (it == assignment.end()) throw StructureError("mapping has no value at " + v.to_string());
        auto j = target_->find(it->second);
        if (!j) throw StructureError("value " + it->second.to_string() + " at " + v.to_string() + " is not a target vertex");
        image_.push_back(*j);
    }
    if (assignment.size() != image_.size()) throw StructureError("mapping assigns values to non-source vertices");
}

VertexId SimplicialMapping::operator()(const VertexId& v) const
{
    return target_->vertex(image_.at(source_->index_of(v)));
}

bool operator==(const SimplicialMapping& f, const SimplicialMapping& g)
{
    auto same = [](const GraphPtr& a, const GraphPtr& b) { return a == b || *a == *b; };
    return same(f.source_, g.source_) && same(f.target_, g.target_) && f.image_ == g.image_;
}

SimplicialMapping identity_map(GraphPtr g)
{
    std::vector<int> image(g->size());
    for (int i = 0; i < g->size(); ++i) image[i] = i;
    return SimplicialMapping(g, g, std::move(image));
}

SimplicialMapping compose(const SimplicialMapping& outer, const SimplicialMapping& inner)
{
    if (inner.target_ptr() != outer.source_ptr() && !(inner.target() == outer.source()))
        throw StructureError("maps are not composable: inner target differs from outer source");
    std::vector<int> image(inner.source().size());
    for (int i = 0; i < inner.source().size(); ++i) image[i] = outer(inner(i));
    return SimplicialMapping(inner.source_ptr(), outer.target_ptr(), std::move(image));
}

CheckResult validate_simplicial(const SimplicialMapping& m)
{
    const auto& src = m.source();
    const auto& dst = m.target();
    for (auto [u, v] : src.edges()) {
        int fu = m(u);
        int fv = m(v);
        if (fu != fv && !dst.adjacent(fu, fv))
            return CheckResult::fail("edge {" + src.vertex(u).to_string() + "," + src.vertex(v).to_string() + "} maps to non-adjacent "
                                     + dst.vertex(fu).to_string() + "," + dst.vertex(fv).to_string());
    }
    return CheckResult::pass();
}

bool is_surjection(const SimplicialMapping& m)
{
    std::vector<char> hit(m.target().size(), 0);
    for (int v : m.image()) hit[v] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool k_close(const SimplicialGraph& g, int u, int v, int k)
{
    if (k < 1) throw std::invalid_argument("k_close needs a positive k");
    if (u == v) return true;
    auto dist = g.bfs_distances(u);
    return dist.at(v) >= 0 && dist.at(v) <= k;
}

bool k_close(const SimplicialGraph& g, const VertexId& u, const VertexId& v, int k)
{
    return k_close(g, g.index_of(u), g.index_of(v), k);
}

// ---------------------------------------------------------------- EdgePoint

EdgePoint EdgePoint::canonical() const
{
    if (a == b) return {a, a, Rational(0)};
    if (t < 0 || t > 1) throw std::invalid_argument("edge parameter outside [0,1]: " + treechain::to_string(t));
    if (sgn(t) == 0) return at_vertex(a);
    if (t == 1) return at_vertex(b);
    if (b < a) return {b, a, Rational(1 - t)};
    return *this;
}

bool operator==(const EdgePoint& p, const EdgePoint& q)
{
    auto x = p.canonical();
    auto y = q.canonical();
    return x.a == y.a && x.b == y.b && x.t == y.t;
}

bool operator<(const EdgePoint& p, const EdgePoint& q)
{
    auto x = p.canonical();
    auto y = q.canonical();
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    return x.t < y.t;
}

std::string to_string(const EdgePoint& p)
{
    auto c = p.canonical();
    if (c.is_vertex()) return c.a.to_string();
    return "(" + c.a.to_string() + "," + c.b.to_string() + ";t=" + to_string(c.t) + ")";
}

EdgePoint evaluate_realization(const SimplicialMapping& m, const EdgePoint& p)
{
    auto c = p.canonical();
    const auto& src = m.source();
    int u = src.index_of(c.a);
    if (c.is_vertex()) return EdgePoint::at_vertex(m(c.a));
    int v = src.index_of(c.b);
    if (!src.adjacent(u, v)) throw std::invalid_argument("point " + to_string(c) + " is not on a source edge");
    int fu = m(u);
    int fv = m(v);
    if (fu == fv) return EdgePoint::at_vertex(m.target().vertex(fu));
    return EdgePoint{m.target().vertex(fu), m.target().vertex(fv), c.t}.canonical();
}

Point embed(const SimplicialGraph& g, const EdgePoint& p)
{
    auto c = p.canonical();
    const auto& a = g.coord(g.index_of(c.a));
    if (c.is_vertex()) return a;
    return seg::lerp(a, g.coord(g.index_of(c.b)), c.t);
}

// ------------------------------------------------------------- subdivision

SimplicialGraph subdivide3(const SimplicialGraph& g)
{
    std::vector<VertexId> vertices = g.vertices();
    std::vector<SimplicialGraph::Edge> edges;
    std::optional<std::map<VertexId, Point>> coords;
    if (g.has_coords()) {
        coords.emplace();
        for (int i = 0; i < g.size(); ++i) coords->emplace(g.vertex(i), g.coord(i));
    }
    for (auto [i, j] : g.edges()) {
        const auto& u = g.vertex(i);
        const auto& v = g.vertex(j);
        auto ue = VertexId::sub(u, v, 1);
        auto ve = VertexId::sub(u, v, 2);
        vertices.push_back(ue);
        vertices.push_back(ve);
        edges.emplace_back(u, ue);
        edges.emplace_back(ue, ve);
        edges.emplace_back(ve, v);
        if (coords) {
            coords->emplace(ue, seg::lerp(g.coord(i), g.coord(j), make_rational(1, 3)));
            coords->emplace(ve, seg::lerp(g.coord(i), g.coord(j), make_rational(2, 3)));
        }
    }
    return SimplicialGraph(std::move(vertices), std::move(edges), std::move(coords));
}

SimplicialMapping lift_map_3(const SimplicialMapping& m, GraphPtr source3, GraphPtr target3)
{
    const auto& src = m.source();
    const auto& dst = m.target();
    std::map<VertexId, VertexId> assignment;
    for (int i = 0; i < src.size(); ++i) assignment.emplace(src.vertex(i), dst.vertex(m(i)));
    for (auto [i, j] : src.edges()) {
        const auto& u = src.vertex(i);
        const auto& v = src.vertex(j);
        const auto& fu = dst.vertex(m(i));
        const auto& fv = dst.vertex(m(j));
        // u_e sits at 1/3 from u, so it lands at 1/3 from f(u) on {f(u), f(v)}.
        if (fu == fv) {
            assignment.emplace(VertexId::sub(u, v, 1), fu);
            assignment.emplace(VertexId::sub(u, v, 2), fu);
        } else {
            assignment.emplace(VertexId::sub(u, v, 1), VertexId::sub(fu, fv, 1));
            assignment.emplace(VertexId::sub(u, v, 2), VertexId::sub(fu, fv, 2));
        }
    }
    return SimplicialMapping(std::move(source3), std::move(target3), assignment);
}

SimplicialMapping lift_map_3(const SimplicialMapping& m)
{
    auto s3 = std::make_shared<const SimplicialGraph>(subdivide3(m.source()));
    auto t3 = m.source_ptr() == m.target_ptr() ? s3 : std::make_shared<const SimplicialGraph>(subdivide3(m.target()));
    return lift_map_3(m, s3, t3);
}

SimplicialMapping compose_tower(const std::vector<SimplicialMapping>& maps, int i, int j)
{
    const int l = static_cast<int>(maps.size());
    if (i < 0 || j < i || j > l) throw std::invalid_argument("compose_tower needs 0 <= i <= j <= l");
    for (int n = 0; n + 1 < l; ++n) {
        if (maps[n + 1].target_ptr() != maps[n].source_ptr() && !(maps[n + 1].target() == maps[n].source()))
            throw StructureError("tower is not chainable at level " + std::to_string(n + 1));
    }
    if (i == j) {
        if (l == 0) throw std::invalid_argument("compose_tower on an empty tower");
        return identity_map(i < l ? maps[i].target_ptr() : maps[l - 1].source_ptr());
    }
    SimplicialMapping acc = maps[j - 1];
    for (int n = j - 2; n >= i; --n) acc = compose(maps[n], acc);
    return acc;
}

} // namespace treechain
