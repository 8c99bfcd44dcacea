#include "treechain/geometry.hpp"

#include "treechain/segment.hpp"

#include <algorithm>
#include <map>

namespace treechain {

bool Interval::contains(const Rational& t) const
{
    bool above = lo < t || (lo == t && lo_closed);
    bool below = t < hi || (t == hi && hi_closed);
    return above && below;
}

bool operator==(const Interval& a, const Interval& b)
{
    return a.lo == b.lo && a.hi == b.hi && a.lo_closed == b.lo_closed && a.hi_closed == b.hi_closed;
}

std::optional<Interval> intersect(const Interval& a, const Interval& b)
{
    Interval out;
    if (a.lo > b.lo)
        out.lo = a.lo, out.lo_closed = a.lo_closed;
    else if (b.lo > a.lo)
        out.lo = b.lo, out.lo_closed = b.lo_closed;
    else
        out.lo = a.lo, out.lo_closed = a.lo_closed && b.lo_closed;
    if (a.hi < b.hi)
        out.hi = a.hi, out.hi_closed = a.hi_closed;
    else if (b.hi < a.hi)
        out.hi = b.hi, out.hi_closed = b.hi_closed;
    else
        out.hi = a.hi, out.hi_closed = a.hi_closed && b.hi_closed;
    if (out.lo < out.hi || (out.lo == out.hi && out.lo_closed && out.hi_closed)) return out;
    return std::nullopt;
}

Rational gap2(const Box& a, const Box& b)
{
    Rational dx = 0, dy = 0;
    if (b.x0 > a.x1) dx = b.x0 - a.x1;
    else if (a.x0 > b.x1) dx = a.x0 - b.x1;
    if (b.y0 > a.y1) dy = b.y0 - a.y1;
    else if (a.y0 > b.y1) dy = a.y0 - b.y1;
    return dx * dx + dy * dy;
}

namespace {

Box box_of(const Point& a, const Point& b)
{
    return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
}

void grow(Box& box, const Box& other)
{
    box.x0 = std::min(box.x0, other.x0);
    box.y0 = std::min(box.y0, other.y0);
    box.x1 = std::max(box.x1, other.x1);
    box.y1 = std::max(box.y1, other.y1);
}

// Interval b starts inside a or right where a ends with the shared point covered.
bool joins(const Interval& a, const Interval& b)
{
    return b.lo < a.hi || (b.lo == a.hi && (a.hi_closed || b.lo_closed));
}

bool within(const Interval& outer, const Interval& inner)
{
    bool lo_ok = outer.lo < inner.lo || (outer.lo == inner.lo && (outer.lo_closed || !inner.lo_closed));
    bool hi_ok = inner.hi < outer.hi || (inner.hi == outer.hi && (outer.hi_closed || !inner.hi_closed));
    return lo_ok && hi_ok;
}

void require_same_graph(const SegmentRegion& a, const SegmentRegion& b)
{
    if (a.graph() != b.graph() && !(a.graph() && b.graph() && *a.graph() == *b.graph()))
        throw StructureError("regions live on different graphs");
}

const EdgePiece* find_piece(const std::vector<EdgePiece>& pieces, int edge)
{
    auto it = std::lower_bound(pieces.begin(), pieces.end(), edge, [](const EdgePiece& p, int e) { return p.edge < e; });
    if (it == pieces.end() || it->edge != edge) return nullptr;
    return &*it;
}

} // namespace

SegmentRegion::SegmentRegion(GraphPtr graph, std::vector<int> vertices, std::vector<EdgePiece> pieces)
    : graph_(std::move(graph))
{
    if (!graph_) throw StructureError("region without a graph");
    if (!graph_->has_coords()) throw StructureError("region graph has no coordinates");
    const auto& edges = graph_->edges();

    std::map<int, std::vector<Interval>> by_edge;
    for (auto& piece : pieces) {
        if (piece.edge < 0 || piece.edge >= static_cast<int>(edges.size())) throw StructureError("edge index out of range");
        auto [a, b] = edges[piece.edge];
        for (auto iv : piece.intervals) {
            if (iv.lo < 0 || iv.hi > 1 || iv.lo > iv.hi) throw StructureError("interval outside [0,1]");
            if (sgn(iv.lo) == 0) {
                if (iv.lo_closed) vertices.push_back(a);
                iv.lo_closed = false;
            }
            if (iv.hi == 1) {
                if (iv.hi_closed) vertices.push_back(b);
                iv.hi_closed = false;
            }
            if (iv.lo < iv.hi || (iv.lo == iv.hi && iv.lo_closed && iv.hi_closed)) by_edge[piece.edge].push_back(iv);
        }
    }
    for (int v : vertices)
        if (v < 0 || v >= graph_->size()) throw StructureError("vertex index out of range");
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    vertices_ = std::move(vertices);

    for (auto& [edge, list] : by_edge) {
        std::sort(list.begin(), list.end(), [](const Interval& x, const Interval& y) {
            if (x.lo != y.lo) return x.lo < y.lo;
            return x.lo_closed && !y.lo_closed;
        });
        std::vector<Interval> merged{list.front()};
        for (std::size_t i = 1; i < list.size(); ++i) {
            auto& cur = merged.back();
            const auto& next = list[i];
            if (!joins(cur, next)) {
                merged.push_back(next);
                continue;
            }
            if (next.hi > cur.hi)
                cur.hi = next.hi, cur.hi_closed = next.hi_closed;
            else if (next.hi == cur.hi)
                cur.hi_closed = cur.hi_closed || next.hi_closed;
        }
        pieces_.push_back({edge, std::move(merged)});
    }

    bool first = true;
    auto add = [&](const Point& p, const Point& q) {
        Segment s{p, q, box_of(p, q)};
        if (first)
            box_ = s.box, first = false;
        else
            grow(box_, s.box);
        segments_.push_back(std::move(s));
    };
    for (int v : vertices_) add(graph_->coord(v), graph_->coord(v));
    for (const auto& piece : pieces_) {
        auto [a, b] = edges[piece.edge];
        const auto& pa = graph_->coord(a);
        const auto& pb = graph_->coord(b);
        for (const auto& iv : piece.intervals) add(seg::lerp(pa, pb, iv.lo), seg::lerp(pa, pb, iv.hi));
    }
}

bool SegmentRegion::contains_vertex(int i) const
{
    return std::binary_search(vertices_.begin(), vertices_.end(), i);
}

bool SegmentRegion::contains(const EdgePoint& p) const
{
    auto c = p.canonical();
    int a = graph_->index_of(c.a);
    if (c.is_vertex()) return contains_vertex(a);
    auto e = graph_->edge_index(a, graph_->index_of(c.b));
    if (!e) throw std::invalid_argument("point " + to_string(c) + " is not on an edge");
    const auto* piece = find_piece(pieces_, *e);
    if (!piece) return false;
    return std::any_of(piece->intervals.begin(), piece->intervals.end(), [&](const Interval& iv) { return iv.contains(c.t); });
}

bool operator==(const SegmentRegion& a, const SegmentRegion& b)
{
    bool same_graph = a.graph_ == b.graph_ || (a.graph_ && b.graph_ && *a.graph_ == *b.graph_);
    return same_graph && a.vertices_ == b.vertices_ && a.pieces_ == b.pieces_;
}

SegmentRegion star(const GraphPtr& graph, int v, const Rational& eps)
{
    if (!(sgn(eps) > 0 && eps <= 1)) throw std::invalid_argument("star radius must lie in (0,1]");
    std::vector<EdgePiece> pieces;
    for (int u : graph->neighbors(v)) {
        int e = *graph->edge_index(v, u);
        if (v < u)
            pieces.push_back({e, {{Rational(0), eps, false, false}}});
        else
            pieces.push_back({e, {{Rational(1 - eps), Rational(1), false, false}}});
    }
    return SegmentRegion(graph, {v}, std::move(pieces));
}

SegmentRegion unite(const std::vector<SegmentRegion>& parts)
{
    if (parts.empty()) throw std::invalid_argument("nothing to unite");
    std::vector<int> vertices;
    std::vector<EdgePiece> pieces;
    for (const auto& p : parts) {
        require_same_graph(parts.front(), p);
        vertices.insert(vertices.end(), p.vertices().begin(), p.vertices().end());
        pieces.insert(pieces.end(), p.pieces().begin(), p.pieces().end());
    }
    return SegmentRegion(parts.front().graph(), std::move(vertices), std::move(pieces));
}

SegmentRegion closure(const SegmentRegion& r)
{
    std::vector<EdgePiece> pieces = r.pieces();
    for (auto& piece : pieces)
        for (auto& iv : piece.intervals) iv.lo_closed = iv.hi_closed = true;
    // Closed ends at 0 and 1 turn into the endpoint vertices during normalization.
    return SegmentRegion(r.graph(), r.vertices(), std::move(pieces));
}

bool region_intersects(const SegmentRegion& a, const SegmentRegion& b)
{
    require_same_graph(a, b);
    const auto& va = a.vertices();
    const auto& vb = b.vertices();
    for (std::size_t i = 0, j = 0; i < va.size() && j < vb.size();) {
        if (va[i] == vb[j]) return true;
        va[i] < vb[j] ? ++i : ++j;
    }
    const auto& pa = a.pieces();
    const auto& pb = b.pieces();
    for (std::size_t i = 0, j = 0; i < pa.size() && j < pb.size();) {
        if (pa[i].edge < pb[j].edge) {
            ++i;
        } else if (pb[j].edge < pa[i].edge) {
            ++j;
        } else {
            for (const auto& x : pa[i].intervals)
                for (const auto& y : pb[j].intervals)
                    if (intersect(x, y)) return true;
            ++i, ++j;
        }
    }
    return false;
}

bool region_contains(const SegmentRegion& outer, const SegmentRegion& inner)
{
    require_same_graph(outer, inner);
    if (!std::includes(outer.vertices().begin(), outer.vertices().end(), inner.vertices().begin(), inner.vertices().end()))
        return false;
    for (const auto& piece : inner.pieces()) {
        const auto* host = find_piece(outer.pieces(), piece.edge);
        if (!host) return false;
        for (const auto& iv : piece.intervals)
            if (std::none_of(host->intervals.begin(), host->intervals.end(), [&](const Interval& o) { return within(o, iv); }))
                return false;
    }
    return true;
}

Rational set_distance_squared(const SegmentRegion& a, const SegmentRegion& b)
{
    require_same_graph(a, b);
    if (a.empty() || b.empty()) throw std::invalid_argument("distance to an empty region");
    std::optional<Rational> best;
    for (const auto& s : a.closed_segments())
        for (const auto& t : b.closed_segments()) {
            if (best && !(gap2(s.box, t.box) < *best)) continue;
            Rational d = seg::segment_dist2(s.a, s.b, t.a, t.b);
            if (sgn(d) == 0) return d;
            if (!best || d < *best) best = d;
        }
    return *best;
}

Rational diameter_squared(const SegmentRegion& r)
{
    std::vector<Point> ends;
    for (const auto& s : r.closed_segments()) {
        ends.push_back(s.a);
        ends.push_back(s.b);
    }
    Rational best = 0;
    for (std::size_t i = 0; i < ends.size(); ++i)
        for (std::size_t j = i + 1; j < ends.size(); ++j) best = std::max(best, seg::dist2(ends[i], ends[j]));
    return best;
}

SegmentRegion realize(const CoverSystem& s, const CoverSet& a)
{
    const auto& graph = s.top_ptr();
    std::vector<EdgePiece> pieces;
    for (int w : a.fiber)
        for (int u : graph->neighbors(w)) {
            int e = *graph->edge_index(w, u);
            if (w < u)
                pieces.push_back({e, {{Rational(0), a.epsilon, false, false}}});
            else
                pieces.push_back({e, {{Rational(1 - a.epsilon), Rational(1), false, false}}});
        }
    return SegmentRegion(graph, a.fiber, std::move(pieces));
}

bool member_by_preimage(const CoverSystem& s, const CoverSet& a, const EdgePoint& p)
{
    auto q = evaluate_realization(s.to_top(a.level), p).canonical();
    const auto& v = s.diagram().level(a.level).vertex(a.vertex);
    if (q.is_vertex()) return q.a == v;
    if (q.a == v) return q.t < a.epsilon;
    if (q.b == v) return 1 - q.t < a.epsilon;
    return false;
}

RealizedSystem realize_system(const CoverSystem& s, Exec exec)
{
    RealizedSystem r;
    const auto& all = s.all_sets();
    const int total = static_cast<int>(all.size());
    int offset = 0;
    for (int n = 0; n <= s.length(); ++n) {
        r.level_offset.push_back(offset);
        offset += static_cast<int>(s.cover(n).size());
    }
    r.regions.resize(total);
    r.closures.resize(total);
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::Parallel)
    for (int i = 0; i < total; ++i) {
        r.regions[i] = realize(s, *all[i]);
        r.closures[i] = closure(r.regions[i]);
    }
    return r;
}

CheckResult check_oracle_identity(const CoverSystem& s, const RealizedSystem& r, Exec exec)
{
    const auto& all = s.all_sets();
    const int total = static_cast<int>(all.size());
    auto hit = kernels::first_pair(exec, total, total, [&](int i, int j) {
        if (j < i) return false;
        bool comb = sets_intersect(*all[i], *all[j]);
        return region_intersects(r.regions[i], r.regions[j]) != comb || region_intersects(r.closures[i], r.closures[j]) != comb;
    });
    if (hit) {
        const auto& a = *all[hit->row];
        const auto& b = *all[hit->col];
        return CheckResult::fail("intersection of " + s.label(a) + " and " + s.label(b) + ": combinatorial "
                                 + (sets_intersect(a, b) ? "yes" : "no") + ", regions "
                                 + (region_intersects(r.regions[hit->row], r.regions[hit->col]) ? "yes" : "no") + ", closures "
                                 + (region_intersects(r.closures[hit->row], r.closures[hit->col]) ? "yes" : "no"));
    }
    const auto& top = s.top();
    auto miss = kernels::first_pair(exec, total, top.size(), [&](int i, int w) {
        bool comb = contains_member(w, *all[i]);
        return r.regions[i].contains_vertex(w) != comb || member_by_preimage(s, *all[i], EdgePoint::at_vertex(top.vertex(w))) != comb;
    });
    if (miss)
        return CheckResult::fail("membership of " + top.vertex(miss->col).to_string() + " in " + s.label(*all[miss->row])
                                 + " differs between the fiber and the geometry");
    return CheckResult::pass();
}

CheckResult check_taut_geometric(const CoverSystem& s, const RealizedSystem& r, Exec exec)
{
    const int total = static_cast<int>(r.regions.size());
    auto hit = kernels::first_upper_pair(exec, total, [&](int i, int j) {
        return !region_intersects(r.regions[i], r.regions[j]) && region_intersects(r.closures[i], r.closures[j]);
    });
    if (hit)
        return CheckResult::fail(s.label(*s.all_sets()[hit->row]) + " and " + s.label(*s.all_sets()[hit->col])
                                 + " are disjoint but their closures meet");
    return CheckResult::pass();
}

CheckResult check_coverage(const CoverSystem& s, const RealizedSystem& r)
{
    const auto& top = s.top();
    for (int n = 0; n <= s.length(); ++n) {
        std::vector<SegmentRegion> parts;
        for (std::size_t v = 0; v < s.cover(n).size(); ++v) parts.push_back(r.region(n, static_cast<int>(v)));
        auto all = unite(parts);
        std::string where = "level " + std::to_string(n + 1);
        if (static_cast<int>(all.vertices().size()) != top.size()) return CheckResult::fail(where + " misses a vertex");
        if (static_cast<int>(all.pieces().size()) != top.edge_count()) return CheckResult::fail(where + " misses an edge");
        for (const auto& piece : all.pieces()) {
            const auto& iv = piece.intervals;
            if (iv.size() != 1 || sgn(iv[0].lo) != 0 || iv[0].hi != 1) {
                auto [a, b] = top.edges()[piece.edge];
                return CheckResult::fail(where + " leaves a gap on edge {" + top.vertex(a).to_string() + "," + top.vertex(b).to_string() + "}");
            }
        }
    }
    return CheckResult::pass();
}

CheckResult check_triples_geometric(const CoverSystem& s, const RealizedSystem& r)
{
    const auto& top = s.top();
    for (int n = 0; n <= s.length(); ++n) {
        const int size = static_cast<int>(s.cover(n).size());
        std::vector<int> count(top.size(), 0);
        std::map<int, std::vector<std::pair<int, Interval>>> by_edge;
        for (int v = 0; v < size; ++v) {
            const auto& region = r.region(n, v);
            for (int w : region.vertices())
                if (++count[w] >= 3)
                    return CheckResult::fail("vertex " + top.vertex(w).to_string() + " lies in three sets of level " + std::to_string(n + 1));
            for (const auto& piece : region.pieces())
                for (const auto& iv : piece.intervals) by_edge[piece.edge].emplace_back(v, iv);
        }
        for (const auto& [edge, list] : by_edge)
            for (std::size_t i = 0; i < list.size(); ++i)
                for (std::size_t j = i + 1; j < list.size(); ++j) {
                    if (list[i].first == list[j].first) continue;
                    auto ij = intersect(list[i].second, list[j].second);
                    if (!ij) continue;
                    for (std::size_t k = j + 1; k < list.size(); ++k) {
                        if (list[k].first == list[i].first || list[k].first == list[j].first) continue;
                        if (intersect(*ij, list[k].second))
                            return CheckResult::fail(s.label(s.set(n, list[i].first)) + ", " + s.label(s.set(n, list[j].first)) + " and "
                                                     + s.label(s.set(n, list[k].first)) + " share a point");
                    }
                }
    }
    return CheckResult::pass();
}

CheckResult check_strong_refinement_geometric(const CoverSystem& s, const RealizedSystem& r)
{
    for (int j = 1; j <= s.length(); ++j)
        for (int n = 0; n < j; ++n) {
            auto witness = compose_tower(s.diagram().g_row(), n, j);
            for (std::size_t u = 0; u < s.cover(j).size(); ++u) {
                int v = witness(static_cast<int>(u));
                if (!region_contains(r.region(n, v), r.closures[r.index(j, static_cast<int>(u))]))
                    return CheckResult::fail("closure of " + s.label(s.set(j, static_cast<int>(u))) + " is not inside " + s.label(s.set(n, v)));
            }
        }
    return CheckResult::pass();
}

CheckResult check_D2prime_geometric(const CoverSystem& s, const RealizedSystem& r, Exec exec)
{
    for (int m = 1; m < s.length(); ++m) {
        const int rows = static_cast<int>(s.cover(m + 1).size());
        const int cols = static_cast<int>(s.cover(m).size());
        auto nested = [&](int u, int v) { return region_contains(r.region(m, v), r.closures[r.index(m + 1, u)]); };
        auto disagree = kernels::first_pair(exec, rows, cols, [&](int u, int v) {
            return nested(u, v) != cover_contains(s.set(m, v), s.set(m + 1, u));
        });
        if (disagree)
            return CheckResult::fail("containment of cl(" + s.label(s.set(m + 1, disagree->row)) + ") in " + s.label(s.set(m, disagree->col))
                                     + " differs between fibers and geometry");
        auto hit = kernels::first_pair(exec, rows, cols, [&](int u, int v) {
            if (!nested(u, v)) return false;
            int pu = r.index(m, s.phi(m).table[u]);
            int pv = r.index(m - 1, s.phi(m - 1).table[v]);
            return !region_contains(r.regions[pv], r.closures[pu]);
        });
        if (hit)
            return CheckResult::fail("cl(" + s.label(s.set(m + 1, hit->row)) + ") lies in " + s.label(s.set(m, hit->col)) + " but the closure of "
                                     + s.label(s.phi_image(m, hit->row)) + " is not inside " + s.label(s.phi_image(m - 1, hit->col)));
    }
    return CheckResult::pass();
}

namespace {

// Smallest squared distance between disjoint members of `regions[lo, hi)`.
std::optional<std::pair<Rational, kernels::PairHit>> min_disjoint_distance(const std::vector<SegmentRegion>& regions, int lo, int hi, Exec exec)
{
    const int size = hi - lo;
    return kernels::min_over_pairs<Rational>(
        exec, size, size,
        [&](int i, int j) { return i < j && !region_intersects(regions[lo + i], regions[lo + j]); },
        [&](int i, int j) { return set_distance_squared(regions[lo + i], regions[lo + j]); },
        [&](int i, int j) { return gap2(regions[lo + i].box(), regions[lo + j].box()); });
}

} // namespace

MeshReport compute_rho_and_mesh(const CoverSystem& s, const RealizedSystem& r, Exec exec)
{
    MeshReport rep;
    const int first = static_cast<int>(s.cover(0).size());
    if (auto best = min_disjoint_distance(r.regions, 0, first, exec)) rep.rho2 = best->first;
    for (int n = 0; n <= s.length(); ++n) {
        Rational worst = 0;
        for (std::size_t v = 0; v < s.cover(n).size(); ++v) worst = std::max(worst, diameter_squared(r.region(n, static_cast<int>(v))));
        rep.mesh2.push_back(worst);
        bool below = false;
        if (rep.rho2) {
            Rational scale = 1;
            for (int i = 0; i <= n; ++i) scale *= 4;
            below = worst < *rep.rho2 / scale;
        }
        rep.below_rho_scale.push_back(below);
    }
    return rep;
}

EnlargedFamily enlarge_taut_family(const std::vector<SegmentRegion>& regions, const std::vector<int>& levels, Exec exec)
{
    if (regions.size() != levels.size()) throw std::invalid_argument("one level per region expected");
    auto best = min_disjoint_distance(regions, 0, static_cast<int>(regions.size()), exec);
    if (!best) throw StructureError("no disjoint pair: m is undefined");
    if (sgn(best->first) == 0)
        throw StructureError("family is not taut: members " + std::to_string(best->second.row) + " and " + std::to_string(best->second.col)
                             + " are disjoint with touching closures");
    EnlargedFamily e;
    e.m2 = best->first / 9;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        Rational r2 = e.m2;
        for (int n = 0; n < levels[i]; ++n) r2 /= 4;
        e.sets.push_back({levels[i], static_cast<int>(i), "#" + std::to_string(i), r2});
    }
    return e;
}

EnlargedFamily enlarge_taut_family(const CoverSystem& s, const RealizedSystem& r, Exec exec)
{
    std::vector<int> levels;
    for (const auto* a : s.all_sets()) levels.push_back(a->level);
    auto e = enlarge_taut_family(r.regions, levels, exec);
    for (std::size_t i = 0; i < e.sets.size(); ++i) {
        const auto& a = *s.all_sets()[i];
        e.sets[i].vertex = a.vertex;
        e.sets[i].label = s.label(a);
    }
    return e;
}

bool enlarged_closures_disjoint(const Rational& d2, const Rational& ra2, const Rational& rb2)
{
    Rational slack = d2 - ra2 - rb2;
    return sgn(slack) > 0 && slack * slack > 4 * ra2 * rb2;
}

namespace {

std::string name_of(const EnlargedFamily& e, int i)
{
    const auto& label = e.sets.at(i).label;
    return label.empty() ? "#" + std::to_string(i) : label;
}

CheckResult check_shape(const std::vector<SegmentRegion>& regions, const EnlargedFamily& e)
{
    if (regions.size() != e.sets.size()) return CheckResult::fail("enlarged family and regions differ in size");
    for (std::size_t i = 0; i < e.sets.size(); ++i)
        if (sgn(e.sets[i].radius2) <= 0) return CheckResult::fail(name_of(e, static_cast<int>(i)) + " has a non-positive radius");
    return CheckResult::pass();
}

} // namespace

CheckResult check_enlargement_disjoint(const std::vector<SegmentRegion>& regions, const EnlargedFamily& e, Exec exec)
{
    if (auto r = check_shape(regions, e); !r) return r;
    auto hit = kernels::first_upper_pair(exec, static_cast<int>(regions.size()), [&](int i, int j) {
        if (region_intersects(regions[i], regions[j])) return false;
        const auto& ri = e.sets[i].radius2;
        const auto& rj = e.sets[j].radius2;
        if (enlarged_closures_disjoint(gap2(regions[i].box(), regions[j].box()), ri, rj)) return false;
        return !enlarged_closures_disjoint(set_distance_squared(regions[i], regions[j]), ri, rj);
    });
    if (hit)
        return CheckResult::fail(name_of(e, hit->row) + " and " + name_of(e, hit->col) + " are disjoint but their enlargements have meeting closures");
    return CheckResult::pass();
}

CheckResult check_enlargement_nested(const std::vector<SegmentRegion>& regions, const EnlargedFamily& e, Exec exec)
{
    if (auto r = check_shape(regions, e); !r) return r;
    const int total = static_cast<int>(regions.size());
    auto hit = kernels::first_pair(exec, total, total, [&](int i, int j) {
        if (!(e.sets[i].level > e.sets[j].level)) return false;
        if (!region_contains(regions[j], regions[i])) return false;
        return !(e.sets[i].radius2 < e.sets[j].radius2);
    });
    if (hit)
        return CheckResult::fail(name_of(e, hit->row) + " lies in " + name_of(e, hit->col) + " but its enlargement radius is not smaller");
    return CheckResult::pass();
}

} // namespace treechain
