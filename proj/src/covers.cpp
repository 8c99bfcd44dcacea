#include "treechain/covers.hpp"

#include <algorithm>
#include <sstream>

namespace treechain {

EpsilonSchedule EpsilonSchedule::standard(int l)
{
    if (l < 0) throw std::invalid_argument("schedule length must be non-negative");
    EpsilonSchedule s;
    for (int n = 0; n <= l; ++n) s.values.push_back(Rational(1, 2) + Rational(1, 2 * (n + 2)));
    for (auto& e : s.values) e.canonicalize();
    return s;
}

CheckResult EpsilonSchedule::validate() const
{
    if (values.empty()) return CheckResult::fail("empty schedule");
    if (!(values.front() < 1)) return CheckResult::fail("ε_0 = " + to_string(values.front()) + " is not below 1");
    if (!(values.back() > Rational(1, 2)))
        return CheckResult::fail("ε_" + std::to_string(length()) + " = " + to_string(values.back()) + " is not above 1/2");
    for (int n = 0; n < length(); ++n)
        if (!(values[n + 1] < values[n]))
            return CheckResult::fail("ε_" + std::to_string(n + 1) + " = " + to_string(values[n + 1]) + " does not decrease from ε_"
                                     + std::to_string(n) + " = " + to_string(values[n]));
    return CheckResult::pass();
}

std::string CoverSystem::label(const CoverSet& a) const
{
    return "U_" + std::to_string(a.level + 1) + "^" + diagram_.level(a.level).vertex(a.vertex).to_string();
}

CoverSystem CoverSystem::assemble(TreeDiagram d, EpsilonSchedule eps, std::vector<PatternFunction> phi)
{
    const int l = d.length();
    if (eps.length() != l)
        throw StructureError("schedule has " + std::to_string(eps.values.size()) + " values for " + std::to_string(l + 1) + " levels");
    if (static_cast<int>(phi.size()) != l) throw StructureError("expected " + std::to_string(l) + " pattern functions");
    for (int n = 0; n < l; ++n) {
        const auto& p = phi[n];
        if (p.level != n) throw StructureError("pattern function " + std::to_string(n) + " carries level " + std::to_string(p.level));
        if (static_cast<int>(p.table.size()) != d.level(n + 1).size())
            throw StructureError("pattern function " + std::to_string(n) + " is not total");
        for (int x : p.table)
            if (x < 0 || x >= d.level(n).size()) throw StructureError("pattern function " + std::to_string(n) + " leaves its cover");
    }

    CoverSystem s;
    s.diagram_ = std::move(d);
    s.eps_ = std::move(eps);
    s.phi_ = std::move(phi);
    const auto& top = s.top();
    const auto size = static_cast<std::size_t>(top.size());
    std::vector<std::vector<CoverSet>> covers;
    for (int n = 0; n <= l; ++n) {
        s.to_top_.push_back(l == 0 ? identity_map(s.top_ptr()) : compose_tower(s.diagram_.g_row(), n, l));
        std::vector<CoverSet> cover(s.diagram_.level(n).size());
        for (int v = 0; v < static_cast<int>(cover.size()); ++v) {
            cover[v].level = n;
            cover[v].vertex = v;
            cover[v].epsilon = s.eps_[n];
            cover[v].members.resize(size);
            cover[v].reach.resize(size);
        }
        const auto& g = s.to_top_.back();
        for (int w = 0; w < top.size(); ++w) {
            auto& a = cover[g(w)];
            a.fiber.push_back(w);
            a.members.set(w);
            a.reach.set(w);
            for (int z : top.neighbors(w)) a.reach.set(z);
        }
        covers.push_back(std::move(cover));
    }
    s.covers_ = std::make_shared<const std::vector<std::vector<CoverSet>>>(std::move(covers));
    for (const auto& cover : *s.covers_)
        for (const auto& a : cover) s.all_.push_back(&a);
    return s;
}

CoverSystem build_cover_system(const TreeDiagram& d, const EpsilonSchedule& eps)
{
    if (eps.length() != d.length())
        throw StructureError("schedule has " + std::to_string(eps.values.size()) + " values for " + std::to_string(d.length() + 1) + " levels");
    if (auto r = eps.validate(); !r) throw StructureError("bad schedule: " + r.witness);
    if (auto r = check_commutative(d); !r) throw StructureError(r.witness);
    if (auto r = check_surjective(d); !r) throw StructureError(r.witness);
    if (d.length() > 0) {
        auto near = proximity_vertices(d.f(0), d.g(0));
        if (!near.empty()) throw StructureError("f_0 and g_0 have proximity vertex " + near.front().to_string());
    }
    std::vector<PatternFunction> phi;
    for (int n = 0; n < d.length(); ++n) phi.push_back({n, d.f(n).image()});
    return CoverSystem::assemble(d, eps, std::move(phi));
}

bool sets_intersect(const CoverSet& a, const CoverSet& b)
{
    return a.reach.intersects(b.members);
}

bool contains_member(int w, const CoverSet& a)
{
    return w >= 0 && static_cast<std::size_t>(w) < a.members.size() && a.members.test(w);
}

bool cover_contains(const CoverSet& outer, const CoverSet& inner)
{
    return inner.level >= outer.level && inner.members.is_subset_of(outer.members);
}

CheckResult check_fibers(const CoverSystem& s)
{
    const auto size = static_cast<std::size_t>(s.top().size());
    for (int n = 0; n <= s.length(); ++n) {
        boost::dynamic_bitset<> seen(size);
        for (const auto& a : s.cover(n)) {
            if (a.fiber.empty()) return CheckResult::fail(s.label(a) + " has an empty fiber");
            if (seen.intersects(a.members)) return CheckResult::fail(s.label(a) + " overlaps another fiber of its level");
            seen |= a.members;
        }
        if (seen.count() != size) return CheckResult::fail("fibers of level " + std::to_string(n + 1) + " miss a vertex of the top tree");
    }
    return CheckResult::pass();
}

CheckResult check_refinement(const CoverSystem& s)
{
    for (int n = 0; n < s.length(); ++n)
        for (const auto& u : s.cover(n + 1)) {
            const auto& v = s.set(n, s.diagram().g(n)(u.vertex));
            if (!cover_contains(v, u)) return CheckResult::fail(s.label(u) + " is not inside " + s.label(v));
        }
    return CheckResult::pass();
}

RefinementResult strongly_refines(const CoverSystem& s, int j, int n)
{
    if (!(j > n)) throw std::invalid_argument("strong refinement needs j > n");
    RefinementResult out;
    auto g = compose_tower(s.diagram().g_row(), n, j);
    out.witness = g.image();
    if (!(s.schedule()[j] < s.schedule()[n])) {
        out.result = CheckResult::fail("ε_" + std::to_string(j) + " is not below ε_" + std::to_string(n));
        return out;
    }
    for (const auto& u : s.cover(j)) {
        const auto& v = s.set(n, out.witness[u.vertex]);
        if (!cover_contains(v, u)) {
            out.result = CheckResult::fail("cl(" + s.label(u) + ") is not inside " + s.label(v));
            return out;
        }
    }
    return out;
}

CheckResult check_strong_refinement(const CoverSystem& s)
{
    for (int j = 1; j <= s.length(); ++j)
        for (int n = 0; n < j; ++n)
            if (auto r = strongly_refines(s, j, n).result; !r) return r;
    return CheckResult::pass();
}

namespace {

int cover_size(const CoverSystem& s, int n)
{
    return static_cast<int>(s.cover(n).size());
}

} // namespace

CheckResult check_D1(const CoverSystem& s, Exec exec)
{
    if (s.length() < 1) return CheckResult::pass();
    auto hit = kernels::first_pair(exec, cover_size(s, 0), cover_size(s, 1), [&](int u, int v) {
        const auto& U = s.set(0, u);
        const auto& V = s.set(1, v);
        return sets_intersect(U, V) && sets_intersect(s.phi_image(0, v), U);
    });
    if (!hit) return CheckResult::pass();
    const auto& U = s.set(0, hit->row);
    const auto& V = s.set(1, hit->col);
    return CheckResult::fail(s.label(U) + " meets " + s.label(V) + " and φ_1(" + s.label(V) + ") = " + s.label(s.phi_image(0, hit->col)));
}

CheckResult check_D2(const CoverSystem& s, Exec exec)
{
    for (int m = 1; m < s.length(); ++m) {
        auto hit = kernels::first_pair(exec, cover_size(s, m + 1), cover_size(s, m), [&](int u, int v) {
            return sets_intersect(s.set(m + 1, u), s.set(m, v)) && !sets_intersect(s.phi_image(m, u), s.phi_image(m - 1, v));
        });
        if (hit)
            return CheckResult::fail(s.label(s.set(m + 1, hit->row)) + " meets " + s.label(s.set(m, hit->col)) + " but their images "
                                     + s.label(s.phi_image(m, hit->row)) + " and " + s.label(s.phi_image(m - 1, hit->col)) + " are disjoint");
    }
    return CheckResult::pass();
}

CheckResult check_D2prime(const CoverSystem& s, Exec exec)
{
    for (int m = 1; m < s.length(); ++m) {
        auto hit = kernels::first_pair(exec, cover_size(s, m + 1), cover_size(s, m), [&](int u, int v) {
            // cl(U) ⊆ V across consecutive levels is fiber inclusion (ε strictly drops).
            return cover_contains(s.set(m, v), s.set(m + 1, u)) && !cover_contains(s.phi_image(m - 1, v), s.phi_image(m, u));
        });
        if (hit)
            return CheckResult::fail("cl(" + s.label(s.set(m + 1, hit->row)) + ") lies in " + s.label(s.set(m, hit->col)) + " but "
                                     + s.label(s.phi_image(m, hit->row)) + " is not inside " + s.label(s.phi_image(m - 1, hit->col)));
    }
    return CheckResult::pass();
}

CheckResult check_D3(const CoverSystem& s, Exec exec)
{
    for (int m = 0; m < s.length(); ++m) {
        auto hit = kernels::first_upper_pair(exec, cover_size(s, m + 1), [&](int u, int v) {
            return sets_intersect(s.set(m + 1, u), s.set(m + 1, v)) && !sets_intersect(s.phi_image(m, u), s.phi_image(m, v));
        });
        if (hit)
            return CheckResult::fail(s.label(s.set(m + 1, hit->row)) + " meets " + s.label(s.set(m + 1, hit->col)) + " but "
                                     + s.label(s.phi_image(m, hit->row)) + " and " + s.label(s.phi_image(m, hit->col)) + " are disjoint");
    }
    return CheckResult::pass();
}

CheckResult check_taut_and_triples(const CoverSystem& s, Exec exec)
{
    const auto& all = s.all_sets();
    const int total = static_cast<int>(all.size());
    auto asym = kernels::first_upper_pair(exec, total, [&](int a, int b) {
        return sets_intersect(*all[a], *all[b]) != sets_intersect(*all[b], *all[a]);
    });
    if (asym) return CheckResult::fail("intersection of " + s.label(*all[asym->row]) + " and " + s.label(*all[asym->col]) + " is not symmetric");

    for (int n = 0; n <= s.length(); ++n) {
        const auto& cover = s.cover(n);
        const int size = cover_size(s, n);
        auto hit = kernels::first_upper_pair(exec, size, [&](int a, int b) {
            if (!sets_intersect(cover[a], cover[b])) return false;
            for (int c = b + 1; c < size; ++c)
                if (sets_intersect(cover[a], cover[c]) && sets_intersect(cover[b], cover[c])) return true;
            return false;
        });
        if (hit)
            return CheckResult::fail(s.label(cover[hit->row]) + " and " + s.label(cover[hit->col]) + " lie in a pairwise-meeting triple");
    }
    return CheckResult::pass();
}

SimplicialGraph nerve(const CoverSystem& s, int n)
{
    const auto& level = s.diagram().level(n);
    const auto& cover = s.cover(n);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (std::size_t a = 0; a < cover.size(); ++a)
        for (std::size_t b = a + 1; b < cover.size(); ++b)
            if (sets_intersect(cover[a], cover[b])) edges.emplace_back(level.vertex(cover[a].vertex), level.vertex(cover[b].vertex));
    return SimplicialGraph(level.vertices(), edges);
}

CheckResult nerve_isomorphic_to(const CoverSystem& s, int n)
{
    auto nv = nerve(s, n);
    const auto& level = s.diagram().level(n);
    // The canonical map U_n^u -> u is the identity on labels here.
    for (int a = 0; a < level.size(); ++a)
        for (int b = a + 1; b < level.size(); ++b)
            if (nv.adjacent(a, b) != level.adjacent(a, b))
                return CheckResult::fail("nerve of level " + std::to_string(n + 1) + " and T_" + std::to_string(n) + " disagree on "
                                         + level.vertex(a).to_string() + "-" + level.vertex(b).to_string());
    return CheckResult::pass();
}

std::vector<int> example1_table()
{
    struct Range {
        int from, to, target;
    };
    static const Range ranges[] = {
        {1, 32, 13}, {33, 33, 12}, {34, 34, 11}, {35, 35, 10}, {36, 36, 5},  {37, 37, 6},  {38, 82, 7},   {83, 83, 8},
        {84, 97, 9}, {98, 98, 6},  {99, 99, 5},  {100, 100, 4}, {101, 101, 3}, {102, 102, 2}, {103, 131, 1},
    };
    std::vector<int> table;
    for (const auto& r : ranges)
        for (int i = r.from; i <= r.to; ++i) table.push_back(r.target);
    return table;
}

std::vector<int> example1_segments(const std::vector<int>& table)
{
    std::vector<int> runs;
    for (std::size_t i = 0; i < table.size();) {
        std::size_t j = i;
        while (j < table.size() && table[j] == table[i]) ++j;
        runs.push_back(static_cast<int>(j - i));
        i = j;
    }
    std::vector<int> segments;
    bool prev_single = false;
    for (int r : runs) {
        if (r == 1 && prev_single)
            ++segments.back();
        else
            segments.push_back(r);
        prev_single = r == 1;
    }
    return segments;
}

Example1Report check_example1(const std::vector<int>& table)
{
    Example1Report rep;
    rep.total = table.size() == 131;
    rep.image_in_range = std::all_of(table.begin(), table.end(), [](int j) { return 1 <= j && j <= 13; });
    rep.usage.assign(13, 0);
    for (int j : table)
        if (1 <= j && j <= 13) ++rep.usage[j - 1];
    rep.segments = example1_segments(table);
    rep.segments_match = rep.segments == std::vector<int>{32, 5, 45, 1, 14, 5, 29};
    return rep;
}

} // namespace treechain
