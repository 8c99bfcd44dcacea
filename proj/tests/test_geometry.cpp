#include "system_support.hpp"
#include "test_support.hpp"

#include "treechain/geometry.hpp"

#include <doctest.h>

using namespace treechain;
using namespace treechain::testing;
using family::v;

namespace {

Rational brute_distance2(const SegmentRegion& a, const SegmentRegion& b)
{
    std::optional<Rational> best;
    for (const auto& s : a.closed_segments())
        for (const auto& t : b.closed_segments()) {
            Rational d = seg::segment_dist2(s.a, s.b, t.a, t.b);
            if (!best || d < *best) best = d;
        }
    return *best;
}

/// Decides intersection pointwise: on each edge every interval endpoint of
/// either region and every midpoint between consecutive endpoints is tested.
bool sampled_meet(const SegmentRegion& a, const SegmentRegion& b)
{
    const auto& g = *a.graph();
    for (int w = 0; w < g.size(); ++w) {
        auto p = EdgePoint::at_vertex(g.vertex(w));
        if (a.contains(p) && b.contains(p)) return true;
    }
    for (auto [p, q] : g.edges()) {
        std::vector<Rational> ts{Rational(0), Rational(1)};
        for (const auto* r : {&a, &b})
            for (const auto& piece : r->pieces())
                if (g.edges()[piece.edge] == std::make_pair(p, q))
                    for (const auto& iv : piece.intervals) {
                        ts.push_back(iv.lo);
                        ts.push_back(iv.hi);
                    }
        std::sort(ts.begin(), ts.end());
        std::vector<Rational> probes;
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            probes.push_back(ts[i]);
            probes.push_back((ts[i] + ts[i + 1]) / 2);
        }
        for (const auto& t : probes) {
            if (sgn(t) == 0 || t == 1) continue;
            EdgePoint x{g.vertex(p), g.vertex(q), t};
            if (a.contains(x) && b.contains(x)) return true;
        }
    }
    return false;
}

GraphPtr unit_edge()
{
    return share(path_graph(2));
}

} // namespace

TEST_CASE("interval intersection")
{
    Interval a{Rational(0), Rational(1, 2), false, false};
    Interval b{Rational(1, 2), Rational(1), true, false};
    CHECK_FALSE(intersect(a, b));
    a.hi_closed = true;
    auto ab = intersect(a, b);
    REQUIRE(ab);
    CHECK(ab->lo == Rational(1, 2));
    CHECK(ab->hi == Rational(1, 2));
    CHECK(ab->contains(Rational(1, 2)));
}

TEST_CASE("regions normalize to a canonical form")
{
    auto g = share(path_graph(3));
    SegmentRegion r(g, {}, {{1, {{Rational(1, 2), Rational(3, 4), false, true}}}, {1, {{Rational(1, 4), Rational(1, 2), false, true}}}});
    REQUIRE(r.pieces().size() == 1);
    REQUIRE(r.pieces()[0].intervals.size() == 1);
    CHECK(r.pieces()[0].intervals[0] == Interval{Rational(1, 4), Rational(3, 4), false, true});

    // Open at the same point: kept apart.
    SegmentRegion gap(g, {}, {{0, {{Rational(0), Rational(1, 2), false, false}, {Rational(1, 2), Rational(1), false, false}}}});
    CHECK(gap.pieces()[0].intervals.size() == 2);
    CHECK_FALSE(gap.contains({op(0), op(1), Rational(1, 2)}));

    // A closed end at a vertex becomes that vertex.
    SegmentRegion at_end(g, {}, {{0, {{Rational(0), Rational(1, 3), true, false}}}});
    CHECK(at_end.vertices() == std::vector<int>{0});
    CHECK(at_end == star(g, 0, Rational(1, 3)));

    CHECK_THROWS_AS(SegmentRegion(g, {}, {{5, {}}}), StructureError);
    CHECK_THROWS_AS(SegmentRegion(g, {}, {{0, {{Rational(0), Rational(2), false, false}}}}), StructureError);
    CHECK_THROWS_AS(SegmentRegion(share(SimplicialGraph({op(0)}, {})), {0}, {}), StructureError);
}

TEST_CASE("stars")
{
    auto t = share(family::build_tree({4, 3}));
    auto end = star(t, t->index_of(v(0, 1)), Rational(2, 3));
    REQUIRE(end.pieces().size() == 1);
    CHECK(end.pieces()[0].intervals.size() == 1);
    auto centre = star(t, t->index_of(v(4, 0)), Rational(2, 3));
    CHECK(centre.pieces().size() == 4);

    // Adjacent stars overlap on (1-ε, ε) of the shared edge.
    auto e = unit_edge();
    for (auto eps : {Rational(3, 5), Rational(1, 2), Rational(2, 5)}) {
        auto a = star(e, 0, eps);
        auto b = star(e, 1, eps);
        CHECK(region_intersects(a, b) == (eps > Rational(1, 2)));
        if (eps > Rational(1, 2)) {
            CHECK(a.contains({op(0), op(1), Rational(1) - eps + Rational(1, 100)}));
            CHECK(b.contains({op(0), op(1), eps - Rational(1, 100)}));
        }
    }
    CHECK_THROWS_AS(star(e, 0, Rational(0)), std::invalid_argument);
}

TEST_CASE("closure and containment")
{
    auto t = share(family::build_tree({4, 1}));
    for (int w = 0; w < t->size(); ++w) {
        auto small = star(t, w, Rational(1, 2));
        auto big = star(t, w, Rational(3, 5));
        CHECK(region_contains(small, small));
        CHECK(region_contains(big, closure(small)));
        CHECK_FALSE(region_contains(small, closure(small)));
        CHECK_FALSE(region_contains(small, big));
        CHECK(region_contains(closure(small), small));
    }
    auto full = closure(star(t, 0, Rational(1)));
    for (int u : t->neighbors(0)) CHECK(full.contains_vertex(u));

    auto other = share(family::build_tree({4, 2}));
    CHECK_THROWS_AS(region_intersects(star(t, 0, Rational(1, 2)), star(other, 0, Rational(1, 2))), StructureError);
}

TEST_CASE("hand distances")
{
    std::map<VertexId, Point> pts{{op(0), {0, 0}}, {op(1), {1, 0}}, {op(2), {0, 1}}, {op(3), {1, 1}}};
    auto g = share(SimplicialGraph({op(0), op(1), op(2), op(3)}, {{op(0), op(1)}, {op(2), op(3)}}, pts));
    SegmentRegion low(g, {}, {{0, {{Rational(0), Rational(1), false, false}}}});
    SegmentRegion high(g, {}, {{1, {{Rational(0), Rational(1), false, false}}}});
    CHECK(set_distance_squared(low, high) == 1);

    auto e = unit_edge();
    CHECK(set_distance_squared(star(e, 0, Rational(1, 2)), star(e, 1, Rational(1, 2))) == 0);
    for (auto eps : {Rational(1, 3), Rational(1, 5), Rational(2, 5)}) {
        Rational gap = 1 - 2 * eps;
        CHECK(set_distance_squared(star(e, 0, eps), star(e, 1, eps)) == gap * gap);
    }
    CHECK_THROWS_AS(set_distance_squared(SegmentRegion(e, {}, {}), star(e, 0, Rational(1, 2))), std::invalid_argument);
    CHECK(diameter_squared(star(e, 0, Rational(1, 2))) == Rational(1, 4));
}

TEST_CASE("oracle identity on generated systems")
{
    for (int l = 2; l <= 5; ++l) {
        CAPTURE(l);
        auto s = family_system(l);
        auto r = realize_system(s);
        CHECK(check_oracle_identity(s, r).ok);
        CHECK(check_coverage(s, r).ok);
        CHECK(check_triples_geometric(s, r).ok);
        CHECK(check_strong_refinement_geometric(s, r).ok);
        CHECK(check_D2prime_geometric(s, r).ok);
    }
}

TEST_CASE("region intersection agrees with pointwise sampling")
{
    auto s = family_system(2);
    auto r = realize_system(s);
    const int total = static_cast<int>(r.regions.size());
    for (int i = 0; i < total; ++i)
        for (int j = i; j < total; ++j) {
            CHECK(region_intersects(r.regions[i], r.regions[j]) == sampled_meet(r.regions[i], r.regions[j]));
            CHECK(region_intersects(r.closures[i], r.closures[j]) == sampled_meet(r.closures[i], r.closures[j]));
        }
}

TEST_CASE("random membership against the preimage route")
{
    auto s = family_system(3);
    auto r = realize_system(s);
    random::Engine rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        auto p = random_point(s.top(), rng);
        for (int n = 0; n <= 3; ++n)
            for (const auto& a : s.cover(n)) {
                bool geometric = r.region(n, a.vertex).contains(p);
                CHECK(geometric == member_by_preimage(s, a, p));
            }
    }
}

TEST_CASE("ρ and mesh")
{
    auto s = family_system(2);
    auto r = realize_system(s);
    auto rep = compute_rho_and_mesh(s, r);
    REQUIRE(rep.rho2);
    std::optional<Rational> brute;
    for (std::size_t a = 0; a < s.cover(0).size(); ++a)
        for (std::size_t b = a + 1; b < s.cover(0).size(); ++b) {
            const auto& x = r.region(0, static_cast<int>(a));
            const auto& y = r.region(0, static_cast<int>(b));
            if (region_intersects(x, y)) continue;
            auto d = brute_distance2(x, y);
            if (!brute || d < *brute) brute = d;
        }
    CHECK(*rep.rho2 == *brute);
    REQUIRE(rep.mesh2.size() == 3);
    for (int n = 0; n < 2; ++n) CHECK(rep.mesh2[n + 1] <= rep.mesh2[n]);
    for (std::size_t a = 0; a < s.cover(2).size(); ++a) CHECK(diameter_squared(r.region(2, static_cast<int>(a))) <= rep.mesh2[2]);

    // Serial and parallel scans give the same minimum.
    auto serial = compute_rho_and_mesh(s, r, Exec::Serial);
    CHECK(*serial.rho2 == *rep.rho2);
}

TEST_CASE("single-edge ρ")
{
    auto e = unit_edge();
    std::vector<SegmentRegion> regions{star(e, 0, Rational(2, 5)), star(e, 1, Rational(2, 5))};
    auto fam = enlarge_taut_family(regions, {0, 0});
    CHECK(fam.m2 * 9 == Rational(1, 25));
}

TEST_CASE("enlargement hand case: sets at distance 1")
{
    std::map<VertexId, Point> pts{{op(0), {0, 0}}, {op(1), {1, 0}}, {op(2), {0, 1}}, {op(3), {1, 1}}};
    auto g = share(SimplicialGraph({op(0), op(1), op(2), op(3)}, {{op(0), op(1)}, {op(2), op(3)}}, pts));
    std::vector<SegmentRegion> regions{SegmentRegion(g, {0, 1}, {{0, {{Rational(0), Rational(1), false, false}}}}),
                                       SegmentRegion(g, {2, 3}, {{1, {{Rational(0), Rational(1), false, false}}}})};
    auto fam = enlarge_taut_family(regions, {0, 0});
    CHECK(fam.m2 == Rational(1, 9));
    CHECK(fam.sets[0].radius2 == Rational(1, 9));
    CHECK(fam.sets[1].radius2 == Rational(1, 9));
    CHECK(check_enlargement_disjoint(regions, fam).ok);

    // Gap 1 - 2/3 = 1/3 between the enlarged closures; radius 1/2 closes it.
    CHECK(enlarged_closures_disjoint(1, Rational(1, 9), Rational(1, 9)));
    CHECK_FALSE(enlarged_closures_disjoint(1, Rational(1, 4), Rational(1, 4)));
    CHECK_FALSE(enlarged_closures_disjoint(1, Rational(1, 4), Rational(1, 4) + Rational(1, 1000)));

    auto inflated = fam;
    inflated.sets[1].radius2 = Rational(1, 4);
    inflated.sets[0].radius2 = Rational(1, 4);
    CHECK_FALSE(check_enlargement_disjoint(regions, inflated).ok);

    CHECK_THROWS_AS(enlarge_taut_family({regions[0]}, {0}), StructureError);
}

TEST_CASE("enlargement of generated families")
{
    for (int l = 1; l <= 3; ++l) {
        CAPTURE(l);
        auto s = family_system(l);
        auto r = realize_system(s);
        auto fam = enlarge_taut_family(s, r);
        CHECK(sgn(fam.m2) > 0);
        CHECK(check_enlargement_disjoint(r.regions, fam).ok);
        CHECK(check_enlargement_nested(r.regions, fam).ok);
        for (const auto& e : fam.sets) {
            Rational expect = fam.m2;
            for (int n = 0; n < e.level; ++n) expect /= 4;
            CHECK(e.radius2 == expect);
        }
        // A level-1 set inside a level-0 set with an equal radius breaks (2).
        auto flat = fam;
        for (auto& e : flat.sets) e.radius2 = fam.m2;
        CHECK_FALSE(check_enlargement_nested(r.regions, flat).ok);
    }
}

TEST_CASE("D3 from geometry matches the combinatorial checker on random tables")
{
    auto s = family_system(2);
    random::Engine rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> table(s.cover(1).size());
        std::uniform_int_distribution<int> pick(0, static_cast<int>(s.cover(0).size()) - 1);
        for (auto& x : table) x = pick(rng);
        auto m = with_phi(s, 0, table);
        auto r = realize_system(m);
        bool geometric = true;
        for (std::size_t u = 0; u < table.size(); ++u)
            for (std::size_t w = 0; w < table.size(); ++w)
                if (region_intersects(r.region(1, static_cast<int>(u)), r.region(1, static_cast<int>(w)))
                    && !region_intersects(r.region(0, table[u]), r.region(0, table[w])))
                    geometric = false;
        CHECK(geometric == check_D3(m).ok);
    }
}
