#include "system_support.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace treechain;
using namespace treechain::testing;

TEST_CASE("standard schedule and its validation")
{
    auto eps = EpsilonSchedule::standard(3);
    REQUIRE(eps.values.size() == 4);
    CHECK(eps[0] == Rational(3, 4));
    CHECK(eps[1] == Rational(2, 3));
    CHECK(eps[2] == Rational(5, 8));
    CHECK(eps[3] == Rational(3, 5));
    CHECK(eps.validate().ok);
    for (int l = 0; l <= 20; ++l) CHECK(EpsilonSchedule::standard(l).validate().ok);

    CHECK_FALSE(EpsilonSchedule{{Rational(3, 4), Rational(3, 4)}}.validate().ok);
    CHECK_FALSE(EpsilonSchedule{{Rational(3, 4), Rational(1, 2)}}.validate().ok);
    CHECK_FALSE(EpsilonSchedule{{Rational(1), Rational(3, 4)}}.validate().ok);
    CHECK_FALSE(EpsilonSchedule{}.validate().ok);
}

TEST_CASE("build_cover_system preconditions")
{
    auto lifted = lift_diagram_3(family::build_family_diagram(3));
    CHECK_THROWS_AS(build_cover_system(lifted, EpsilonSchedule::standard(1)), StructureError);
    CHECK_THROWS_AS(build_cover_system(lifted, EpsilonSchedule{{Rational(3, 4), Rational(2, 3), Rational(1, 2)}}), StructureError);
    // Before trisection the level-0 maps have proximity vertices.
    CHECK_THROWS_AS(build_cover_system(family::build_family_diagram(3), EpsilonSchedule::standard(2)), StructureError);
    CHECK_NOTHROW(build_cover_system(lifted, EpsilonSchedule::standard(2)));
}

TEST_CASE("k=4 pipeline: cover sizes and fibers")
{
    auto s = family_system(3);
    CHECK(s.cover(0).size() == 22);
    CHECK(s.cover(3).size() == 49);
    CHECK(check_fibers(s).ok);
    for (const auto& a : s.cover(3)) CHECK(a.fiber == std::vector<int>{a.vertex});
    for (int n = 0; n <= 3; ++n) {
        std::size_t total = 0;
        for (const auto& a : s.cover(n)) {
            total += a.fiber.size();
            for (int w : a.fiber) CHECK(s.to_top(n)(w) == a.vertex);
        }
        CHECK(total == 49);
    }
    CHECK(s.label(s.set(0, 0)).rfind("U_1^", 0) == 0);
}

TEST_CASE("sets_intersect examples")
{
    auto s = family_system(2);
    const auto& top = s.top();
    const auto& lvl0 = s.diagram().level(0);
    auto [u, v] = lvl0.edges().front();
    CHECK(sets_intersect(s.set(0, u), s.set(0, v)));
    for (const auto* a : s.all_sets()) CHECK(sets_intersect(*a, *a));
    int far_pairs = 0;
    for (int a = 0; a < top.size(); ++a)
        for (int b = 0; b < top.size(); ++b)
            if (top.bfs_distances(a)[b] >= 2) {
                CHECK_FALSE(sets_intersect(s.set(2, a), s.set(2, b)));
                ++far_pairs;
            }
    CHECK(far_pairs > 0);
}

TEST_CASE("sets_intersect against closeness in the trees")
{
    for (int l = 1; l <= 4; ++l) {
        auto s = family_system(l);
        const auto& top = s.top();
        for (int j = 0; j <= l; ++j)
            for (int n = 0; n <= j; ++n) {
                auto g = compose_tower(s.diagram().g_row(), n, j);
                const auto& tn = s.diagram().level(n);
                for (const auto& a : s.cover(j))
                    for (const auto& b : s.cover(n)) {
                        bool meet = sets_intersect(a, b);
                        CHECK(meet == sets_intersect(b, a));
                        if (j == n) CHECK(meet == walk_close(tn, a.vertex, b.vertex, 1));
                        if (meet) CHECK(walk_close(tn, g(a.vertex), b.vertex, 1));
                        // Brute force over the fibers.
                        bool brute = false;
                        for (int w : a.fiber)
                            for (int z : b.fiber) brute = brute || walk_close(top, w, z, 1);
                        CHECK(meet == brute);
                    }
            }
    }
}

TEST_CASE("contains_member")
{
    auto s = family_system(2);
    for (int n = 0; n <= 2; ++n)
        for (int w = 0; w < s.top().size(); ++w) {
            int v = s.to_top(n)(w);
            CHECK(contains_member(w, s.set(n, v)));
            for (const auto& a : s.cover(n))
                if (a.vertex != v) CHECK_FALSE(contains_member(w, a));
        }
    CHECK_FALSE(contains_member(-1, s.set(0, 0)));
}

TEST_CASE("strong refinement with witnesses")
{
    auto s = family_system(3);
    for (int n = 0; n < 3; ++n) {
        auto r = strongly_refines(s, n + 1, n);
        CHECK(r.result.ok);
        CHECK(r.witness == s.diagram().g(n).image());
    }
    CHECK(check_strong_refinement(s).ok);
    CHECK(check_refinement(s).ok);
    CHECK_THROWS_AS(strongly_refines(s, 1, 1), std::invalid_argument);
}

TEST_CASE("pattern conditions hold on generated systems")
{
    for (int l = 1; l <= 5; ++l) {
        CAPTURE(l);
        auto s = family_system(l);
        CHECK(check_D1(s).ok);
        CHECK(check_D2(s).ok);
        CHECK(check_D2prime(s).ok);
        CHECK(check_D3(s).ok);
        CHECK(check_taut_and_triples(s).ok);
        for (int n = 0; n <= l; ++n) {
            CHECK(nerve_isomorphic_to(s, n).ok);
            auto nv = nerve(s, n);
            CHECK(nv.is_tree());
        }
    }
}

TEST_CASE("level l nerve is the top tree")
{
    auto s = family_system(2);
    CHECK(nerve(s, 2) == SimplicialGraph(s.top().vertices(), [&] {
              std::vector<SimplicialGraph::Edge> es;
              for (auto [a, b] : s.top().edges()) es.emplace_back(s.top().vertex(a), s.top().vertex(b));
              return es;
          }()));
}

TEST_CASE("D1 fails when φ_0 is the refinement witness g_0")
{
    auto s = family_system(2);
    auto bad = with_phi(s, 0, s.diagram().g(0).image());
    auto r = check_D1(bad);
    CHECK_FALSE(r.ok);
    CHECK(r.witness.find("U_1^") != std::string::npos);
    CHECK(check_D3(bad).ok); // g_0 is simplicial, so D3 still holds
}

TEST_CASE("D2 fails after moving one φ_1 value far away")
{
    auto s = family_system(3);
    const auto& lvl1 = s.diagram().level(1);
    auto table = s.phi(1).table;
    bool found = false;
    for (std::size_t u = 0; u < table.size() && !found; ++u) {
        auto dist = lvl1.bfs_distances(table[u]);
        int far = static_cast<int>(std::max_element(dist.begin(), dist.end()) - dist.begin());
        auto edited = table;
        edited[u] = far;
        auto r = check_D2(with_phi(s, 1, edited));
        if (!r.ok) {
            found = true;
            CHECK(r.witness.find("disjoint") != std::string::npos);
        }
    }
    CHECK(found);
}

TEST_CASE("random φ tables usually break D3")
{
    auto s = family_system(2);
    random::Engine rng(7);
    int broken = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> table(s.cover(1).size());
        std::uniform_int_distribution<int> pick(0, static_cast<int>(s.cover(0).size()) - 1);
        for (auto& x : table) x = pick(rng);
        if (!check_D3(with_phi(s, 0, table)).ok) ++broken;
    }
    CHECK(broken >= 18);
}

TEST_CASE("degenerate system with a single cover")
{
    auto t = family::tree_ptr({2, 0});
    TreeDiagram d({t}, {}, {});
    auto s = build_cover_system(d, EpsilonSchedule::standard(0));
    CHECK(s.length() == 0);
    CHECK(check_D1(s).ok);
    CHECK(check_D2(s).ok);
    CHECK(check_D3(s).ok);
    CHECK(nerve_isomorphic_to(s, 0).ok);
}

TEST_CASE("shape errors on assembly")
{
    auto s = family_system(1);
    auto phi = s.phis();
    phi[0].table.pop_back();
    CHECK_THROWS_AS(CoverSystem::assemble(s.diagram(), s.schedule(), phi), StructureError);
    phi = s.phis();
    phi[0].table[0] = 10000;
    CHECK_THROWS_AS(CoverSystem::assemble(s.diagram(), s.schedule(), phi), StructureError);
    CHECK_THROWS_AS(CoverSystem::assemble(s.diagram(), EpsilonSchedule::standard(3), s.phis()), StructureError);
}

TEST_CASE("worked example table")
{
    auto table = example1_table();
    REQUIRE(table.size() == 131);
    // Spot values, written out by hand from the published list.
    const std::vector<std::pair<int, int>> spots{{1, 13},  {32, 13}, {33, 12}, {34, 11}, {35, 10}, {36, 5},   {37, 6},  {38, 7},
                                                 {82, 7},  {83, 8},  {84, 9},  {97, 9},  {98, 6},  {99, 5},   {100, 4}, {101, 3},
                                                 {102, 2}, {103, 1}, {131, 1}};
    for (auto [i, j] : spots) CHECK(table[i - 1] == j);

    auto rep = check_example1(table);
    CHECK(rep.ok());
    CHECK(rep.segments == std::vector<int>{32, 5, 45, 1, 14, 5, 29});
    CHECK(rep.usage[13 - 1] == 32);
    CHECK(rep.usage[7 - 1] == 45);
    CHECK(rep.usage[1 - 1] == 29);
    CHECK(rep.usage[5 - 1] == 2);
    int used = 0;
    for (int c : rep.usage) used += c > 0;
    CHECK(used == 13);

    auto moved = table;
    moved[60] = 8;
    CHECK_FALSE(check_example1(moved).ok());
    auto short_table = table;
    short_table.pop_back();
    CHECK_FALSE(check_example1(short_table).ok());
    auto out_of_range = table;
    out_of_range[0] = 14;
    CHECK_FALSE(check_example1(out_of_range).ok());
}

TEST_CASE("copies outlive the original")
{
    std::optional<CoverSystem> original(family_system(2));
    CoverSystem copy = *original;
    original.reset();
    const auto& all = copy.all_sets();
    REQUIRE(all.size() == copy.cover(0).size() + copy.cover(1).size() + copy.cover(2).size());
    CHECK(all.front() == &copy.set(0, 0));
    CHECK(all.back()->level == 2);
    CHECK(check_D3(copy).ok);
}
