// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "treechain/family.hpp"
#include "treechain/pipeline.hpp"
#include "treechain/random.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

using namespace treechain;

namespace {

struct Failure {
    std::string what;
};

void require(bool ok, const std::string& what)
{
    if (!ok) throw Failure{what};
}

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void()>& body)
{
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
        body();
    } catch (const Failure& f) {
        ok = false;
        detail = f.what;
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && limit_s > 0 && secs >= limit_s) {
        ok = false;
        detail = "took " + std::to_string(secs) + " s, limit " + std::to_string(limit_s) + " s";
    }
    if (!ok) ++failures;
    std::printf("%s  [%d] %s (%.3f s)%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), secs, detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
}

int count_degree(const SimplicialGraph& g, int degree)
{
    int n = 0;
    for (int i = 0; i < g.size(); ++i) n += g.degree(i) == degree;
    return n;
}

std::string tag(int k, int n)
{
    return "k=" + std::to_string(k) + " n=" + std::to_string(n);
}

// Location of p on the trisected copy of its edge.
EdgePoint on_trisection(const EdgePoint& p)
{
    if (p.is_vertex()) return p;
    Rational third(1, 3);
    auto ue = VertexId::sub(p.a, p.b, 1), ve = VertexId::sub(p.a, p.b, 2);
    if (p.t <= third) return {p.a, ue, p.t * 3};
    if (p.t <= 2 * third) return {ue, ve, (p.t - third) * 3};
    return {ve, p.b, (p.t - 2 * third) * 3};
}

io::Instance generated(int l)
{
    pipeline::PipelineConfig cfg;
    cfg.l = l;
    return pipeline::generate(cfg).instance();
}

} // namespace

int main()
{
    criterion(1, "family combinatorics", 1.0, [] {
        const std::vector<int> sizes{8, 11, 14, 17};
        for (int n = 0; n < 4; ++n) {
            auto t = family::build_tree({4, n});
            require(t.size() == sizes[n], "k=4 size at " + tag(4, n));
            bool x = n == 3;
            require(count_degree(t, 4) == (x ? 1 : 0) && count_degree(t, 3) == (x ? 0 : 2) && count_degree(t, 1) == 4,
                    "k=4 degree profile at " + tag(4, n));
        }
        auto x = family::build_tree({4, 3});
        require(x.degree(x.index_of(family::v(4, 0))) == 4, "order-four point of T_3^4 is not v_4^0");
        for (int k = 2; k <= 9; ++k)
            for (int n = 0; n < k; ++n) {
                auto t = family::build_tree({k, n});
                require(t.size() == 3 * n + k + 4, "size at " + tag(k, n));
                require(t.is_tree(), "not a tree at " + tag(k, n));
            }
    });

    criterion(2, "family diagrams: commutativity and coincidence sets", 5.0, [] {
        for (int k = 2; k <= 9; ++k) {
            auto d = family::build_family_diagram(k);
            require(check_commutative(d).ok, "not commutative for k=" + std::to_string(k));
            for (int n = 0; n + 1 < k; ++n) {
                auto sigma = family::map_sigma({k, n});
                auto tau = family::map_tau({k, n}, sigma.source_ptr(), sigma.target_ptr());
                auto omega = family::map_omega({k, n}, sigma.source_ptr(), sigma.target_ptr());
                require(coincidence_oracle(sigma, omega).empty(), "σ/ω coincide at " + tag(k, n));
                std::set<EdgePoint> ends;
                for (const auto& e : family::endpoints({k, n + 1})) ends.insert(EdgePoint::at_vertex(e));
                auto c = coincidence_oracle(sigma, tau);
                require(c.edges.empty() && c.points == ends, "σ/τ coincidence set at " + tag(k, n));
            }
        }
    });

    criterion(3, "trisection removes proximity and preserves point maps", 10.0, [] {
        random::Engine rng(2024);
        for (int k = 2; k <= 9; ++k) {
            auto d = family::build_family_diagram(k);
            auto lifted = lift_diagram_3(d);
            for (int n = 0; n < lifted.length(); ++n) {
                require(proximity_vertices(lifted.f(n), lifted.g(n)).empty(), "proximity vertex at " + tag(k, n));
                for (const auto* row : {&d.f_row(), &d.g_row()}) {
                    const auto& m = (*row)[n];
                    const auto& m3 = (row == &d.f_row() ? lifted.f_row() : lifted.g_row())[n];
                    const auto& src = m.source();
                    for (int i = 0; i < 1000; ++i) {
                        int e = std::uniform_int_distribution<int>(0, src.edge_count() - 1)(rng);
                        auto [a, b] = src.edges()[e];
                        EdgePoint p{src.vertex(a), src.vertex(b), random::random_unit(rng, 1009)};
                        auto image = embed(m.target(), evaluate_realization(m, p));
                        auto image3 = embed(m3.target(), evaluate_realization(m3, on_trisection(p)));
                        require(image == image3, "|f^(3)| differs from |f| at " + to_string(p) + ", " + tag(k, n));
                    }
                }
            }
        }
    });

    criterion(4, "generate and verify for l = 1..8", 60.0, [] {
        const std::vector<std::string> needed{"strong-refinement", "D1", "D2", "D2prime", "D3", "taut", "triples", "nerve-iso"};
        for (int l = 1; l <= 8; ++l) {
            // Same path as the command line: serialize, parse, verify.
            auto text = io::dump(io::to_json(generated(l)));
            auto rep = pipeline::verify(io::instance_from_json(io::Json::parse(text)));
            for (const auto& name : needed) {
                const auto* c = rep.find(name);
                require(c && c->status == pipeline::Status::Pass, name + " does not pass at l=" + std::to_string(l));
            }
            require(rep.ok(), "overall FAIL at l=" + std::to_string(l));
        }
    });

    criterion(5, "oracle identity", 0, [] {
        for (int l = 1; l <= 8; ++l) {
            auto inst = generated(l);
            auto sys = CoverSystem::assemble(inst.diagram(), inst.eps, inst.phi);
            auto r = realize_system(sys);
            auto pairs = check_oracle_identity(sys, r);
            require(pairs.ok, "pairs at l=" + std::to_string(l) + ": " + pairs.witness);
            auto rep = pipeline::run_oracle(inst, 10000, 100 + l);
            require(rep.membership_queries == 10000 && rep.ok(), "queries at l=" + std::to_string(l) + ": " + rep.first_disagreement);
        }
    });

    criterion(6, "enlargement", 0, [] {
        for (int l = 1; l <= 5; ++l) {
            auto inst = generated(l);
            auto sys = CoverSystem::assemble(inst.diagram(), inst.eps, inst.phi);
            auto r = realize_system(sys);
            auto e = enlarge_taut_family(sys, r);
            require(check_enlargement_disjoint(r.regions, e).ok, "disjointness at l=" + std::to_string(l));
            require(check_enlargement_nested(r.regions, e).ok, "nesting at l=" + std::to_string(l));
        }
        std::map<VertexId, Point> pts{{VertexId::opaque(0), {0, 0}}, {VertexId::opaque(1), {1, 0}}, {VertexId::opaque(2), {0, 1}},
                                      {VertexId::opaque(3), {1, 1}}};
        auto g = std::make_shared<const SimplicialGraph>(
            std::vector<VertexId>{VertexId::opaque(0), VertexId::opaque(1), VertexId::opaque(2), VertexId::opaque(3)},
            std::vector<SimplicialGraph::Edge>{{VertexId::opaque(0), VertexId::opaque(1)}, {VertexId::opaque(2), VertexId::opaque(3)}}, pts);
        std::vector<SegmentRegion> two{SegmentRegion(g, {0, 1}, {{0, {{Rational(0), Rational(1), false, false}}}}),
                                       SegmentRegion(g, {2, 3}, {{1, {{Rational(0), Rational(1), false, false}}}})};
        require(set_distance_squared(two[0], two[1]) == 1, "hand case distance");
        auto hand = enlarge_taut_family(two, {0, 0});
        require(hand.m2 == Rational(1, 9), "hand case m^2 = " + to_string(hand.m2) + ", expected 1/9");
    });

    criterion(7, "example table", 0, [] {
        auto rep = check_example1(example1_table());
        require(rep.total, "table is not total on V_1..V_131");
        require(rep.image_in_range, "image leaves U_1..U_13");
        require(rep.segments == std::vector<int>{32, 5, 45, 1, 14, 5, 29}, "segment cardinalities differ");
        require(rep.ok(), "example check failed");
    });

    criterion(8, "negative fixtures", 0, [] {
        const std::map<std::string, std::string> intended{{"broken-commutativity", "commutative"},
                                                          {"phi-equals-g", "D1"},
                                                          {"non-decreasing-epsilon", "epsilon-schedule"},
                                                          {"proximity-edit", "proximity-free"},
                                                          {"inflated-radius", "enlargement-1"}};
        const std::filesystem::path dir = TREECHAIN_FIXTURE_DIR;
        for (const auto& [name, condition] : intended) {
            auto rep = pipeline::verify(io::instance_from_json(io::read_json_file((dir / (name + ".json")).string())));
            const auto* f = rep.first_failure();
            require(f && f->name == condition, name + " fails first at " + (f ? f->name : std::string("nothing")));
            for (const auto& c : rep.conditions) {
                if (c.name == condition) break;
                require(c.status == pipeline::Status::Pass, name + ": " + c.name + " does not pass before " + condition);
            }
        }
    });

    std::printf("%s\n", failures == 0 ? "ALL PASS" : (std::to_string(failures) + " FAILED").c_str());
    return failures == 0 ? 0 : 1;
}
