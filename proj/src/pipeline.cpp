#include "treechain/pipeline.hpp"

#include "treechain/family.hpp"
#include "treechain/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>

namespace treechain::pipeline {

void PipelineConfig::validate() const
{
    if (l < 1) throw std::invalid_argument("l must be at least 1");
    if (eps) {
        EpsilonSchedule s{*eps};
        if (s.length() != l) throw std::invalid_argument("epsilon override needs l+1 values");
        if (auto r = s.validate(); !r) throw std::invalid_argument("epsilon override: " + r.witness);
    }
}

Generated generate(const PipelineConfig& cfg, Exec exec)
{
    cfg.validate();
    auto eps = cfg.eps ? EpsilonSchedule{*cfg.eps} : EpsilonSchedule::standard(cfg.l);
    auto diagram = lift_diagram_3(family::build_family_diagram(cfg.l + 1));
    auto system = build_cover_system(diagram, eps);
    auto realized = realize_system(system, exec);
    auto enlarged = enlarge_taut_family(system, realized, exec);
    return {std::move(system), std::move(realized), std::move(enlarged)};
}

void write_outputs(const Generated& g, const std::string& dir)
{
    std::filesystem::create_directories(dir);
    auto path = [&](const char* name) { return (std::filesystem::path(dir) / name).string(); };
    io::write_text_file(path("instance.json"), io::dump(io::to_json(g.instance())));
    io::write_text_file(path("regions.json"), io::dump(io::regions_json(g.system, g.realized)));
    SvgOptions options;
    for (int n = 0; n <= g.system.length(); ++n) options.levels.push_back(n);
    io::write_text_file(path("covers.svg"), render_svg(g.system, g.realized, g.enlarged, options));
}

// --------------------------------------------------------------- reporting

const std::vector<std::string>& condition_names()
{
    static const std::vector<std::string> names{
        "epsilon-schedule", "simplicial", "surjective", "proximity-free", "commutative", "cover-system", "oracle-identity",
        "coverage",         "refinement", "strong-refinement", "D1", "D2", "D2prime", "D3", "taut", "triples", "nerve-iso",
        "enlargement-1",    "enlargement-2"};
    return names;
}

bool VerificationReport::ok() const
{
    return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.status == Status::Pass; });
}

const ConditionResult* VerificationReport::find(const std::string& name) const
{
    for (const auto& c : conditions)
        if (c.name == name) return &c;
    return nullptr;
}

const ConditionResult* VerificationReport::first_failure() const
{
    for (const auto& c : conditions)
        if (c.status == Status::Fail) return &c;
    return nullptr;
}

namespace {

const char* status_word(Status s)
{
    switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skipped: return "SKIPPED";
    }
    return "?";
}

} // namespace

std::string VerificationReport::text(bool timing) const
{
    std::ostringstream out;
    for (const auto& c : conditions) {
        char name[32];
        std::snprintf(name, sizeof name, "%-18s", c.name.c_str());
        out << name << " " << status_word(c.status);
        if (timing && c.status != Status::Skipped) {
            char ms[32];
            std::snprintf(ms, sizeof ms, "  (%.1f ms)", c.millis);
            out << ms;
        }
        if (!c.witness.empty()) out << "  " << c.witness;
        out << "\n";
    }
    for (const auto& [key, value] : info) out << "info: " << key << " = " << value << "\n";
    out << "overall: " << (ok() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

io::Json VerificationReport::json() const
{
    io::Json conds = io::Json::array();
    for (const auto& c : conditions)
        conds.push_back(io::Json{{"name", c.name}, {"status", status_word(c.status)}, {"witness", c.witness}, {"ms", c.millis}});
    io::Json extra = io::Json::object();
    for (const auto& [key, value] : info) extra[key] = value;
    return io::Json{{"schema", io::schema_version}, {"overall", ok() ? "PASS" : "FAIL"}, {"conditions", conds}, {"info", extra}};
}

namespace {

class Recorder {
public:
    explicit Recorder(VerificationReport& rep) : rep_(rep) {}

    /// Runs `check` unless the report is already blocked; returns its outcome.
    bool run(const std::string& name, const std::function<CheckResult()>& check)
    {
        ConditionResult c{name, Status::Skipped, {}, 0};
        if (blocked_) {
            c.witness = blocked_reason_;
            rep_.conditions.push_back(c);
            return false;
        }
        auto start = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = check();
        } catch (const std::exception& e) {
            r = CheckResult::fail(std::string("error: ") + e.what());
        }
        c.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        c.status = r.ok ? Status::Pass : Status::Fail;
        c.witness = r.witness;
        rep_.conditions.push_back(c);
        return r.ok;
    }

    void block(const std::string& why)
    {
        if (!blocked_) blocked_reason_ = "needs " + why;
        blocked_ = true;
    }

    void skip(const std::string& name, const std::string& why)
    {
        rep_.conditions.push_back({name, Status::Skipped, why, 0});
    }

private:
    VerificationReport& rep_;
    bool blocked_ = false;
    std::string blocked_reason_;
};

CheckResult both(const CheckResult& a, const CheckResult& b)
{
    return a.ok ? b : a;
}

std::string sqrt_text(const Rational& r2)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", std::sqrt(to_double(r2)));
    return buf;
}

} // namespace

VerificationReport verify(const io::Instance& inst, Exec exec)
{
    VerificationReport rep;
    Recorder rec(rep);

    if (!rec.run("epsilon-schedule", [&] { return inst.eps.validate(); })) rec.block("epsilon-schedule");

    std::optional<TreeDiagram> d;
    bool simplicial = rec.run("simplicial", [&] {
        d.emplace(inst.diagram());
        return CheckResult::pass();
    });
    if (!simplicial) rec.block("simplicial");

    bool surjective = rec.run("surjective", [&] { return check_surjective(*d); });
    rec.run("proximity-free", [&] {
        if (d->length() == 0) return CheckResult::pass();
        auto near = proximity_vertices(d->f(0), d->g(0));
        if (near.empty()) return CheckResult::pass();
        return CheckResult::fail("f_0 and g_0 send " + near.front().to_string() + " to 2-close vertices");
    });
    rec.run("commutative", [&] { return check_commutative(*d); });
    if (!surjective) rec.block("surjective");

    std::optional<CoverSystem> sys;
    std::optional<RealizedSystem> realized;
    bool covers = rec.run("cover-system", [&] {
        sys.emplace(CoverSystem::assemble(*d, inst.eps, inst.phi));
        if (auto r = check_fibers(*sys); !r) return r;
        for (int n = 0; n <= sys->length(); ++n)
            for (const auto& a : sys->cover(n))
                if (static_cast<std::size_t>(n) >= inst.fibers.size() || static_cast<std::size_t>(a.vertex) >= inst.fibers[n].size()
                    || inst.fibers[n][a.vertex] != a.fiber)
                    return CheckResult::fail("stored fiber of " + sys->label(a) + " differs from g-preimage");
        realized.emplace(realize_system(*sys, exec));
        return CheckResult::pass();
    });
    if (!covers) {
        rec.block("cover-system");
        const auto& names = condition_names();
        auto rest = std::find(names.begin(), names.end(), "cover-system") + 1;
        for (; rest != names.end(); ++rest) rec.run(*rest, [] { return CheckResult::pass(); });
        return rep;
    }

    const auto& S = *sys;
    const auto& R = *realized;
    rec.run("oracle-identity", [&] { return check_oracle_identity(S, R, exec); });
    rec.run("coverage", [&] { return check_coverage(S, R); });
    rec.run("refinement", [&] {
        if (auto r = check_refinement(S); !r) return r;
        for (int n = 0; n < S.length(); ++n)
            for (const auto& u : S.cover(n + 1)) {
                int v = S.diagram().g(n)(u.vertex);
                if (!region_contains(R.region(n, v), R.region(n + 1, u.vertex)))
                    return CheckResult::fail(S.label(u) + " is not inside " + S.label(S.set(n, v)) + " geometrically");
            }
        return CheckResult::pass();
    });
    rec.run("strong-refinement", [&] { return both(check_strong_refinement(S), check_strong_refinement_geometric(S, R)); });
    rec.run("D1", [&] { return check_D1(S, exec); });
    rec.run("D2", [&] { return check_D2(S, exec); });
    rec.run("D2prime", [&] { return both(check_D2prime(S, exec), check_D2prime_geometric(S, R, exec)); });
    rec.run("D3", [&] { return check_D3(S, exec); });
    rec.run("taut", [&] { return both(check_taut_and_triples(S, exec), check_taut_geometric(S, R, exec)); });
    rec.run("triples", [&] { return check_triples_geometric(S, R); });
    rec.run("nerve-iso", [&] {
        for (int n = 0; n <= S.length(); ++n)
            if (auto r = nerve_isomorphic_to(S, n); !r) return r;
        return CheckResult::pass();
    });

    if (!inst.enlarged) {
        rec.skip("enlargement-1", "no enlargement stored");
        rec.skip("enlargement-2", "no enlargement stored");
    } else {
        auto shape = [&]() -> CheckResult {
            const auto& sets = inst.enlarged->sets;
            if (sets.size() != S.all_sets().size()) return CheckResult::fail("one radius per cover set expected");
            for (std::size_t i = 0; i < sets.size(); ++i)
                if (sets[i].level != S.all_sets()[i]->level || sets[i].vertex != S.all_sets()[i]->vertex)
                    return CheckResult::fail("radius " + std::to_string(i) + " is attached to the wrong set");
            return CheckResult::pass();
        };
        rec.run("enlargement-1", [&] { return both(shape(), check_enlargement_disjoint(R.regions, *inst.enlarged, exec)); });
        rec.run("enlargement-2", [&] { return both(shape(), check_enlargement_nested(R.regions, *inst.enlarged, exec)); });
    }

    {
        auto mesh = compute_rho_and_mesh(S, R, exec);
        if (mesh.rho2) rep.info.emplace_back("rho", sqrt_text(*mesh.rho2) + " (squared " + to_string(*mesh.rho2) + ")");
        for (std::size_t n = 0; n < mesh.mesh2.size(); ++n)
            rep.info.emplace_back("mesh cover " + std::to_string(n + 1),
                                  sqrt_text(mesh.mesh2[n]) + (mesh.below_rho_scale[n] ? " (below rho/2^n)" : " (not below rho/2^n)"));
        if (inst.enlarged) rep.info.emplace_back("m", sqrt_text(inst.enlarged->m2) + " (squared " + to_string(inst.enlarged->m2) + ")");
    }
    return rep;
}

// ------------------------------------------------------------------ oracle

std::string OracleReport::text() const
{
    std::ostringstream out;
    out << "membership " << membership_agree << "/" << membership_queries << " agree\n";
    out << "map pairs  " << map_agree << "/" << map_pairs << " agree\n";
    if (!first_disagreement.empty()) out << "first disagreement: " << first_disagreement << "\n";
    out << "overall: " << (ok() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

OracleReport run_oracle(const io::Instance& inst, long trials, std::uint64_t seed)
{
    auto sys = CoverSystem::assemble(inst.diagram(), inst.eps, inst.phi);
    auto realized = realize_system(sys);
    const auto& top = sys.top();
    const auto& all = sys.all_sets();
    random::Engine rng(seed);
    OracleReport rep;
    auto note = [&](const std::string& what) {
        if (rep.first_disagreement.empty()) rep.first_disagreement = what;
    };

    std::uniform_int_distribution<int> pick_set(0, static_cast<int>(all.size()) - 1);
    std::uniform_int_distribution<int> pick_vertex(0, top.size() - 1);
    std::uniform_int_distribution<int> pick_edge(0, top.edge_count() - 1);
    std::uniform_int_distribution<int> coin(0, 3);
    for (long q = 0; q < trials; ++q) {
        int i = pick_set(rng);
        const auto& a = *all[i];
        EdgePoint p;
        std::optional<int> vertex;
        if (coin(rng) == 0) {
            vertex = pick_vertex(rng);
            p = EdgePoint::at_vertex(top.vertex(*vertex));
        } else {
            auto [u, v] = top.edges()[pick_edge(rng)];
            p = EdgePoint{top.vertex(u), top.vertex(v), random::random_unit(rng, 997)};
        }
        bool geometric = realized.regions[i].contains(p);
        bool agree = geometric == member_by_preimage(sys, a, p);
        if (vertex) agree = agree && geometric == contains_member(*vertex, a);
        ++rep.membership_queries;
        if (agree)
            ++rep.membership_agree;
        else
            note("point " + to_string(p) + " in " + sys.label(a));
    }

    auto compare = [&](const SimplicialMapping& f, const SimplicialMapping& g, const std::string& what) {
        ++rep.map_pairs;
        if (coincidence_free(f, g) == coincidence_oracle(f, g).empty())
            ++rep.map_agree;
        else
            note(what);
    };
    auto lone = std::make_shared<const SimplicialGraph>(random::random_tree(6, rng));
    compare(identity_map(lone), identity_map(lone), "identity pair");
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> size(1, 10);
        auto source = std::make_shared<const SimplicialGraph>(random::random_tree(size(rng), rng));
        auto target = std::make_shared<const SimplicialGraph>(random::random_tree(size(rng), rng));
        auto f = random::random_simplicial_map(source, target, rng);
        auto g = random::random_simplicial_map(source, target, rng);
        compare(f, g, "random map pair " + std::to_string(trial));
    }
    return rep;
}

std::string example1_text(const Example1Report& rep)
{
    std::ostringstream out;
    out << "totality over V_1..V_131: " << (rep.total ? "PASS" : "FAIL") << "\n";
    out << "image within U_1..U_13:   " << (rep.image_in_range ? "PASS" : "FAIL") << "\n";
    out << "segments:";
    int sum = 0;
    for (int s : rep.segments) {
        out << " " << s;
        sum += s;
    }
    out << " (sum " << sum << "): " << (rep.segments_match ? "PASS" : "FAIL") << "\n";
    out << "usage:";
    for (std::size_t j = 0; j < rep.usage.size(); ++j) out << " U_" << j + 1 << "=" << rep.usage[j];
    out << "\noverall: " << (rep.ok() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

// ---------------------------------------------------------------- fixtures

namespace {

io::Instance generated_instance(int l)
{
    PipelineConfig cfg;
    cfg.l = l;
    return generate(cfg).instance();
}

/// First single-vertex edit of `m` that keeps it simplicial and satisfies `wanted`.
template <typename Pred>
SimplicialMapping edit_map(const SimplicialMapping& m, Pred wanted)
{
    for (int x = 0; x < m.source().size(); ++x)
        for (int y = 0; y < m.target().size(); ++y) {
            if (y == m(x)) continue;
            auto image = m.image();
            image[x] = y;
            SimplicialMapping edited(m.source_ptr(), m.target_ptr(), image);
            if (validate_simplicial(edited).ok && wanted(edited)) return edited;
        }
    throw std::logic_error("no single-vertex edit found");
}

} // namespace

std::vector<Fixture> negative_fixtures()
{
    std::vector<Fixture> out;

    {
        auto inst = generated_instance(2);
        inst.f_row[1] = edit_map(inst.f_row[1], [&](const SimplicialMapping& m) {
            return compose(inst.f_row[0], inst.g_row[1]) != compose(inst.g_row[0], m);
        });
        inst.phi[1].table = inst.f_row[1].image();
        out.push_back({"broken-commutativity", "commutative", std::move(inst)});
    }
    {
        auto inst = generated_instance(2);
        inst.phi[0].table = inst.g_row[0].image();
        out.push_back({"phi-equals-g", "D1", std::move(inst)});
    }
    {
        auto inst = generated_instance(2);
        inst.eps.values[2] = inst.eps.values[1];
        out.push_back({"non-decreasing-epsilon", "epsilon-schedule", std::move(inst)});
    }
    {
        auto inst = generated_instance(1);
        inst.f_row[0] = edit_map(inst.f_row[0], [&](const SimplicialMapping& m) { return !proximity_vertices(m, inst.g_row[0]).empty(); });
        inst.phi[0].table = inst.f_row[0].image();
        out.push_back({"proximity-edit", "proximity-free", std::move(inst)});
    }
    {
        auto inst = generated_instance(2);
        auto& sets = inst.enlarged->sets;
        sets[sets.size() / 2].radius2 *= 100;
        out.push_back({"inflated-radius", "enlargement-1", std::move(inst)});
    }
    return out;
}

} // namespace treechain::pipeline
