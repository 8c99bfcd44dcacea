#include "treechain/family.hpp"
#include "treechain/pipeline.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>

using namespace treechain;

namespace {

std::vector<Rational> parse_eps_list(const std::string& text)
{
    std::vector<Rational> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
    return out;
}

io::Instance load(const std::string& path)
{
    return io::instance_from_json(io::read_json_file(path));
}

int cmd_generate(int l, const std::string& eps, std::uint64_t seed, const std::string& out)
{
    pipeline::PipelineConfig cfg;
    cfg.l = l;
    cfg.seed = seed;
    cfg.out_dir = out;
    if (!eps.empty()) cfg.eps = parse_eps_list(eps);
    auto g = pipeline::generate(cfg);
    pipeline::write_outputs(g, out);
    std::cout << "generated l=" << l << ": " << g.system.all_sets().size() << " cover sets over " << g.system.top().size()
              << " vertices -> " << out << "\n";
    return 0;
}

int cmd_verify(const std::string& file, bool json, bool timing)
{
    auto rep = pipeline::verify(load(file));
    if (json)
        std::cout << io::dump(rep.json());
    else
        std::cout << rep.text(timing);
    return rep.ok() ? 0 : 1;
}

int cmd_render(const std::string& file, const std::string& out, std::optional<int> level)
{
    auto inst = load(file);
    auto sys = CoverSystem::assemble(inst.diagram(), inst.eps, inst.phi);
    auto realized = realize_system(sys);
    SvgOptions options;
    if (level) {
        if (*level < 1 || *level > sys.length() + 1) throw std::invalid_argument("--level must lie in 1.." + std::to_string(sys.length() + 1));
        options.levels.push_back(*level - 1);
    } else {
        for (int n = 0; n <= sys.length(); ++n) options.levels.push_back(n);
    }
    io::write_text_file(out, render_svg(sys, realized, inst.enlarged, options));
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_example1()
{
    auto rep = check_example1(example1_table());
    std::cout << pipeline::example1_text(rep);
    return rep.ok() ? 0 : 1;
}

int cmd_oracle(const std::string& file, long trials, std::uint64_t seed)
{
    auto rep = pipeline::run_oracle(load(file), trials, seed);
    std::cout << rep.text();
    return rep.ok() ? 0 : 1;
}

int cmd_family(int k, bool check)
{
    auto d = family::build_family_diagram(k);
    for (int n = 0; n <= d.length(); ++n)
        std::cout << "T_" << n << "^" << k << ": " << d.level(n).size() << " vertices, " << d.level(n).edge_count() << " edges\n";
    if (!check) return 0;
    bool ok = true;
    auto report = [&](const std::string& what, bool pass) {
        std::cout << what << ": " << (pass ? "PASS" : "FAIL") << "\n";
        ok = ok && pass;
    };
    report("commutative", check_commutative(d).ok);
    report("surjective", check_surjective(d).ok);
    bool free = true;
    for (int n = 0; n < d.length(); ++n) free = free && coincidence_oracle(d.f(n), d.g(n)).empty();
    report("coincidence-free", free);
    auto lifted = lift_diagram_3(d);
    bool far = true;
    for (int n = 0; n < lifted.length(); ++n) far = far && proximity_vertices(lifted.f(n), lifted.g(n)).empty();
    report("no proximity after trisection", far);
    return ok ? 0 : 1;
}

int cmd_fixtures(const std::string& out)
{
    std::filesystem::create_directories(out);
    for (const auto& f : pipeline::negative_fixtures()) {
        auto j = io::to_json(f.instance);
        j["fixture"] = io::Json{{"name", f.name}, {"fails_at", f.fails_at}};
        io::write_text_file((std::filesystem::path(out) / (f.name + ".json")).string(), io::dump(j));
        std::cout << f.name << " -> fails at " << f.fails_at << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Tree-chain cover generator and verifier"};
    app.require_subcommand(1);

    int l = 1;
    std::string eps, out;
    std::uint64_t seed = 1;
    auto* gen = app.add_subcommand("generate", "Build covers for the k=l+1 family and write instance files");
    gen->add_option("--l", l, "Index of the last cover (covers 1..l+1)")->required()->check(CLI::PositiveNumber);
    gen->add_option("--eps", eps, "Comma-separated schedule eps_0,...,eps_l");
    gen->add_option("--seed", seed, "Seed recorded for randomized steps");
    gen->add_option("--out", out, "Output directory")->required();

    std::string file;
    bool json = false, no_timing = false;
    auto* ver = app.add_subcommand("verify", "Check every condition on an instance; exit 0 iff all pass");
    ver->add_option("file", file, "instance.json")->required();
    ver->add_flag("--json", json, "Emit the report as JSON");
    ver->add_flag("--no-timing", no_timing, "Omit timings");

    std::string svg;
    std::optional<int> level;
    auto* ren = app.add_subcommand("render", "Draw an instance as SVG");
    ren->add_option("file", file, "instance.json")->required();
    ren->add_option("--out", svg, "SVG path")->required();
    ren->add_option("--level", level, "Draw only this cover (1-based)");

    auto* ex1 = app.add_subcommand("example1", "Check the tabulated worked example");

    long trials = 10000;
    auto* ora = app.add_subcommand("oracle", "Randomized cross-check of predicates against the geometry");
    ora->add_option("file", file, "instance.json")->required();
    ora->add_option("--trials", trials, "Membership queries")->check(CLI::NonNegativeNumber);
    ora->add_option("--seed", seed, "Random seed");

    int k = 2;
    bool check = false;
    auto* fam = app.add_subcommand("generate-family", "Print the tree family for one k");
    fam->add_option("--k", k, "Family parameter k >= 2")->required();
    fam->add_flag("--check", check, "Run the diagram checks");

    auto* fix = app.add_subcommand("fixtures", "Regenerate the negative fixtures");
    fix->add_option("--out", out, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*gen) return cmd_generate(l, eps, seed, out);
        if (*ver) return cmd_verify(file, json, !no_timing);
        if (*ren) return cmd_render(file, svg, level);
        if (*ex1) return cmd_example1();
        if (*ora) return cmd_oracle(file, trials, seed);
        if (*fam) return cmd_family(k, check);
        if (*fix) return cmd_fixtures(out);
    } catch (const io::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
