#include "treechain/io.hpp"

#include <fstream>
#include <sstream>

namespace treechain::io {

namespace {

[[noreturn]] void bad(const std::string& what)
{
    throw SchemaError(what);
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

int as_int(const Json& j, const std::string& what)
{
    if (!j.is_number_integer()) bad(what + " must be an integer");
    return j.get<int>();
}

Rational as_rational(const Json& j, const std::string& what)
{
    if (!j.is_string()) bad(what + " must be a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        bad(what + ": " + e.what());
    }
}

std::vector<int> int_list(const Json& j, const std::string& what)
{
    if (!j.is_array()) bad(what + " must be an array");
    std::vector<int> out;
    for (const auto& x : j) out.push_back(as_int(x, what));
    return out;
}

Json interval_json(const Interval& iv)
{
    std::string shape = std::string(iv.lo_closed ? "[" : "(") + (iv.hi_closed ? "]" : ")");
    return Json::array({to_string(iv.lo), to_string(iv.hi), shape});
}

} // namespace

Json to_json(const VertexId& v)
{
    switch (v.kind()) {
    case VertexId::Kind::Grid:
        return Json::array({v.side(), v.level()});
    case VertexId::Kind::Opaque:
        return Json::array({"op", v.opaque_id()});
    case VertexId::Kind::Sub:
        return Json::array({"sub", Json::array({to_json(v.sub_first()), to_json(v.sub_second())}), v.third() == 1 ? "1/3" : "2/3"});
    }
    bad("unknown vertex kind");
}

VertexId vertex_from_json(const Json& j)
{
    if (!j.is_array() || j.size() < 2) bad("vertex label must be an array");
    if (j[0].is_number_integer()) {
        if (j.size() != 2) bad("grid label takes two integers");
        return VertexId::grid(as_int(j[0], "side"), as_int(j[1], "level"));
    }
    if (j[0] == "op") {
        if (j.size() != 2 || !j[1].is_number_integer()) bad("opaque label takes one integer");
        return VertexId::opaque(j[1].get<long>());
    }
    if (j[0] == "sub") {
        if (j.size() != 3 || !j[1].is_array() || j[1].size() != 2) bad("subdivision label needs two ends and a third");
        int third = 0;
        if (j[2] == "1/3") third = 1;
        else if (j[2] == "2/3") third = 2;
        else bad("subdivision third must be \"1/3\" or \"2/3\"");
        return VertexId::sub(vertex_from_json(j[1][0]), vertex_from_json(j[1][1]), third);
    }
    bad("unknown vertex label");
}

Json to_json(const SimplicialGraph& g)
{
    Json vertices = Json::array();
    for (const auto& v : g.vertices()) vertices.push_back(to_json(v));
    Json edges = Json::array();
    for (auto [a, b] : g.edges()) edges.push_back(Json::array({a, b}));
    Json out{{"vertices", vertices}, {"edges", edges}};
    if (g.has_coords()) {
        Json coords = Json::array();
        for (int i = 0; i < g.size(); ++i) coords.push_back(Json::array({to_string(g.coord(i).x), to_string(g.coord(i).y)}));
        out["coords"] = coords;
    }
    return out;
}

SimplicialGraph graph_from_json(const Json& j)
{
    const auto& jv = field(j, "vertices");
    const auto& je = field(j, "edges");
    if (!jv.is_array() || !je.is_array()) bad("vertices and edges must be arrays");
    std::vector<VertexId> vertices;
    for (const auto& x : jv) vertices.push_back(vertex_from_json(x));
    std::vector<SimplicialGraph::Edge> edges;
    for (const auto& e : je) {
        auto ends = int_list(e, "edge");
        if (ends.size() != 2) bad("edge must have two ends");
        for (int x : ends)
            if (x < 0 || x >= static_cast<int>(vertices.size())) bad("edge end out of range");
        edges.emplace_back(vertices[ends[0]], vertices[ends[1]]);
    }
    std::optional<std::map<VertexId, Point>> coords;
    if (j.contains("coords")) {
        const auto& jc = j.at("coords");
        if (!jc.is_array() || jc.size() != vertices.size()) bad("one coordinate pair per vertex expected");
        coords.emplace();
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            if (!jc[i].is_array() || jc[i].size() != 2) bad("coordinate must be a pair");
            (*coords)[vertices[i]] = Point{as_rational(jc[i][0], "x"), as_rational(jc[i][1], "y")};
        }
    }
    try {
        SimplicialGraph g(vertices, edges, coords);
        if (g.vertices() != vertices) bad("vertices must be listed in canonical order");
        return g;
    } catch (const StructureError& e) {
        bad(std::string("malformed graph: ") + e.what());
    }
}

Json to_json(const SegmentRegion& r)
{
    Json pieces = Json::array();
    for (const auto& piece : r.pieces()) {
        Json ivs = Json::array();
        for (const auto& iv : piece.intervals) ivs.push_back(interval_json(iv));
        pieces.push_back(Json{{"edge", piece.edge}, {"intervals", ivs}});
    }
    return Json{{"vertices", r.vertices()}, {"pieces", pieces}};
}

Instance make_instance(const CoverSystem& s, std::optional<EnlargedFamily> enlarged)
{
    Instance inst;
    const auto& d = s.diagram();
    inst.levels = d.levels();
    inst.g_row = d.g_row();
    inst.f_row = d.f_row();
    inst.eps = s.schedule();
    for (int n = 0; n <= s.length(); ++n) {
        std::vector<std::vector<int>> level;
        for (const auto& a : s.cover(n)) level.push_back(a.fiber);
        inst.fibers.push_back(std::move(level));
    }
    inst.phi = s.phis();
    inst.enlarged = std::move(enlarged);
    return inst;
}

Json to_json(const Instance& inst)
{
    Json out;
    out["schema"] = schema_version;
    out["l"] = inst.length();
    Json eps = Json::array();
    for (const auto& e : inst.eps.values) eps.push_back(to_string(e));
    out["epsilon"] = eps;
    Json levels = Json::array();
    for (const auto& g : inst.levels) levels.push_back(to_json(*g));
    out["levels"] = levels;
    Json g_row = Json::array(), f_row = Json::array();
    for (const auto& m : inst.g_row) g_row.push_back(m.image());
    for (const auto& m : inst.f_row) f_row.push_back(m.image());
    out["g"] = g_row;
    out["f"] = f_row;
    Json covers = Json::array();
    for (std::size_t n = 0; n < inst.fibers.size(); ++n) covers.push_back(Json{{"cover", n + 1}, {"fibers", inst.fibers[n]}});
    out["covers"] = covers;
    Json phi = Json::array();
    for (const auto& p : inst.phi) phi.push_back(Json{{"from", p.level + 2}, {"to", p.level + 1}, {"table", p.table}});
    out["phi"] = phi;
    if (inst.enlarged) {
        Json radii = Json::array();
        for (const auto& e : inst.enlarged->sets)
            radii.push_back(Json{{"cover", e.level + 1}, {"vertex", e.vertex}, {"label", e.label}, {"radius2", to_string(e.radius2)}});
        out["enlarged"] = Json{{"m2", to_string(inst.enlarged->m2)}, {"sets", radii}};
    }
    return out;
}

Instance instance_from_json(const Json& j)
{
    if (!j.is_object()) bad("instance must be an object");
    if (as_int(field(j, "schema"), "schema") != schema_version) bad("unsupported schema version");
    Instance inst;
    int l = as_int(field(j, "l"), "l");
    if (l < 0) bad("l must be non-negative");

    const auto& jeps = field(j, "epsilon");
    if (!jeps.is_array()) bad("epsilon must be an array");
    for (const auto& e : jeps) inst.eps.values.push_back(as_rational(e, "epsilon"));
    if (inst.eps.length() != l) bad("epsilon needs l+1 values");

    const auto& jl = field(j, "levels");
    if (!jl.is_array() || static_cast<int>(jl.size()) != l + 1) bad("levels needs l+1 graphs");
    for (const auto& g : jl) inst.levels.push_back(std::make_shared<const SimplicialGraph>(graph_from_json(g)));
    if (!inst.levels.back()->has_coords()) bad("top level needs coordinates");

    auto rows = [&](const char* key, std::vector<SimplicialMapping>& out) {
        const auto& jr = field(j, key);
        if (!jr.is_array() || static_cast<int>(jr.size()) != l) bad(std::string(key) + " needs l maps");
        for (int n = 0; n < l; ++n) {
            auto image = int_list(jr[n], key);
            try {
                out.emplace_back(inst.levels[n + 1], inst.levels[n], image);
            } catch (const StructureError& e) {
                bad(std::string(key) + "_" + std::to_string(n) + ": " + e.what());
            }
        }
    };
    rows("g", inst.g_row);
    rows("f", inst.f_row);

    const auto& jc = field(j, "covers");
    if (!jc.is_array() || static_cast<int>(jc.size()) != l + 1) bad("covers needs l+1 entries");
    for (int n = 0; n <= l; ++n) {
        if (as_int(field(jc[n], "cover"), "cover") != n + 1) bad("covers must be numbered 1..l+1 in order");
        const auto& jf = field(jc[n], "fibers");
        if (!jf.is_array() || static_cast<int>(jf.size()) != inst.levels[n]->size()) bad("one fiber per vertex expected");
        std::vector<std::vector<int>> level;
        for (const auto& f : jf) level.push_back(int_list(f, "fiber"));
        inst.fibers.push_back(std::move(level));
    }

    const auto& jp = field(j, "phi");
    if (!jp.is_array() || static_cast<int>(jp.size()) != l) bad("phi needs l tables");
    for (int n = 0; n < l; ++n) {
        if (as_int(field(jp[n], "from"), "from") != n + 2 || as_int(field(jp[n], "to"), "to") != n + 1)
            bad("phi tables must run from cover n+2 to n+1 in order");
        inst.phi.push_back({n, int_list(field(jp[n], "table"), "phi table")});
    }

    if (j.contains("enlarged")) {
        const auto& je = j.at("enlarged");
        EnlargedFamily e;
        e.m2 = as_rational(field(je, "m2"), "m2");
        const auto& js = field(je, "sets");
        if (!js.is_array()) bad("enlarged sets must be an array");
        for (const auto& x : js) {
            EnlargedSet set;
            set.level = as_int(field(x, "cover"), "cover") - 1;
            set.vertex = as_int(field(x, "vertex"), "vertex");
            if (!field(x, "label").is_string()) bad("label must be a string");
            set.label = x.at("label").get<std::string>();
            set.radius2 = as_rational(field(x, "radius2"), "radius2");
            e.sets.push_back(std::move(set));
        }
        inst.enlarged = std::move(e);
    }
    return inst;
}

Json regions_json(const CoverSystem& s, const RealizedSystem& r)
{
    Json regions = Json::array();
    const auto& all = s.all_sets();
    for (std::size_t i = 0; i < all.size(); ++i) {
        Json entry{{"cover", all[i]->level + 1}, {"vertex", to_json(s.diagram().level(all[i]->level).vertex(all[i]->vertex))}};
        entry["region"] = to_json(r.regions[i]);
        regions.push_back(entry);
    }
    return Json{{"schema", schema_version}, {"regions", regions}};
}

std::string dump(const Json& j)
{
    return j.dump(1) + "\n";
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

} // namespace treechain::io
