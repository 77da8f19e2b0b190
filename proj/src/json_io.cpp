#include "treeph/json_io.hpp"

#include <fstream>

namespace treeph {

namespace {

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw ValidationError(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

std::vector<VertexId> id_list(const Json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
    std::vector<VertexId> out;
    for (const auto& v : j) {
        if (!v.is_string()) throw ValidationError(std::string(what) + " entries must be strings");
        out.push_back(v.get<VertexId>());
    }
    return out;
}

std::vector<EdgePair> pair_list(const Json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
    std::vector<EdgePair> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw ValidationError(std::string(what) + " entries must be [id, id] pairs");
        out.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
    }
    return out;
}

GridValue grid_value(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw ValidationError("grid values must be [i, j] integer pairs");
    return GridValue{j[0].get<int>(), j[1].get<int>()};
}

int int_value(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw ValidationError(std::string(what) + " must be an integer");
    return j.get<int>();
}

GraphEdge sorted_edge(VertexId u, VertexId w) {
    if (w < u) std::swap(u, w);
    return {std::move(u), std::move(w)};
}

}  // namespace

Json quiver_to_json(const Quiver& q) {
    Json edges = Json::array();
    for (const auto& [s, t] : q.edges) edges.push_back(Json::array({s, t}));
    return Json{{"vertices", q.vertices}, {"edges", std::move(edges)}};
}

Quiver quiver_from_json(const Json& j) {
    return build_quiver(id_list(field(j, "vertices"), "vertices"),
                        pair_list(field(j, "edges"), "edges"));
}

Json tree_over_to_json(const TreeOverQ& t) {
    Json labeling = Json::object();
    for (const auto& [v, q] : t.labeling_map()) labeling[v] = q;
    return Json{{"base", quiver_to_json(t.base().quiver())},
                {"tree", quiver_to_json(t.tree().quiver())},
                {"labeling", std::move(labeling)}};
}

TreeOverQ tree_over_from_json(const Json& j) {
    RootedTreePtr base = validate_rooted_tree_ptr(quiver_from_json(field(j, "base")));
    Quiver tree = quiver_from_json(field(j, "tree"));
    const Json& lab = field(j, "labeling");
    if (!lab.is_object()) throw ValidationError("labeling must be an object");
    std::map<VertexId, VertexId> labeling;
    for (const auto& [v, q] : lab.items()) {
        if (!q.is_string()) throw ValidationError("labeling values must be strings");
        labeling[v] = q.get<VertexId>();
    }
    return build_tree_over(std::move(base), tree, labeling);
}

Json graph_to_json(const Graph& g) {
    Json edges = Json::array();
    for (const auto& [u, w] : g.edges) edges.push_back(Json::array({u, w}));
    return Json{{"vertices", g.vertices}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const Json& j) {
    std::vector<GraphEdge> edges;
    for (auto& [u, w] : pair_list(field(j, "edges"), "edges")) edges.push_back(sorted_edge(u, w));
    return build_graph(id_list(field(j, "vertices"), "vertices"), std::move(edges));
}

Json filtration_to_json(const QFiltration& f) {
    Json vv = Json::object();
    for (const auto& [v, value] : f.vertex_value) vv[v] = value;
    Json ev = Json::array();
    for (const auto& [e, value] : f.edge_value) ev.push_back(Json::array({e.first, e.second, value}));
    return Json{{"quiver", quiver_to_json(f.q->quiver())},
                {"graph", graph_to_json(f.graph)},
                {"vertex_values", std::move(vv)},
                {"edge_values", std::move(ev)}};
}

QFiltration filtration_from_json(const Json& j) {
    RootedTreePtr q = validate_rooted_tree_ptr(quiver_from_json(field(j, "quiver")));
    Graph g = graph_from_json(field(j, "graph"));
    const Json& vv = field(j, "vertex_values");
    if (!vv.is_object()) throw ValidationError("vertex_values must be an object");
    std::map<VertexId, VertexId> vertex_values;
    for (const auto& [v, value] : vv.items()) {
        if (!value.is_string()) throw ValidationError("vertex values must be strings");
        vertex_values[v] = value.get<VertexId>();
    }
    const Json& ev = field(j, "edge_values");
    if (!ev.is_array()) throw ValidationError("edge_values must be an array");
    std::map<GraphEdge, VertexId> edge_values;
    for (const auto& entry : ev) {
        if (!entry.is_array() || entry.size() != 3 || !entry[0].is_string() ||
            !entry[1].is_string() || !entry[2].is_string())
            throw ValidationError("edge_values entries must be [u, w, value] triples");
        GraphEdge e = sorted_edge(entry[0].get<VertexId>(), entry[1].get<VertexId>());
        if (!edge_values.emplace(e, entry[2].get<VertexId>()).second)
            throw ValidationError("duplicate edge value for {" + e.first + ", " + e.second + "}");
    }
    return validate_filtration(std::move(g), std::move(q), vertex_values, edge_values);
}

Bifiltration bifiltration_from_json(const Json& j) {
    Bifiltration b;
    b.graph = graph_from_json(field(j, "graph"));
    const Json& grid = field(j, "grid");
    if (!grid.is_array() || grid.size() != 2)
        throw ValidationError("grid must be a [m, n] pair");
    b.grid_m = int_value(grid[0], "grid size");
    b.grid_n = int_value(grid[1], "grid size");
    if (b.grid_m < 1 || b.grid_n < 1) throw ValidationError("grid sizes must be positive");
    auto check_bounds = [&](const GridValue& v, const std::string& what) {
        if (v.i < 1 || v.i > b.grid_m || v.j < 1 || v.j > b.grid_n)
            throw ValidationError(what + " grid value [" + std::to_string(v.i) + ", " +
                                  std::to_string(v.j) + "] is outside the grid");
    };
    for (const auto& [v, value] : field(j, "vertex_values").items()) {
        b.vertex_values[v] = grid_value(value);
        check_bounds(b.vertex_values[v], "vertex '" + v + "'");
    }
    for (const auto& entry : field(j, "edge_values")) {
        if (!entry.is_array() || entry.size() != 3)
            throw ValidationError("edge_values entries must be [u, w, [i, j]] triples");
        GraphEdge e = sorted_edge(entry[0].get<VertexId>(), entry[1].get<VertexId>());
        if (!b.edge_values.emplace(e, grid_value(entry[2])).second)
            throw ValidationError("duplicate edge value for {" + e.first + ", " + e.second + "}");
        check_bounds(b.edge_values.at(e), "edge {" + e.first + ", " + e.second + "}");
    }
    const Json& restriction = field(j, "restriction");
    const Json& poset = field(restriction, "poset");
    Quiver hasse = hasse_quiver(id_list(field(poset, "elements"), "elements"),
                                pair_list(field(poset, "relation"), "relation"));
    b.poset = validate_rooted_tree_ptr(hasse);
    for (const auto& [p, value] : field(restriction, "embedding").items()) {
        b.embedding[p] = grid_value(value);
        check_bounds(b.embedding[p], "embedding of '" + p + "'");
    }
    return b;
}

GraphFunctor restrict(const Bifiltration& b) {
    return restrict_bifiltration(b.graph, b.vertex_values, b.edge_values, b.poset, b.embedding);
}

MergeInvariantInput merge_input_from_json(const Json& j) {
    MergeInvariantInput m;
    m.graph = graph_from_json(field(j, "graph"));
    m.n = int_value(field(j, "n"), "n");
    auto vertex_map = [&](const char* name) {
        std::map<VertexId, int> out;
        for (const auto& [v, value] : field(j, name).items())
            out[v] = int_value(value, name);
        return out;
    };
    auto edge_map = [&](const char* name) {
        std::map<GraphEdge, int> out;
        for (const auto& entry : field(j, name)) {
            if (!entry.is_array() || entry.size() != 3 || !entry[0].is_string() ||
                !entry[1].is_string())
                throw ValidationError(std::string(name) + " entries must be [u, w, value] triples");
            GraphEdge e = sorted_edge(entry[0].get<VertexId>(), entry[1].get<VertexId>());
            if (!out.emplace(e, int_value(entry[2], name)).second)
                throw ValidationError(std::string(name) + " repeats edge {" + e.first + ", " +
                                      e.second + "}");
        }
        return out;
    };
    m.f_vertices = vertex_map("f_vertices");
    m.f_edges = edge_map("f_edges");
    m.g_vertices = vertex_map("g_vertices");
    m.g_edges = edge_map("g_edges");
    return m;
}

Json merge_input_to_json(const MergeInvariantInput& m) {
    auto vertex_json = [](const std::map<VertexId, int>& values) {
        Json out = Json::object();
        for (const auto& [v, value] : values) out[v] = value;
        return out;
    };
    auto edge_json = [](const std::map<GraphEdge, int>& values) {
        Json out = Json::array();
        for (const auto& [e, value] : values) out.push_back(Json::array({e.first, e.second, value}));
        return out;
    };
    return Json{{"graph", graph_to_json(m.graph)}, {"n", m.n},
                {"f_vertices", vertex_json(m.f_vertices)}, {"f_edges", edge_json(m.f_edges)},
                {"g_vertices", vertex_json(m.g_vertices)}, {"g_edges", edge_json(m.g_edges)}};
}

Json decomposition_to_json(const Decomposition& d) {
    Json summands = Json::array();
    for (const Summand& s : d.summands)
        summands.push_back(Json{{"apex", s.apex},
                                {"key", s.key},
                                {"multiplicity", s.multiplicity},
                                {"tree", tree_over_to_json(s.witness)}});
    Json dims = Json::object();
    for (const auto& [v, dim] : d.dims) dims[v] = dim;
    return Json{{"summands", std::move(summands)}, {"dims", std::move(dims)}};
}

const char* kind_name(InputKind k) {
    switch (k) {
        case InputKind::Quiver: return "quiver";
        case InputKind::TreeOver: return "tree";
        case InputKind::Filtration: return "filtration";
        case InputKind::Bifiltration: return "bifiltration";
        case InputKind::MergeInput: return "merge";
    }
    return "unknown";
}

InputKind detect_kind(const Json& j) {
    if (!j.is_object()) throw ValidationError("input file must hold a JSON object");
    if (j.contains("base") && j.contains("tree")) return InputKind::TreeOver;
    if (j.contains("grid")) return InputKind::Bifiltration;
    if (j.contains("f_vertices")) return InputKind::MergeInput;
    if (j.contains("quiver") && j.contains("graph")) return InputKind::Filtration;
    if (j.contains("vertices") && j.contains("edges")) return InputKind::Quiver;
    throw ValidationError("unrecognized input shape");
}

Json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ValidationError("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

}  // namespace treeph
