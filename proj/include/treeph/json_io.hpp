#pragma once

#include "json.hpp"
#include "treeph/apps.hpp"
#include "treeph/core.hpp"
#include "treeph/decomp.hpp"
#include "treeph/filtration.hpp"

// The UTF-8 JSON file formats shared by the CLI and the tests. Parsing
// validates through the module constructors; malformed shapes raise
// ValidationError.

namespace treeph {

using Json = nlohmann::json;

// {"vertices":["a","b"],"edges":[["a","b"]]}
Json quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const Json& j);

// {"base":<quiver>,"tree":<quiver>,"labeling":{"u":"a","v":"b"}}
Json tree_over_to_json(const TreeOverQ& t);
TreeOverQ tree_over_from_json(const Json& j);

// {"vertices":[...],"edges":[["u","w"],...]}
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

// {"quiver":<quiver>,"graph":<graph>,"vertex_values":{"u":"a",...},
//  "edge_values":[["u","w","b"],...]}
Json filtration_to_json(const QFiltration& f);
QFiltration filtration_from_json(const Json& j);

// {"graph":<graph>,"grid":[m,n],"vertex_values":{"u":[i,j],...},
//  "edge_values":[["u","w",[i,j]],...],
//  "restriction":{"poset":{"elements":[...],"relation":[["p","q"],...]},
//                 "embedding":{"p":[i,j],...}}}
struct Bifiltration {
    Graph graph;
    int grid_m = 0;
    int grid_n = 0;
    std::map<VertexId, GridValue> vertex_values;
    std::map<GraphEdge, GridValue> edge_values;
    RootedTreePtr poset;  // hasse quiver of the restriction poset
    std::map<VertexId, GridValue> embedding;
};
Bifiltration bifiltration_from_json(const Json& j);
GraphFunctor restrict(const Bifiltration& b);

// {"graph":<graph>,"n":4,"f_vertices":{...},"f_edges":[["u","w",2],...],
//  "g_vertices":{...},"g_edges":[...]}
struct MergeInvariantInput {
    Graph graph;
    int n = 0;
    std::map<VertexId, int> f_vertices, g_vertices;
    std::map<GraphEdge, int> f_edges, g_edges;
};
MergeInvariantInput merge_input_from_json(const Json& j);
Json merge_input_to_json(const MergeInvariantInput& m);

// {"summands":[{"apex":"b","key":"(b(a))","multiplicity":1,"tree":<tree_over>},...],
//  "dims":{"a":2,"b":1}}
Json decomposition_to_json(const Decomposition& d);

enum class InputKind { Quiver, TreeOver, Filtration, Bifiltration, MergeInput };
const char* kind_name(InputKind k);
InputKind detect_kind(const Json& j);

Json parse_file(const std::string& path);

}  // namespace treeph
