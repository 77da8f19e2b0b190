// Command-line surface: validation, decomposition, enumeration, comparison,
// oracle verification, merge-tree invariants, and seeded instance
// generation. Machine-first: reports are JSON on stdout, diagnostics go to
// stderr. Exit codes: 0 ok, 1 invalid input, 2 internal error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "treeph/apps.hpp"
#include "treeph/decomp.hpp"
#include "treeph/filtration.hpp"
#include "treeph/gen.hpp"
#include "treeph/json_io.hpp"
#include "treeph/order.hpp"
#include "treeph/repmod.hpp"

using namespace treeph;

namespace {

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char c : buffer.str()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

struct Report {
    std::string command;
    std::vector<std::string> paths;
    Json result;
    std::vector<std::string> warnings;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    Json to_json() const {
        Json inputs = Json::array();
        for (const auto& p : paths) inputs.push_back(Json{{"path", p}, {"digest", file_digest(p)}});
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();
        return Json{{"command", command},
                    {"inputs", std::move(inputs)},
                    {"elapsed_ms", elapsed},
                    {"result", result},
                    {"warnings", warnings}};
    }
};

void print_summand_table(const Json& summands) {
    std::printf("  %-12s %-12s %s\n", "apex", "multiplicity", "key");
    for (const auto& s : summands)
        std::printf("  %-12s %-12lld %s\n", s.at("apex").get<std::string>().c_str(),
                    static_cast<long long>(s.at("multiplicity").get<std::int64_t>()),
                    s.at("key").get<std::string>().c_str());
}

void print_dims(const Json& dims) {
    std::printf("  dims:");
    for (const auto& [v, d] : dims.items())
        std::printf(" %s=%lld", v.c_str(), static_cast<long long>(d.get<std::int64_t>()));
    std::printf("\n");
}

void emit(const Report& report, bool pretty) {
    if (!pretty) {
        std::cout << report.to_json().dump() << "\n";
        return;
    }
    std::cout << "command: " << report.command << "\n";
    if (report.command == "decompose") {
        print_summand_table(report.result.at("summands"));
        print_dims(report.result.at("dims"));
    } else if (report.command == "oracle") {
        std::cout << "status: " << report.result.at("status").get<std::string>() << "\n";
        print_summand_table(report.result.at("algorithm"));
    } else if (report.command == "reduced") {
        std::cout << "count: " << report.result.at("count") << "\n";
        for (const auto& entry : report.result.at("entries")) {
            if (entry.contains("apex"))
                std::printf("  %-12s %s\n", entry.at("apex").get<std::string>().c_str(),
                            entry.at("key").get<std::string>().c_str());
            else
                std::printf("  %s\n", entry.at("key").get<std::string>().c_str());
        }
    } else if (report.command == "merge-invariant") {
        int index = 0;
        for (const auto& component : report.result.at("components")) {
            std::printf("component %d:\n", index++);
            print_summand_table(component.at("decomposition").at("summands"));
        }
    } else {
        std::cout << report.result.dump(2) << "\n";
    }
    for (const auto& w : report.warnings) std::cout << "warning: " << w << "\n";
}

Json summands_json(const std::vector<OracleSummand>& summands) {
    Json out = Json::array();
    for (const auto& s : summands)
        out.push_back(Json{{"apex", s.apex}, {"key", s.key}, {"multiplicity", s.multiplicity}});
    return out;
}

std::vector<OracleSummand> multiset_of(const Decomposition& d) {
    std::vector<OracleSummand> out;
    for (const Summand& s : d.summands)
        out.push_back(OracleSummand{s.apex, s.key, s.multiplicity});
    return out;
}

Json validate_result(const Json& input) {
    switch (detect_kind(input)) {
        case InputKind::Quiver: {
            RootedTree t = validate_rooted_tree(quiver_from_json(input));
            return Json{{"kind", "quiver"},
                        {"vertices", t.size()},
                        {"edges", t.quiver().edges.size()},
                        {"root", t.root_id()},
                        {"height", t.height()}};
        }
        case InputKind::TreeOver: {
            TreeOverQ t = tree_over_from_json(input);
            return Json{{"kind", "tree"},
                        {"base_vertices", t.base().size()},
                        {"tree_vertices", t.tree().size()},
                        {"key", canonical_key(t)}};
        }
        case InputKind::Filtration: {
            QFiltration f = filtration_from_json(input);
            return Json{{"kind", "filtration"},
                        {"graph_vertices", f.graph.vertices.size()},
                        {"graph_edges", f.graph.edges.size()},
                        {"quiver_vertices", f.q->size()}};
        }
        case InputKind::Bifiltration: {
            Bifiltration b = bifiltration_from_json(input);
            GraphFunctor functor = restrict(b);
            return Json{{"kind", "bifiltration"},
                        {"graph_vertices", b.graph.vertices.size()},
                        {"poset_elements", b.poset->size()},
                        {"functor_vertices", functor.q->size()}};
        }
        case InputKind::MergeInput: {
            MergeInvariantInput m = merge_input_from_json(input);
            validate_linear_filtration(m.graph, m.n, m.f_vertices, m.f_edges);
            validate_linear_filtration(m.graph, m.n, m.g_vertices, m.g_edges);
            for (const auto& v : m.graph.vertices)
                if (m.f_vertices.at(v) > m.g_vertices.at(v))
                    throw ValidationError("f > g at vertex '" + v + "'");
            for (const auto& e : m.graph.edges)
                if (m.f_edges.at(e) > m.g_edges.at(e))
                    throw ValidationError("f > g at edge {" + e.first + ", " + e.second + "}");
            return Json{{"kind", "merge"},
                        {"graph_vertices", m.graph.vertices.size()},
                        {"n", m.n}};
        }
    }
    throw std::logic_error("unreachable");
}

Decomposition decompose_input(const Json& input, const std::string& kind) {
    InputKind detected = detect_kind(input);
    if (kind == "tree" || (kind == "auto" && detected == InputKind::TreeOver))
        return decompose_tree(tree_over_from_json(input)).decomposition;
    if (kind == "filtration" || (kind == "auto" && detected == InputKind::Filtration))
        return decompose_h0(filtration_from_json(input));
    if (kind == "bifiltration" || (kind == "auto" && detected == InputKind::Bifiltration))
        return decompose_forest(sigma_of_functor(restrict(bifiltration_from_json(input))));
    throw ValidationError("input is not a tree-over, filtration, or bifiltration file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact H0 decomposition over rooted tree quivers"};
    app.require_subcommand(1);
    app.fallthrough();
    bool pretty = false;
    CLI::Option* pretty_flag =
        app.add_flag("--pretty", pretty, "human-readable tables instead of JSON");
    app.add_flag("--json", "machine-readable JSON output (the default)")->excludes(pretty_flag);

    std::string path, path_t, kind = "auto";
    std::uint32_t prime = 2;
    bool with_downsets = false, inject_corruption = false;
    std::string gen_kind = "quiver";
    int gen_size = 8, gen_q_size = 0, gen_edges = -1;
    std::uint64_t gen_seed = 0;

    CLI::App* validate = app.add_subcommand("validate", "parse and validate an input file");
    validate->add_option("path", path)->required();

    CLI::App* decompose = app.add_subcommand("decompose", "decompose a tree or a filtration");
    decompose->add_option("path", path)->required();
    decompose->add_option("--kind", kind)
        ->check(CLI::IsMember({"auto", "tree", "filtration", "bifiltration"}));

    CLI::App* reduced = app.add_subcommand("reduced", "enumerate reduced trees over a quiver");
    reduced->add_option("path", path)->required();
    reduced->add_flag("--with-downsets", with_downsets,
                      "enumerate over every downset (the full indecomposable list)");

    CLI::App* compare = app.add_subcommand("compare", "compare two trees over the same quiver");
    compare->add_option("pathS", path)->required();
    compare->add_option("pathT", path_t)->required();

    CLI::App* oracle = app.add_subcommand("oracle", "cross-check a decomposition against hom-dim probes");
    oracle->add_option("path", path)->required();
    oracle->add_option("--prime", prime, "field characteristic");
    oracle->add_flag("--inject-corruption", inject_corruption)->group("");  // harness self-test

    CLI::App* merge = app.add_subcommand("merge-invariant", "decompose a morphism of merge trees");
    merge->add_option("path", path)->required();

    CLI::App* gen = app.add_subcommand("gen", "emit a seeded random instance file");
    gen->add_option("--kind", gen_kind)->check(CLI::IsMember({"quiver", "tree", "filtration"}));
    gen->add_option("--size", gen_size)->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed);
    gen->add_option("--q-size", gen_q_size, "size of the generated base quiver");
    gen->add_option("--edges", gen_edges, "edge attempts for filtrations");

    CLI11_PARSE(app, argc, argv);

    Report report;
    try {
        if (*validate) {
            report.command = "validate";
            report.paths = {path};
            report.result = validate_result(parse_file(path));
        } else if (*decompose) {
            report.command = "decompose";
            report.paths = {path};
            report.result = decomposition_to_json(decompose_input(parse_file(path), kind));
        } else if (*reduced) {
            report.command = "reduced";
            report.paths = {path};
            RootedTreePtr q = validate_rooted_tree_ptr(quiver_from_json(parse_file(path)));
            Json entries = Json::array();
            if (with_downsets) {
                auto list = enumerate_indecomposables(q);
                for (const auto& entry : list)
                    entries.push_back(Json{{"apex", entry.apex},
                                           {"key", entry.key},
                                           {"tree", tree_over_to_json(entry.tree)}});
                report.result = Json{{"count", list.size()}, {"entries", std::move(entries)}};
            } else {
                ReducedCatalog catalog = enumerate_reduced(q);
                for (const auto& entry : catalog.entries)
                    entries.push_back(Json{{"key", canonical_key(entry)},
                                           {"tree", tree_over_to_json(entry)}});
                report.result = Json{{"count", catalog.entries.size()}, {"entries", std::move(entries)}};
            }
        } else if (*compare) {
            report.command = "compare";
            report.paths = {path, path_t};
            TreeOverQ s = tree_over_from_json(parse_file(path));
            TreeOverQ t = tree_over_from_json(parse_file(path_t));
            report.result = Json{{"leq_st", tree_leq(s, t)},
                                 {"leq_ts", tree_leq(t, s)},
                                 {"hom_st", hom_count(s, t).get_str()},
                                 {"hom_ts", hom_count(t, s).get_str()},
                                 {"iso", iso_over_q(s, t)}};
        } else if (*oracle) {
            report.command = "oracle";
            report.paths = {path};
            Json input = parse_file(path);
            InputKind detected = detect_kind(input);
            RootedTreePtr q;
            Representation rep;
            Decomposition algorithm;
            if (detected == InputKind::TreeOver) {
                TreeOverQ t = tree_over_from_json(input);
                q = t.base_ptr();
                rep = linearize(t, prime);
                algorithm = decompose_tree(t).decomposition;
            } else if (detected == InputKind::Filtration) {
                QFiltration f = filtration_from_json(input);
                q = f.q;
                rep = linearize(filtration_to_forest(f), prime);
                algorithm = decompose_h0(f);
            } else {
                throw ValidationError("oracle expects a tree-over or filtration file");
            }
            std::int64_t total_dim = 0;
            for (int d : rep.dims) total_dim += d;
            if (q->size() > 8 || total_dim > 16)
                report.warnings.push_back(
                    "oracle search is exponential; intended for small quivers and dimensions");
            std::vector<OracleSummand> expected = multiset_of(algorithm);
            if (inject_corruption && !expected.empty()) expected.front().multiplicity++;
            OracleResult result = oracle_decompose(rep, enumerate_indecomposables(q));
            std::string status = !result.conclusive ? "INCONCLUSIVE"
                                 : result.summands == expected ? "MATCH"
                                                               : "MISMATCH";
            report.result = Json{{"status", status},
                                 {"algorithm", summands_json(expected)},
                                 {"oracle", result.conclusive ? summands_json(result.summands)
                                                              : Json(nullptr)}};
        } else if (*merge) {
            report.command = "merge-invariant";
            report.paths = {path};
            MergeInvariantInput input = merge_input_from_json(parse_file(path));
            auto parts = morphism_invariant(input.graph, input.n, input.f_vertices,
                                            input.f_edges, input.g_vertices, input.g_edges);
            Json components = Json::array();
            for (const auto& part : parts)
                components.push_back(
                    Json{{"codomain", tree_over_to_json(part.morphism.codomain)},
                         {"domain", tree_over_to_json(part.morphism.domain_over_codomain)},
                         {"decomposition", decomposition_to_json(part.decomposition)}});
            report.result = Json{{"components", std::move(components)}};
        } else if (*gen) {
            Rng rng(gen_seed);
            if (gen_q_size <= 0) gen_q_size = std::max(2, gen_size / 3);
            Json instance;
            if (gen_kind == "quiver") {
                instance = quiver_to_json(gen_rooted_tree_quiver(gen_size, rng));
            } else if (gen_kind == "tree") {
                RootedTreePtr q =
                    validate_rooted_tree_ptr(gen_rooted_tree_quiver(gen_q_size, rng));
                instance = tree_over_to_json(gen_tree_over(q, gen_size, rng));
            } else {
                RootedTreePtr q =
                    validate_rooted_tree_ptr(gen_rooted_tree_quiver(gen_q_size, rng));
                if (gen_edges < 0) gen_edges = 2 * gen_size;
                instance = filtration_to_json(gen_filtration(q, gen_size, gen_edges, rng));
            }
            std::cout << instance.dump(2) << "\n";
            return 0;
        }
        emit(report, pretty);
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cout << Json{{"command", report.command}, {"error", e.what()}}.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
