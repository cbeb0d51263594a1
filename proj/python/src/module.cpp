#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "sigcube/bench.hpp"
#include "sigcube/cube.hpp"
#include "sigcube/cube_io.hpp"
#include "sigcube/error.hpp"
#include "sigcube/generator.hpp"
#include "sigcube/graph.hpp"
#include "sigcube/inverted_index.hpp"
#include "sigcube/measures.hpp"
#include "sigcube/oracle.hpp"

namespace py = pybind11;
using namespace sigcube;

namespace {

SignificanceTable table_for(const MultidimGraph& g, const std::string& policy, std::size_t min_support)
{
    return apply_policy(significance_table(g, build_inverted_index(g)), PrunePolicy::parse(policy, min_support));
}

py::dict record_dict(const CuboidRecord& rec)
{
    py::dict nodes;
    for (const auto& [label, node] : rec.nodes) {
        if (node.members) {
            nodes[py::str(label)] = *node.members;
        } else {
            nodes[py::str(label)] = node.count;
        }
    }
    py::dict cross;
    for (const auto& [pair, w] : rec.cross_edges) {
        cross[py::make_tuple(pair.first, pair.second)] = w;
    }
    py::dict out;
    out["dims"] = rec.dims;
    out["nodes"] = nodes;
    out["self_edges"] = rec.self_edges;
    out["cross_edges"] = cross;
    return out;
}

} // namespace

PYBIND11_MODULE(_sigcube, m)
{
    m.doc() = "Structurally significant graph cube builder";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<LoadError>(m, "LoadError", base);
    py::register_exception<LookupError>(m, "LookupError", base);
    py::register_exception<ParamError>(m, "ParamError", base);
    py::register_exception<QueryError>(m, "QueryError", base);
    py::register_exception<NotMaterializedError>(m, "NotMaterializedError", base);
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<VerificationError>(m, "VerificationError", base);

    py::class_<MultidimGraph>(m, "Graph")
        .def_property_readonly("dims",
                               [](const MultidimGraph& g) {
                                   return std::vector<std::string>(g.dims().begin(), g.dims().end());
                               })
        .def_property_readonly("vertex_count", &MultidimGraph::vertex_count)
        .def_property_readonly("edge_count", &MultidimGraph::edge_count)
        .def_property_readonly("fingerprint", &MultidimGraph::fingerprint)
        .def("neighbors", [](const MultidimGraph& g, VertexId v) { return neighbors(g, v); })
        .def("posting",
             [](const MultidimGraph& g, const std::string& dim, const std::string& value) {
                 return posting_ids(g, build_inverted_index(g), dim, value);
             })
        .def("write", [](const MultidimGraph& g, const std::filesystem::path& v,
                         const std::filesystem::path& e) { write_graph(g, v, e); })
        .def("__eq__", [](const MultidimGraph& a, const MultidimGraph& b) { return a == b; });

    m.def("load_graph",
          [](const std::filesystem::path& v, const std::filesystem::path& e) { return load_graph(v, e); },
          py::arg("vertices"), py::arg("edges"));
    m.def("parse_graph",
          [](const std::string& v, const std::string& e) {
              std::istringstream vs(v);
              std::istringstream es(e);
              return parse_graph(vs, es);
          },
          py::arg("vertices_csv"), py::arg("edges_csv"));
    m.def("generate",
          [](std::size_t v, std::size_t e, std::size_t dims, std::size_t card, std::uint64_t seed, double hub) {
              return generate_synthetic(GenParams::uniform(v, e, dims, card, seed, hub));
          },
          py::arg("vertices"), py::arg("edges"), py::arg("dims") = 2, py::arg("card") = 3, py::arg("seed") = 1,
          py::arg("hub") = 0.0);

    m.def("vertex_score",
          [](const MultidimGraph& g, VertexId v) {
              auto s = vertex_score(g, v);
              py::dict d;
              d["alpha"] = s.alpha;
              d["cc"] = s.cc;
              d["density"] = s.density;
              d["score"] = s.score;
              return d;
          },
          py::arg("graph"), py::arg("vertex"));
    m.def("significance",
          [](const MultidimGraph& g, const std::string& policy, std::size_t min_support) {
              auto t = table_for(g, policy, min_support);
              py::list rows;
              for (DimIndex d = 0; d < g.dim_count(); ++d) {
                  for (ValueCode c = 0; c < t.rows[d].size(); ++c) {
                      const auto& r = t.at(d, c);
                      rows.append(py::make_tuple(g.dims()[d], g.value_name(d, c), r.ss, r.support, r.keep));
                  }
              }
              return rows;
          },
          py::arg("graph"), py::arg("policy") = "ss-mean", py::arg("min_support") = 1,
          "Rows of (dimension, value, ss, support, keep).");
    m.def("significance_csv",
          [](const MultidimGraph& g, const std::string& policy, std::size_t min_support) {
              std::ostringstream out;
              write_significance_csv(g, table_for(g, policy, min_support), out);
              return out.str();
          },
          py::arg("graph"), py::arg("policy") = "ss-mean", py::arg("min_support") = 1);

    py::class_<GraphCube>(m, "Cube")
        .def_property_readonly("dims", [](const GraphCube& c) { return c.dim_names; })
        .def_property_readonly("cuboid_count", [](const GraphCube& c) { return c.cuboids.size(); })
        .def_property_readonly("nodes_emitted", [](const GraphCube& c) { return c.meta.nodes_emitted; })
        .def_property_readonly("combines_attempted", [](const GraphCube& c) { return c.meta.combines_attempted; })
        .def("query",
             [](const GraphCube& c, const std::vector<std::string>& dims) {
                 return record_dict(to_record(c, query_cuboid(c, dims), true));
             },
             py::arg("dims"))
        .def("write",
             [](const GraphCube& c, const std::filesystem::path& dir, bool keep_members) {
                 write_cube(c, dir, keep_members);
             },
             py::arg("dir"), py::arg("keep_members") = true);

    m.def("build_cube",
          [](const MultidimGraph& g, const std::string& strategy, const std::string& policy,
             std::size_t min_support, std::size_t max_level, unsigned threads) {
              auto idx = build_inverted_index(g);
              auto table = apply_policy(significance_table(g, idx), PrunePolicy::parse(policy, min_support));
              py::gil_scoped_release release;
              return compute_cube(g, idx, table, parse_strategy(strategy), max_level == 0 ? g.dim_count() : max_level,
                                  BuildOptions{threads});
          },
          py::arg("graph"), py::arg("strategy") = "steps", py::arg("policy") = "ss-mean", py::arg("min_support") = 1,
          py::arg("max_level") = 0, py::arg("threads") = 1);
    m.def("oracle_cube", [](const MultidimGraph& g) { return oracle::oracle_cube(g, g.dim_count()); },
          py::arg("graph"));
    m.def("diff_size", [](const GraphCube& a, const GraphCube& b) { return oracle::compare(a, b).size(); });
    m.def("read_cuboid",
          [](const std::filesystem::path& dir, const std::vector<std::string>& dims) {
              return record_dict(read_cuboid(dir, dims));
          },
          py::arg("dir"), py::arg("dims"));
    m.def("bench",
          [](const MultidimGraph& g, std::size_t repeats, std::size_t max_level, const std::string& policy,
             std::size_t min_support, unsigned threads) {
              BenchOptions o;
              o.repeats = repeats;
              o.max_level = max_level;
              o.policy = PrunePolicy::parse(policy, min_support);
              o.threads = threads;
              BenchReport report;
              {
                  py::gil_scoped_release release;
                  report = run_bench(g, o);
              }
              py::list rows;
              for (const auto& r : report.rows) {
                  rows.append(py::make_tuple(to_string(r.strategy), r.policy.to_string(), r.max_level,
                                             r.wall_millis, r.nodes_emitted, r.combines_attempted));
              }
              return rows;
          },
          py::arg("graph"), py::arg("repeats") = 1, py::arg("max_level") = 0, py::arg("policy") = "none",
          py::arg("min_support") = 1, py::arg("threads") = 1,
          "Rows of (strategy, policy, max_level, wall_millis, nodes_emitted, combines_attempted).");
}
