#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sigcube/bench.hpp"
#include "sigcube/cube.hpp"
#include "sigcube/cube_io.hpp"
#include "sigcube/error.hpp"
#include "sigcube/generator.hpp"
#include "sigcube/graph.hpp"
#include "sigcube/inverted_index.hpp"
#include "sigcube/measures.hpp"

namespace sigcube::cli {

namespace fs = std::filesystem;

namespace {

struct GraphArgs {
    std::string vertices;
    std::string edges;
};

void add_graph_options(CLI::App* cmd, GraphArgs& args)
{
    cmd->add_option("--vertices", args.vertices, "Vertex CSV (id,<dim1>,...)")->required();
    cmd->add_option("--edges", args.edges, "Edge CSV (src,dst)")->required();
}

MultidimGraph load(const GraphArgs& args, std::ostream& err)
{
    LoadReport report;
    auto g = load_graph(args.vertices, args.edges, &report);
    if (report.self_loops_dropped > 0) {
        err << "warning: dropped " << report.self_loops_dropped << " self-loop(s)\n";
    }
    return g;
}

// Writes to `path`, or to `out` when the path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& fn)
{
    if (path.empty()) {
        fn(out);
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw Error("cannot write " + path);
    }
    fn(file);
    if (!file.flush()) {
        throw Error("write failed for " + path);
    }
}

std::string format_ms(double ms)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Structurally significant graph cube builder"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a synthetic multidimensional graph");
    std::size_t gen_vertices = 0;
    std::size_t gen_edges = 0;
    std::size_t gen_dims = 2;
    std::size_t gen_card = 3;
    std::uint64_t gen_seed = 1;
    double gen_hub = 0.0;
    std::string gen_out = ".";
    gen->add_option("--vertices", gen_vertices, "Vertex count")->required();
    gen->add_option("--edges", gen_edges, "Edge count")->required();
    gen->add_option("--dims", gen_dims, "Dimension count")->capture_default_str();
    gen->add_option("--card", gen_card, "Values per dimension")->capture_default_str();
    gen->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
    gen->add_option("--hub", gen_hub, "Fraction of vertices in the planted hub clique")->capture_default_str();
    gen->add_option("--out", gen_out, "Output directory for vertices.csv and edges.csv")->capture_default_str();

    // ss
    auto* ss = app.add_subcommand("ss", "Compute the structural significance table");
    GraphArgs ss_graph;
    std::string ss_out;
    std::string ss_policy = "ss-mean";
    std::size_t ss_min_support = 1;
    add_graph_options(ss, ss_graph);
    ss->add_option("--out", ss_out, "Output CSV (standard output when omitted)");
    ss->add_option("--policy", ss_policy, "none | ss-mean | support")->capture_default_str();
    ss->add_option("--min-support", ss_min_support, "Minimum support for --policy support")
        ->capture_default_str();

    // cube
    auto* cube = app.add_subcommand("cube", "Materialize the graph cube");
    GraphArgs cube_graph;
    std::string cube_out;
    std::string cube_strategy = "steps";
    std::string cube_policy = "ss-mean";
    std::size_t cube_min_support = 1;
    std::size_t cube_max_level = 0;
    std::optional<bool> cube_members;
    unsigned cube_threads = 1;
    add_graph_options(cube, cube_graph);
    cube->add_option("--out", cube_out, "Cube directory")->required();
    cube->add_option("--strategy", cube_strategy, "level | steps")->capture_default_str();
    cube->add_option("--policy", cube_policy, "none | ss-mean | support")->capture_default_str();
    cube->add_option("--min-support", cube_min_support, "Minimum support for --policy support")
        ->capture_default_str();
    cube->add_option("--max-level", cube_max_level, "Highest cuboid level (default: all dimensions)");
    cube->add_flag("--keep-members,!--no-keep-members", cube_members,
                   "Store member id lists (default: on below 1e6 vertices)");
    cube->add_option("--threads", cube_threads, "Worker-count hint")->capture_default_str();

    // query
    auto* query = app.add_subcommand("query", "Print one cuboid of a cube directory");
    std::string query_cube;
    std::vector<std::string> query_dims;
    query->add_option("--cube", query_cube, "Cube directory")->required();
    query->add_option("--dims", query_dims, "Comma-separated dimension names")->required()->delimiter(',');

    // bench
    auto* bench = app.add_subcommand("bench", "Time both strategies after checking they agree");
    GraphArgs bench_graph;
    std::size_t bench_levels = 0;
    std::size_t bench_repeats = 1;
    std::string bench_policy = "none";
    std::size_t bench_min_support = 1;
    unsigned bench_threads = 1;
    std::string bench_out;
    add_graph_options(bench, bench_graph);
    bench->add_option("--levels", bench_levels, "Highest cuboid level (default: all dimensions)");
    bench->add_option("--repeats", bench_repeats, "Runs per strategy")->capture_default_str();
    bench->add_option("--policy", bench_policy, "none | ss-mean | support")->capture_default_str();
    bench->add_option("--min-support", bench_min_support, "Minimum support for --policy support")
        ->capture_default_str();
    bench->add_option("--threads", bench_threads, "Worker-count hint")->capture_default_str();
    bench->add_option("--out", bench_out, "Output CSV (standard output when omitted)");

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("sigcube");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) {
        argv.push_back(s.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (*gen) {
            auto params = GenParams::uniform(gen_vertices, gen_edges, gen_dims, gen_card, gen_seed, gen_hub);
            auto g = generate_synthetic(params);
            std::error_code ec;
            fs::create_directories(gen_out, ec);
            write_graph(g, fs::path(gen_out) / "vertices.csv", fs::path(gen_out) / "edges.csv");
            char pct[32];
            std::snprintf(pct, sizeof pct, "%.1f%%", 100.0 * gen_hub);
            out << "generated " << g.vertex_count() << " vertices, " << g.edge_count() << " edges, "
                << g.dim_count() << " dims; hub " << params.hub_size() << " vertices (" << pct
                << " of vertices)\n";
        } else if (*ss) {
            auto g = load(ss_graph, err);
            auto idx = build_inverted_index(g);
            auto table = apply_policy(significance_table(g, idx), PrunePolicy::parse(ss_policy, ss_min_support));
            emit(ss_out, out, [&](std::ostream& s) { write_significance_csv(g, table, s); });
        } else if (*cube) {
            auto g = load(cube_graph, err);
            auto policy = PrunePolicy::parse(cube_policy, cube_min_support);
            auto strategy = parse_strategy(cube_strategy);
            const std::size_t max_level = cube_max_level == 0 && cube->count("--max-level") == 0
                                              ? g.dim_count()
                                              : cube_max_level;
            auto idx = build_inverted_index(g);
            auto table = apply_policy(significance_table(g, idx), policy);
            auto built = compute_cube(g, idx, table, strategy, max_level, BuildOptions{cube_threads});
            const bool members = cube_members.value_or(g.vertex_count() < kDefaultMemberLimit);
            write_cube(built, cube_out, members);
            std::vector<std::size_t> per_level(max_level, 0);
            for (const auto& [sig, net] : built.cuboids) {
                per_level[sig.size() - 1] += net.nodes.size();
            }
            for (std::size_t k = 0; k < max_level; ++k) {
                out << "level " << k + 1 << ": " << per_level[k] << " nodes, "
                    << built.meta.level_combines[k] << " combines, " << format_ms(built.meta.level_millis[k])
                    << " ms" << (built.meta.level_precomputed[k] ? " (pre-computed)" : "") << '\n';
            }
            out << "edges: " << format_ms(built.meta.edge_millis) << " ms\n";
        } else if (*query) {
            auto path = cuboid_path(query_cube, query_dims);
            // Validates the file before echoing it.
            (void)read_cuboid(query_cube, query_dims);
            std::ifstream in(path, std::ios::binary);
            out << in.rdbuf();
        } else if (*bench) {
            auto g = load(bench_graph, err);
            BenchOptions options;
            options.policy = PrunePolicy::parse(bench_policy, bench_min_support);
            options.max_level = bench_levels;
            options.repeats = bench_repeats;
            options.threads = bench_threads;
            if (bench->count("--levels") != 0 && bench_levels == 0) {
                throw ParamError("levels must be at least 1");
            }
            auto report = run_bench(g, options);
            emit(bench_out, out, [&](std::ostream& s) { write_bench_csv(report, s); });
        }
    } catch (const ParamError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const QueryError& e) {
        err << "error: " << e.what() << '\n';
        return kQueryMiss;
    } catch (const NotMaterializedError& e) {
        err << "error: " << e.what() << '\n';
        return kQueryMiss;
    } catch (const VerificationError& e) {
        err << "error: " << e.what() << '\n';
        return kVerification;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInput;
    }
    return kOk;
}

} // namespace sigcube::cli
