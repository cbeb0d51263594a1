#include "sigcube/bench.hpp"

#include <sys/utsname.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <thread>

#include "sigcube/error.hpp"
#include "sigcube/inverted_index.hpp"
#include "sigcube/oracle.hpp"

namespace sigcube {

BenchReport run_bench(const MultidimGraph& g, const BenchOptions& options)
{
    if (options.repeats < 1) {
        throw ParamError("repeats must be at least 1");
    }
    const std::size_t max_level = options.max_level == 0 ? g.dim_count() : options.max_level;
    const auto idx = build_inverted_index(g);
    const auto table = apply_policy(significance_table(g, idx), options.policy);
    BuildOptions build{options.threads};

    BenchReport report;
    report.environment = machine_descriptor();
    for (std::size_t r = 0; r < options.repeats; ++r) {
        std::vector<GraphCube> cubes;
        for (auto strategy : {Strategy::level_by_level, Strategy::steps_up}) {
            const auto start = std::chrono::steady_clock::now();
            cubes.push_back(compute_cube(g, idx, table, strategy, max_level, build));
            const auto stop = std::chrono::steady_clock::now();
            BenchRow row;
            row.strategy = strategy;
            row.policy = options.policy;
            row.max_level = max_level;
            row.wall_millis =
                std::max(1e-3, std::chrono::duration<double, std::milli>(stop - start).count());
            row.nodes_emitted = cubes.back().meta.nodes_emitted;
            row.combines_attempted = cubes.back().meta.combines_attempted;
            report.rows.push_back(row);
        }
        const auto diff = oracle::compare(cubes[0], cubes[1]);
        if (!diff.empty()) {
            throw VerificationError("strategies disagree (" + std::to_string(diff.size()) +
                                    " differences); refusing to report timings");
        }
    }
    return report;
}

void write_bench_csv(const BenchReport& report, std::ostream& out)
{
    out << "strategy,policy,max_level,wall_millis,nodes_emitted,combines_attempted,environment\n";
    char ms[64];
    for (const auto& row : report.rows) {
        std::snprintf(ms, sizeof ms, "%.3f", row.wall_millis);
        out << to_string(row.strategy) << ',' << row.policy.to_string() << ',' << row.max_level << ','
            << ms << ',' << row.nodes_emitted << ',' << row.combines_attempted << ','
            << report.environment << '\n';
    }
}

std::string machine_descriptor()
{
    std::string desc;
    utsname info{};
    if (uname(&info) == 0) {
        desc = std::string(info.sysname) + " " + info.release + " " + info.machine;
    } else {
        desc = "unknown";
    }
    desc += " cores=" + std::to_string(std::thread::hardware_concurrency());
#if defined(__clang__)
    desc += " clang-" + std::to_string(__clang_major__);
#elif defined(__GNUC__)
    desc += " gcc-" + std::to_string(__GNUC__);
#endif
    std::replace(desc.begin(), desc.end(), ',', ' ');
    return desc;
}

} // namespace sigcube
