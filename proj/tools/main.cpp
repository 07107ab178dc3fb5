// vexle: certify modular/norm computations and inequality claims for
// weighted variable-exponent spaces from declarative scenario files.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "vexle/runner.hpp"
#include "vexle/scenario.hpp"
#include "vexle/selftest.hpp"

namespace {

int parallel_default() {
    if (const char* env = std::getenv("VEXLE_PARALLEL")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cmd_run(const std::string& path, const std::string& format, const std::string& out_path,
            int parallel, double tol, bool timings) {
    auto scenarios = vexle::parse_scenario_file(read_file(path));
    vexle::RunOptions opts;
    opts.parallelism = parallel > 0 ? parallel : parallel_default();
    opts.timings = timings;
    opts.default_tol = tol;
    auto rows = vexle::run_scenarios(scenarios, opts);
    std::string text = format == "kv" ? vexle::to_kv(rows) : vexle::to_csv(rows);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << text;
    }
    return vexle::exit_code(rows);
}

int cmd_explain(const std::string& kind_token) {
    auto kind = vexle::kind_from_name(kind_token);
    if (!kind) {
        std::cerr << "unknown kind: " << kind_token << "\nknown kinds:";
        for (auto k : vexle::all_scenario_kinds()) std::cerr << ' ' << vexle::kind_name(k);
        std::cerr << '\n';
        return 2;
    }
    std::cout << vexle::explain_kind(*kind) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical certification of weighted variable-exponent space claims"};
    app.require_subcommand(1);

    std::string file, format = "csv", out_path, kind_token;
    int parallel = 0;
    double tol = 1e-8;
    bool timings = false;

    auto* run = app.add_subcommand("run", "run a scenario file and report one row per quantity");
    run->add_option("file", file, "scenario file")->required()->check(CLI::ExistingFile);
    run->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "kv"}));
    run->add_option("--out", out_path, "write the report here instead of stdout");
    run->add_option("--parallel", parallel,
                    "worker threads (default: VEXLE_PARALLEL or 1)");
    run->add_option("--tol", tol, "default bisection tolerance");
    run->add_flag("--timings", timings, "fill the wall_time column");

    auto* selftest = app.add_subcommand("selftest", "run the acceptance battery");

    auto* explain = app.add_subcommand("explain", "describe a scenario kind and its keys");
    explain->add_option("kind", kind_token, "scenario kind token")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(run)) return cmd_run(file, format, out_path, parallel, tol, timings);
        if (app.got_subcommand(selftest))
            return vexle::print_selftest(vexle::run_selftest()) == 0 ? 0 : 1;
        return cmd_explain(kind_token);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
