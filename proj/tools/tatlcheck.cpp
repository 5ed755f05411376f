#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tatl/bench.hpp"
#include "tatl/runner.hpp"

namespace {

// exit codes: 0 ok, 1 verdict mismatch/timeout, 2 parse error, 3 resource
constexpr int kExitMismatch = 1;
constexpr int kExitParse = 2;
constexpr int kExitResource = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run(const tatl::Tmg& model, const std::vector<tatl::Query>& qs,
        const tatl::RunOptions& opt, const std::string& format, bool stats) {
    auto rs = tatl::run_queries(model, qs, opt);
    if (format == "json")
        std::cout << tatl::report_json(rs) << "\n";
    else
        std::cout << tatl::report_text(rs, stats);
    for (const auto& r : rs) {
        if (r.timed_out) return kExitResource;
        if (!r.ok()) return kExitMismatch;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"TATL model checker for timed multiplayer games"};
    app.require_subcommand(1);

    tatl::RunOptions opt;
    std::string engine = "incl", format = "text";
    bool stats = false;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--engine", engine,
                        "vertex identification: equal, incl or expand")
            ->check(CLI::IsMember({"equal", "incl", "expand"}));
        cmd->add_flag("--unsat", opt.with_unsat,
                      "run the dual unsatisfied encoding alongside");
        cmd->add_flag("--oracle", opt.use_oracle,
                      "cross-check verdicts against the region graph");
        cmd->add_flag("--stats", stats, "print per-query solver statistics");
        cmd->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--timeout", opt.timeout_sec,
                        "per-query timeout in seconds");
    };

    std::string model_path, query_path;
    CLI::App* check = app.add_subcommand("check", "check queries on a model");
    check->add_option("model", model_path, "model file")->required();
    check->add_option("queries", query_path, "query file")->required();
    add_common(check);

    std::string family;
    int size = 0;
    bool emit = false;
    CLI::App* bench =
        app.add_subcommand("bench", "run a generated benchmark instance");
    bench->add_option("family", family, "train-gate, standoff or phase-king")
        ->required();
    bench->add_option("n", size, "instance size")->required();
    bench->add_flag("--emit", emit,
                    "print the generated model and queries instead of running");
    add_common(bench);

    CLI11_PARSE(app, argc, argv);
    opt.mode = engine == "equal"  ? tatl::EngineMode::Equal
               : engine == "incl" ? tatl::EngineMode::Incl
                                  : tatl::EngineMode::Expand;

    try {
        std::string model_text, query_text;
        if (check->parsed()) {
            model_text = slurp(model_path);
            query_text = slurp(query_path);
        } else {
            tatl::BenchInstance inst = tatl::make_bench(family, size);
            if (emit) {
                std::cout << "// " << inst.name << "\n"
                          << inst.model_text << "\n// queries\n"
                          << inst.queries_text;
                return 0;
            }
            model_text = inst.model_text;
            query_text = inst.queries_text;
        }
        tatl::Tmg model = tatl::parse_model(model_text);
        std::vector<tatl::Query> qs = tatl::parse_queries(query_text, model);
        return run(model, qs, opt, format, stats);
    } catch (const tatl::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitResource;
    }
}
