#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "movecrdt/bench.hpp"
#include "movecrdt/codec.hpp"
#include "movecrdt/fuzz.hpp"
#include "movecrdt/naive_engine.hpp"

namespace {

using namespace movecrdt;

std::vector<Operation> load_sorted(const std::string& path) {
    std::vector<Operation> ops = read_log_file(path);
    std::sort(ops.begin(), ops.end(),
              [](const Operation& a, const Operation& b) { return a.id < b.id; });
    return ops;
}

OpSet to_set(const std::vector<Operation>& ops) {
    OpSet s;
    for (const Operation& op : ops) s.insert(op);
    return s;
}

int cmd_materialize(const std::string& path) {
    try {
        std::vector<Operation> ops = load_sorted(path);
        NaiveResult result = update_validity_naive(ops);
        std::cout << canonical_json(materialize(to_set(ops), result.valid)) << "\n";
        return 0;
    } catch (const MissingDependency& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const MalformedRecord& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_validity(const std::string& path) {
    try {
        std::vector<Operation> ops = load_sorted(path);
        NaiveResult result = update_validity_naive(ops);
        for (const Operation& op : ops) {
            if (!op.is_move()) continue;
            std::cout << to_string(op.id) << ' '
                      << (move_valid(result.valid, op.id) ? "true" : "false") << "\n";
        }
        return 0;
    } catch (const MissingDependency& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const MalformedRecord& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

void apply_mix_token(OpMix& mix, const std::string& name, unsigned weight) {
    if (name == "put") {
        mix.put = weight;
    } else if (name == "make") {
        mix.make_map = mix.make_list = weight;
    } else if (name == "make-map") {
        mix.make_map = weight;
    } else if (name == "make-list") {
        mix.make_list = weight;
    } else if (name == "insert") {
        mix.insert = weight;
    } else if (name == "delete") {
        mix.del = weight;
    } else if (name == "move") {
        mix.move_object = mix.move_scalar = weight;
    } else if (name == "move-object") {
        mix.move_object = weight;
    } else if (name == "move-scalar") {
        mix.move_scalar = weight;
    } else if (name == "overwrite") {
        mix.overwrite = weight;
    } else {
        throw CLI::ValidationError("--mix", "unknown op kind '" + name + "'");
    }
}

OpMix parse_mix(const std::string& text) {
    OpMix mix;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        auto colon = token.find(':');
        if (colon == std::string::npos) {
            throw CLI::ValidationError("--mix", "expected name:weight, got '" + token + "'");
        }
        apply_mix_token(mix, token.substr(0, colon),
                        static_cast<unsigned>(std::stoul(token.substr(colon + 1))));
    }
    return mix;
}

void dump_divergence(const std::string& dir, const FuzzReport& report) {
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < report.logs.size(); ++i) {
        std::ofstream log(dir + "/replica" + std::to_string(i) + ".oplog");
        write_log(log, report.logs[i]);
        std::ofstream doc(dir + "/replica" + std::to_string(i) + ".json");
        doc << report.digests[i] << "\n";
    }
    std::cerr << "divergence artifacts written to " << dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"JSON CRDT with move operations: materialize, validity, fuzz, bench"};
    app.require_subcommand(1);

    std::string log_path;
    auto* materialize_cmd = app.add_subcommand("materialize", "Render an op log as canonical JSON");
    materialize_cmd->add_option("file", log_path, "op log file")->required();

    std::string validity_path;
    auto* validity_cmd = app.add_subcommand("validity", "Print each move's validity");
    validity_cmd->add_option("file", validity_path, "op log file")->required();

    FuzzConfig fcfg;
    std::string fuzz_variant = "rar";
    std::string mix_text;
    std::string dump_dir = "fuzz-failure";
    auto* fuzz_cmd = app.add_subcommand("fuzz", "Randomized convergence check");
    fuzz_cmd->add_option("--replicas", fcfg.replicas, "replica count (>= 2)");
    fuzz_cmd->add_option("--ops", fcfg.total_ops, "total operations to mint");
    fuzz_cmd->add_option("--seed", fcfg.seed, "random seed");
    fuzz_cmd->add_option("--variant", fuzz_variant, "naive|rar|rar-batch|rar-lifecycle");
    fuzz_cmd->add_option("--mix", mix_text, "weights, e.g. put:4,make:2,insert:2,delete:1,move:3");
    fuzz_cmd->add_option("--rounds", fcfg.sync_rounds, "sync rounds");
    fuzz_cmd->add_option("--dump-dir", dump_dir, "directory for divergence artifacts");

    Scenario sc;
    std::string scenario_name = "diverge-moves";
    std::string bench_variant = "rar-batch";
    std::string out_path = "bench.csv";
    bool grid = false;
    auto* bench_cmd = app.add_subcommand("bench", "Benchmark merge-side convergence");
    bench_cmd->add_option("--scenario", scenario_name, "diverge-moves|diverge-adds");
    bench_cmd->add_option("--n", sc.n, "workload size per actor");
    bench_cmd->add_option("--variant", bench_variant,
                          "naive|rar|rar-batch|rar-lifecycle|moves-disabled");
    bench_cmd->add_option("--seed", sc.seed, "random seed");
    bench_cmd->add_option("--repeats", sc.repeats, "timed repeats per configuration");
    bench_cmd->add_option("--out", out_path, "CSV output path");
    bench_cmd->add_flag("--grid", grid, "run the default N grid instead of --n");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*materialize_cmd) return cmd_materialize(log_path);
        if (*validity_cmd) return cmd_validity(validity_path);

        if (*fuzz_cmd) {
            fcfg.variant = parse_variant(fuzz_variant);
            if (!mix_text.empty()) fcfg.op_mix = parse_mix(mix_text);
            FuzzReport report = fuzz_run(fcfg);
            std::cout << "seed=" << report.seed << " ops=" << report.ops_minted
                      << " invalid_moves=" << report.invalid_moves
                      << " converged=" << (report.converged ? "true" : "false") << "\n";
            if (!report.converged) {
                dump_divergence(dump_dir, report);
                return 1;
            }
            std::cout << canonical_json(report.final_doc) << "\n";
            return 0;
        }

        // bench
        sc.variant = parse_variant(bench_variant);
        std::vector<std::size_t> ns = grid
            ? std::vector<std::size_t>{10, 50, 100, 500, 1000, 10000}
            : std::vector<std::size_t>{sc.n};
        std::vector<BenchRow> rows;
        for (std::size_t n : ns) {
            Scenario run = sc;
            run.n = n;
            auto batch = scenario_name == "diverge-moves" ? run_diverge_moves(run)
                                                          : run_diverge_adds(run);
            rows.insert(rows.end(), batch.begin(), batch.end());
        }
        std::ofstream out(out_path);
        if (!out) throw Error("cannot open output file " + out_path);
        emit_csv(out, rows);
        std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
