#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "utvpi/driver.hpp"
#include "utvpi/model.hpp"

namespace {

using namespace utvpi;

std::vector<Mode> parse_mode_list(const std::string& list) {
    std::vector<Mode> modes;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto m = parse_mode(item);
        if (!m) {
            throw std::invalid_argument("unknown mode '" + item + "'");
        }
        modes.push_back(*m);
    }
    return modes;
}

int cmd_check(const std::string& path, const std::string& mode_name) {
    const auto mode = parse_mode(mode_name);
    if (!mode) {
        std::cerr << "unknown mode '" << mode_name << "'\n";
        return kUsageExit;
    }
    VarTable vars;
    const auto constraints = parse_constraint_file(path, vars);
    const RunReport report = run_check(constraints, *mode);
    std::cout << report.summary() << '\n';
    std::cerr << "mode=" << to_string(*mode) << " steps=" << report.steps << " time_ms=" << report.total_ms << '\n';
    return exit_code(report.verdict);
}

int cmd_implies(const std::string& phi_path, const std::string& query_path, const std::string& mode_name) {
    const auto mode = parse_mode(mode_name);
    if (!mode || (*mode != Mode::scst && *mode != Mode::closure)) {
        std::cerr << "implies supports --mode scst|closure\n";
        return kUsageExit;
    }
    VarTable vars;
    const auto phi = parse_constraint_file(phi_path, vars);
    const auto queries = parse_constraint_file(query_path, vars);
    const ImpliesReport report = run_implies(phi, queries, *mode);
    for (std::size_t q = 0; q < queries.size(); ++q) {
        std::cout << to_string(queries[q], vars) << ": ";
        if (report.implied_at[q]) {
            std::cout << "implied at step " << *report.implied_at[q] << '\n';
        } else {
            std::cout << "not implied\n";
        }
    }
    std::cout << report.run.summary() << '\n';
    return exit_code(report.run.verdict);
}

int cmd_gen(const GenConfig& cfg, const std::string& out_path) {
    const auto constraints = generate(cfg);
    if (auto problem = audit_instance(cfg, constraints); !problem.empty()) {
        std::cerr << "generated instance failed self-audit: " << problem << '\n';
        return 1;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << out_path << '\n';
        return kUsageExit;
    }
    write_instance(out, cfg, constraints);
    return 0;
}

int cmd_bench(const std::string& config_path, const std::string& mode_list, std::size_t reps,
              const std::string& csv_path) {
    std::ifstream config(config_path);
    if (!config) {
        std::cerr << "cannot open " << config_path << '\n';
        return kUsageExit;
    }
    const auto classes = parse_bench_config(config);
    const auto modes = parse_mode_list(mode_list);
    const BenchReport report = run_bench(classes, modes, reps);
    write_table(std::cout, report);
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) {
            std::cerr << "cannot write " << csv_path << '\n';
            return kUsageExit;
        }
        write_csv(csv, report);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Incremental UTVPI satisfiability and implication"};
    app.require_subcommand(1);

    std::string check_file;
    std::string check_mode = "scst";
    auto* check = app.add_subcommand("check", "Assert a constraint file one constraint at a time");
    check->add_option("file", check_file, "Constraint file")->required();
    check->add_option("--mode", check_mode, "scst|inc-lamu|m-lamu|closure");

    std::string phi_file;
    std::string query_file;
    std::string implies_mode = "scst";
    auto* implies = app.add_subcommand("implies", "Report when each query becomes implied");
    implies->add_option("phi", phi_file, "Constraint file")->required();
    implies->add_option("queries", query_file, "Query file")->required();
    implies->add_option("--mode", implies_mode, "scst|closure");

    GenConfig gen_cfg;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate a random two-variable instance");
    gen->add_option("--n", gen_cfg.n, "Variables")->required();
    gen->add_option("--m", gen_cfg.m, "Constraints")->required();
    gen->add_option("--seed", gen_cfg.seed, "RNG seed")->required();
    gen->add_option("--out", gen_out, "Output path")->required();

    std::string bench_config;
    std::string bench_modes = "scst,inc-lamu,m-lamu";
    std::size_t bench_reps = 5;
    std::string bench_csv;
    auto* bench = app.add_subcommand("bench", "Time modes on generated instance classes");
    bench->add_option("--config", bench_config, "Lines of 'name n m [seed]'")->required();
    bench->add_option("--modes", bench_modes, "Comma-separated modes");
    bench->add_option("--reps", bench_reps, "Instances per class");
    bench->add_option("--csv", bench_csv, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsageExit;
    }

    try {
        if (check->parsed()) {
            return cmd_check(check_file, check_mode);
        }
        if (implies->parsed()) {
            return cmd_implies(phi_file, query_file, implies_mode);
        }
        if (gen->parsed()) {
            return cmd_gen(gen_cfg, gen_out);
        }
        return cmd_bench(bench_config, bench_modes, bench_reps, bench_csv);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kUsageExit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageExit;
    }
}
