// g2mod: scenario runner for the G2 moduli energy toolkit.
//
//   g2mod run <scenario.json> [--out DIR] [--quad-nodes N] [--fd-step H] [--seed S]
//   g2mod examples [--write DIR]
//
// Exit codes: 0 success, 1 input error, 2 negative verdict (the computation
// succeeded but a hypothesis or certificate check failed).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "g2m/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"G2 moduli-space energy and length toolkit"};
    app.require_subcommand(1);

    std::string scenario_file;
    g2m::RunOptions options;
    int quad_nodes = 0;
    double fd_step = 0.0;
    long long seed = 0;

    CLI::App* run = app.add_subcommand("run", "run a scenario file and write its artifacts");
    run->add_option("file", scenario_file, "scenario JSON file")->required();
    run->add_option("--out", options.out_dir, "output directory (default: out)");
    CLI::Option* opt_nodes =
        run->add_option("--quad-nodes", quad_nodes, "quadrature nodes per segment override");
    CLI::Option* opt_step = run->add_option("--fd-step", fd_step, "finite-difference step scale override");
    CLI::Option* opt_seed = run->add_option("--seed", seed, "random seed override");

    std::string write_dir;
    CLI::App* examples = app.add_subcommand("examples", "list bundled scenarios");
    CLI::Option* opt_write =
        examples->add_option("--write", write_dir, "write the bundled scenario files to a directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (examples->parsed()) {
        if (*opt_write) {
            std::filesystem::create_directories(write_dir);
            for (const auto& sc : g2m::bundled_scenarios()) {
                const std::string path =
                    (std::filesystem::path(write_dir) / (sc.name + ".json")).string();
                std::ofstream out(path, std::ios::binary);
                if (!out) {
                    std::cerr << "error: cannot write " << path << "\n";
                    return 1;
                }
                out << sc.json_text << "\n";
                std::cout << path << "\n";
            }
        } else {
            for (const auto& sc : g2m::bundled_scenarios())
                std::printf("%-22s %s\n", sc.name.c_str(), sc.description.c_str());
        }
        return 0;
    }

    if (*opt_nodes) {
        if (quad_nodes < 1) {
            std::cerr << "error: --quad-nodes must be >= 1\n";
            return 1;
        }
        options.quad_nodes = quad_nodes;
    }
    if (*opt_step) options.fd_step = fd_step;
    if (*opt_seed) options.seed = static_cast<std::uint64_t>(seed);

    try {
        g2m::ScenarioOutcome outcome = g2m::run_scenario_file(scenario_file, options);
        std::cout << outcome.summary;
        for (const auto& artifact : outcome.artifacts) std::cout << "wrote " << artifact << "\n";
        return outcome.exit_code;
    } catch (const g2m::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const g2m::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 1;
    }
}
