#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lgt/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Variational ground and thermal state preparation for a 1D Z2 "
                 "lattice gauge theory with Gauss-law constraints"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::optional<uint64_t> seed_override;

    const std::pair<const char*, const char*> subs[] = {
        {"vqe", "multi-objective ground-state run"},
        {"vqt", "multi-objective thermal-state run"},
        {"penalty-sweep", "penalty-method sweep over the mu grid"},
        {"temp-sweep", "thermal-state sweep over the temperature grid"},
        {"ed", "exact-diagonalization oracle report"},
    };
    for (const auto& [name, desc] : subs) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_dir, "output directory")->required();
        sub->add_option("--seed", seed_override, "override the config seed");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        return lgt::run_command(name, config_path, out_dir, seed_override);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
