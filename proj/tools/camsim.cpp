#include <cstdint>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "camsim/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"CAM accelerator simulator: functional search simulation and "
                 "hierarchical performance prediction"};
    app.require_subcommand(1);

    camsim::cli::SimulateOptions sim;
    std::vector<std::string> sim_labels;
    std::uint64_t sim_seed = 0;
    CLI::App* simulate = app.add_subcommand("simulate", "run one simulation, emit a JSON report");
    simulate->add_option("--config", sim.config_path, "configuration JSON")->required();
    simulate->add_option("--stored", sim.stored_path, "stored data CSV")->required();
    simulate->add_option("--query", sim.query_path, "query data CSV")->required();
    simulate->add_option("--labels", sim_labels,
                         "stored-entry and query label CSVs (two paths)")
        ->expected(2);
    simulate->add_option("--cost-model", sim.cost_model_path, "cost model JSON");
    CLI::Option* sim_seed_opt =
        simulate->add_option("--seed", sim_seed, "override the config seed");
    simulate->add_option("--out", sim.out_path, "report output path")->required();

    camsim::cli::SweepOptions sweep;
    std::vector<std::string> sweep_labels;
    std::uint64_t sweep_seed = 0;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Cartesian design-space sweep, emit CSV");
    sweep_cmd->add_option("--config", sweep.config_path, "base configuration JSON")->required();
    sweep_cmd->add_option("--sweep", sweep.sweep_path, "sweep spec JSON (dotted path -> values)")
        ->required();
    sweep_cmd->add_option("--stored", sweep.stored_path, "stored data CSV")->required();
    sweep_cmd->add_option("--query", sweep.query_path, "query data CSV")->required();
    sweep_cmd->add_option("--labels", sweep_labels,
                          "stored-entry and query label CSVs (two paths)")
        ->expected(2);
    sweep_cmd->add_option("--cost-model", sweep.cost_model_path, "cost model JSON");
    sweep_cmd->add_option("--repeats", sweep.repeats, "variation draws averaged per point")
        ->check(CLI::PositiveNumber);
    CLI::Option* sweep_seed_opt =
        sweep_cmd->add_option("--seed", sweep_seed, "override the config seed");
    sweep_cmd->add_option("--out", sweep.out_path, "CSV output path")->required();

    std::string validate_config;
    CLI::App* validate = app.add_subcommand("validate", "check a configuration file");
    validate->add_option("--config", validate_config, "configuration JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        // CLI11 exits 0 for --help; anything else is a usage error.
        return rc == 0 ? camsim::cli::kExitOk : camsim::cli::kExitUsage;
    }

    if (simulate->parsed()) {
        if (sim_labels.size() == 2) {
            sim.stored_labels_path = sim_labels[0];
            sim.query_labels_path = sim_labels[1];
        }
        if (!sim_seed_opt->empty()) sim.seed = sim_seed;
        return camsim::cli::cmd_simulate(sim);
    }
    if (sweep_cmd->parsed()) {
        if (sweep_labels.size() == 2) {
            sweep.stored_labels_path = sweep_labels[0];
            sweep.query_labels_path = sweep_labels[1];
        }
        if (!sweep_seed_opt->empty()) sweep.seed = sweep_seed;
        return camsim::cli::cmd_sweep(sweep);
    }
    return camsim::cli::cmd_validate(validate_config);
}
