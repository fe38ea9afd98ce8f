#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mimosim/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Link-level simulator and analytic toolkit for turbo-coded "
                 "single-user massive MIMO with conjugate-transpose precoding"};
    app.require_subcommand(1);

    mimosim::BerOptions ber;
    auto* ber_cmd = app.add_subcommand("ber", "Run a Monte Carlo BER sweep from a config file");
    ber_cmd->add_option("--config", ber.config_path, "JSON run configuration")->required();
    std::optional<std::size_t> frames;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<std::string> out_csv;
    ber_cmd->add_option("--frames", frames, "Frames per SNR point (overrides config)");
    ber_cmd->add_option("--seed", seed, "Master seed (overrides config and MIMOSIM_SEED)");
    ber_cmd->add_option("--workers", workers, "Worker threads (overrides config)");
    ber_cmd->add_option("--out", out_csv, "CSV output path (overrides config)");

    mimosim::PlanOptions plan;
    auto* plan_cmd =
        app.add_subcommand("plan", "Feasible transmit-antenna range and trade-off curves");
    plan_cmd->add_option("--ntot", plan.n_tot, "Total antenna count N_t + N_r")->required();
    plan_cmd->add_option("--nrt", plan.n_rt, "Retransmission count")->required();
    plan_cmd->add_option("--eta-min", plan.eta_min, "Minimum spectral efficiency")->required();
    std::optional<std::string> plan_out;
    plan_cmd->add_option("--out", plan_out, "CSV output path (default: stdout)");

    mimosim::ValidateOptions val;
    auto* val_cmd =
        app.add_subcommand("validate", "Monte Carlo check of the channel-moment closed forms");
    val_cmd->add_option("--nt", val.n_t, "Transmit antennas")->required();
    val_cmd->add_option("--nr", val.n_r, "Receive antennas")->required();
    val_cmd->add_option("--nrt", val.n_rt, "Retransmissions")->required();
    val_cmd->add_option("--sigma-h2", val.sigma_h_sq, "Per-dimension channel variance")
        ->required();
    val_cmd->add_option("--sigma-w2", val.sigma_w_sq, "Per-dimension noise variance")->required();
    val_cmd->add_option("--draws", val.draws, "Monte Carlo draws (>= 10000)")->required();
    val_cmd->add_option("--seed", val.seed, "Master seed");
    val_cmd->add_flag("--corrupt-analytic", val.corrupt_analytic)->group("");  // test hook

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? mimosim::kExitOk : mimosim::kExitConfigError;
    }

    if (*ber_cmd) {
        ber.frames = frames;
        ber.seed = seed;
        ber.workers = workers;
        ber.out_csv = out_csv;
        return mimosim::cmd_ber(ber, std::cout, std::cerr);
    }
    if (*plan_cmd) {
        plan.out_csv = plan_out;
        return mimosim::cmd_plan(plan, std::cout, std::cerr);
    }
    if (*val_cmd) {
        if (!val_cmd->count("--seed")) {
            try {
                if (const auto env = mimosim::env_seed_override()) {
                    val.seed = *env;
                }
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return mimosim::kExitConfigError;
            }
        }
        return mimosim::cmd_validate(val, std::cout, std::cerr);
    }
    return mimosim::kExitConfigError;
}
