// tct: recover the time-change density of a subordinated Brownian motion
// from observed increments, plus simulators and closed-form validation.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tct/pipeline.hpp"

namespace {

void add_grid_options(CLI::App* cmd, tct::RunConfig& cfg) {
    cmd->add_option("--omega-max", cfg.omega_max, "frequency truncation")->capture_default_str();
    cmd->add_option("--n-omega", cfg.n_omega, "frequency grid points (odd)")
        ->capture_default_str();
    cmd->add_option("--xi-min", cfg.xi_min, "spatial grid start")->capture_default_str();
    cmd->add_option("--xi-max", cfg.xi_max, "spatial grid end")->capture_default_str();
    cmd->add_option("--n-xi", cfg.n_xi, "spatial grid points")->capture_default_str();
    cmd->add_option("--R", cfg.mollifier_R, "Gaussian mollifier scale")->capture_default_str();
    cmd->add_flag("--clip-negative", cfg.clip_negative,
                  "clip negative density values and renormalize to unit mass");
    cmd->add_option("--max-exp-limit", cfg.max_exp_limit,
                    "abort when a weight exponent exceeds this limit")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-change decomposition of subordinated Brownian motion"};
    app.set_config("--config", "", "config file with the same keys as the flags");
    app.require_subcommand(1);

    tct::RunConfig cfg;
    std::string theta_arg = "0";

    auto* sim = app.add_subcommand("simulate", "draw process increments to a lag,value CSV");
    sim->add_option("--model", cfg.model, "gamma|ig|det")
        ->check(CLI::IsMember({"gamma", "ig", "det"}))
        ->capture_default_str();
    sim->add_option("--theta", cfg.theta, "drift per unit of business time")
        ->capture_default_str();
    sim->add_option("--a", cfg.a, "gamma: shape per unit time; ig: delta; det: rate")
        ->capture_default_str();
    sim->add_option("--b", cfg.b, "gamma: rate; ig: gamma_p")->capture_default_str();
    sim->add_option("--lags", cfg.lags, "comma-separated lags")
        ->delimiter(',')
        ->capture_default_str();
    sim->add_option("--n", cfg.n, "draws per lag")->capture_default_str();
    sim->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    sim->add_option("-o,--output", cfg.output, "output CSV path")->required();

    auto* dec = app.add_subcommand("decompose",
                                   "recover per-lag time-change densities from increments");
    dec->add_option("--input", cfg.input, "input CSV path")->required();
    dec->add_option("--input-kind", cfg.input_kind, "increments|prices")
        ->check(CLI::IsMember({"increments", "prices"}))
        ->capture_default_str();
    dec->add_option("--dt", cfg.dt, "base spacing of the price series")->capture_default_str();
    dec->add_option("--multiples", cfg.multiples, "comma-separated lag multiples for prices")
        ->delimiter(',')
        ->capture_default_str();
    dec->add_option("--theta", theta_arg, "drift value, or 'estimate'")->capture_default_str();
    add_grid_options(dec, cfg);
    dec->add_option("-o,--output", cfg.output, "densities CSV path")->required();
    dec->add_option("--diagnostics", cfg.diagnostics_path, "diagnostics JSON path");

    auto* val = app.add_subcommand("validate", "closed-form round-trip metrics");
    val->add_option("--oracle", cfg.oracle, "gamma|ig")
        ->check(CLI::IsMember({"gamma", "ig"}))
        ->capture_default_str();
    val->add_option("--a", cfg.a, "gamma: shape per unit time; ig: delta")
        ->capture_default_str();
    val->add_option("--b", cfg.b, "gamma: rate; ig: gamma_p")->capture_default_str();
    val->add_option("--theta", cfg.theta, "drift")->capture_default_str();
    val->add_option("--t", cfg.t, "lag")->capture_default_str();
    val->add_option("--n", cfg.n, "sample count")->capture_default_str();
    val->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
    add_grid_options(val, cfg);
    val->add_option("-o,--output", cfg.output, "metrics JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) {
            tct::cmd_simulate(cfg);
            return 0;
        }
        if (dec->parsed()) {
            if (theta_arg == "estimate") {
                cfg.estimate_theta_flag = true;
            } else {
                cfg.theta = tct::parse_double(theta_arg, "--theta", 0, "theta");
            }
            return tct::cmd_decompose(cfg);
        }
        if (val->parsed()) {
            tct::cmd_validate(cfg);
            return 0;
        }
    } catch (const tct::numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const tct::parameter_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
