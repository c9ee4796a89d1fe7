#pragma once

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tct/ecf.hpp"
#include "tct/errors.hpp"
#include "tct/inversion.hpp"
#include "tct/io.hpp"
#include "tct/models.hpp"
#include "tct/parallel.hpp"
#include "tct/validation.hpp"

namespace tct {

inline constexpr const char* kThetaConvention =
    "E[tau_t] = t (theta is identified only under this time normalization)";

/// Flat run configuration shared by the CLI subcommands. Grid parameters
/// are validated against the module preconditions before any compute.
struct RunConfig {
    // model
    std::string model = "gamma";  // gamma | ig | det
    double a = 5.0;               // gamma: a, ig: delta, det: rate
    double b = 5.0;               // gamma: b, ig: gamma_p, det: unused
    double theta = 0.0;
    bool estimate_theta_flag = false;

    // sampling
    std::vector<double> lags{1.0};
    std::int64_t n = 100000;
    std::uint64_t seed = 1;

    // transform grids
    double omega_max = 200.0;
    std::int64_t n_omega = 4001;
    double xi_min = 0.01;
    double xi_max = 8.0;
    std::int64_t n_xi = 800;
    double mollifier_R = 20.0;
    bool clip_negative = false;
    double max_exp_limit = 600.0;

    // io
    std::string input;
    std::string input_kind = "increments";  // increments | prices
    double dt = 1.0;
    std::vector<std::int64_t> multiples{1};
    std::string output;
    std::string diagnostics_path;

    // validate
    std::string oracle = "gamma";
    double t = 1.0;

    int threads = default_thread_count();
};

inline SubordinatorSpec make_subordinator(const std::string& model, double a, double b) {
    SubordinatorSpec spec;
    if (model == "gamma")
        spec = GammaSubordinator{a, b};
    else if (model == "ig")
        spec = InverseGaussianSubordinator{a, b};
    else if (model == "det")
        spec = DeterministicSubordinator{a};
    else
        throw parameter_error("unknown model '" + model + "' (expected gamma|ig|det)");
    validate_spec(spec);
    return spec;
}

inline std::vector<double> uniform_spatial_grid(double lo, double hi, std::int64_t n) {
    if (!(lo < hi)) throw parameter_error("spatial grid: xi_min must be below xi_max");
    if (n < 2) throw parameter_error("spatial grid: n_xi must be at least 2");
    std::vector<double> xis(static_cast<std::size_t>(n));
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::int64_t i = 0; i < n; ++i)
        xis[static_cast<std::size_t>(i)] = lo + step * static_cast<double>(i);
    return xis;
}

/// Pooled weighted least squares of per-lag sample sums against lag:
///   theta_hat = (sum_t t * S_t) / (sum_t n_t * t^2),  S_t = sum of lag-t values.
/// Valid under the E[tau_t] = t convention, which is echoed in diagnostics.
inline double estimate_theta(const IncrementPanel& panel) {
    panel.validate();
    bool usable = false;
    for (const auto& s : panel.series)
        if (s.values.size() >= 2) usable = true;
    if (!usable)
        throw parameter_error("estimate_theta: need at least one lag with two or more values");
    double num = 0.0, den = 0.0;
    for (const auto& s : panel.series) {
        double sum = 0.0;
        for (double v : s.values) sum += v;
        num += s.lag * sum;
        den += static_cast<double>(s.values.size()) * s.lag * s.lag;
    }
    return num / den;
}

/// simulate: draw increments of the configured process at each lag and
/// write `lag,value` rows. Lags use independent substreams of `seed`, so
/// the output is a pure function of the configuration.
inline void cmd_simulate(const RunConfig& cfg) {
    if (cfg.output.empty()) throw parameter_error("simulate: output path required");
    if (cfg.lags.empty()) throw parameter_error("simulate: at least one lag required");
    TcbmSpec spec{cfg.theta, make_subordinator(cfg.model, cfg.a, cfg.b)};
    IncrementPanel panel;
    panel.provenance = "simulated";
    for (std::size_t i = 0; i < cfg.lags.size(); ++i) {
        const double lag = cfg.lags[i];
        if (!(lag > 0.0)) throw parameter_error("simulate: lags must be positive");
        const std::uint64_t lag_seed = detail::mix64(cfg.seed + 0x9E3779B97F4A7C15ULL * (i + 2));
        panel.series.push_back({lag, sample_tcbm_increments(spec, lag, cfg.n, lag_seed)});
    }
    write_text_atomic(cfg.output, increments_csv(panel));
}

inline IncrementPanel load_panel(const RunConfig& cfg) {
    if (cfg.input.empty()) throw parameter_error("decompose: input path required");
    if (cfg.input_kind == "increments") return load_increments(cfg.input);
    if (cfg.input_kind == "prices") return load_log_prices(cfg.input, cfg.dt, cfg.multiples);
    throw parameter_error("unknown input kind '" + cfg.input_kind +
                          "' (expected increments|prices)");
}

/// decompose: per-lag recovered time-change densities as `lag,xi,density`
/// rows plus a flat diagnostics document. Returns the process exit code:
/// 0 on success, 4 when some (but not all) lags failed.
inline int cmd_decompose(const RunConfig& cfg, std::ostream& warn = std::cerr) {
    if (cfg.output.empty()) throw parameter_error("decompose: output path required");
    const IncrementPanel panel = load_panel(cfg);
    const double theta = cfg.estimate_theta_flag ? estimate_theta(panel) : cfg.theta;
    if (!std::isfinite(theta)) throw parameter_error("decompose: theta must be finite");
    const FrequencyGrid grid =
        FrequencyGrid::uniform(cfg.omega_max, static_cast<std::size_t>(cfg.n_omega));
    const std::vector<double> xis = uniform_spatial_grid(cfg.xi_min, cfg.xi_max, cfg.n_xi);
    if (!(cfg.mollifier_R > 0.0)) throw parameter_error("decompose: R must be positive");

    TransformOptions opt;
    opt.clip_negative = cfg.clip_negative;
    opt.max_exp_limit = cfg.max_exp_limit;
    opt.threads = cfg.threads;
    const TimeChangeResult result =
        time_change_transform(panel, theta, grid, xis, cfg.mollifier_R, opt);

    std::ostringstream csv;
    csv << "lag,xi,density\n";
    for (const auto& [lag, est] : result.densities) {
        const std::string lag_str = format_double(lag);
        for (std::size_t i = 0; i < est.xis.size(); ++i)
            csv << lag_str << ',' << format_double(est.xis[i]) << ','
                << format_double(est.values[i]) << '\n';
    }
    write_text_atomic(cfg.output, csv.str());

    nlohmann::ordered_json diag;
    diag["command"] = "decompose";
    diag["theta"] = theta;
    diag["theta_source"] = cfg.estimate_theta_flag ? "estimate" : "given";
    diag["theta_convention"] = kThetaConvention;
    diag["omega_max"] = cfg.omega_max;
    diag["n_omega"] = cfg.n_omega;
    diag["xi_min"] = cfg.xi_min;
    diag["xi_max"] = cfg.xi_max;
    diag["n_xi"] = cfg.n_xi;
    diag["R"] = cfg.mollifier_R;
    diag["clip_negative"] = cfg.clip_negative;
    diag["max_exp_limit"] = cfg.max_exp_limit;
    diag["input"] = cfg.input;
    diag["input_kind"] = cfg.input_kind;
    bool any_ess_warning = false;
    for (const auto& [lag, est] : result.densities) {
        const std::string key = "lag_" + format_double(lag);
        const auto& d = result.diagnostics.at(lag);
        diag[key + ".n"] = d.n;
        diag[key + ".total_mass"] = est.total_mass;
        diag[key + ".neg_mass"] = est.neg_mass;
        diag[key + ".min_ess"] = d.min_ess;
        diag[key + ".max_exponent"] = d.max_exponent;
        const bool low_ess = d.min_ess < 0.01 * static_cast<double>(d.n);
        diag[key + ".ess_warning"] = low_ess;
        if (low_ess) {
            any_ess_warning = true;
            warn << "warning: lag " << format_double(lag) << ": min ess " << d.min_ess
                 << " is below 1% of n = " << d.n
                 << "; the frequency grid reaches beyond what the sample supports\n";
        }
        if (!est.clipped && (est.total_mass < 0.9 || est.total_mass > 1.1))
            warn << "warning: lag " << format_double(lag) << ": total mass "
                 << est.total_mass << " outside [0.9, 1.1]\n";
    }
    diag["ess_warning_any"] = any_ess_warning;
    for (const auto& [lag, message] : result.failures)
        diag["lag_" + format_double(lag) + ".error"] = message;

    if (!cfg.diagnostics_path.empty())
        write_text_atomic(cfg.diagnostics_path, diag.dump(2) + "\n");

    if (result.densities.empty()) {
        throw numeric_error("decompose: every lag failed; first error: " +
                            result.failures.begin()->second);
    }
    return result.failures.empty() ? 0 : 4;
}

/// validate: closed-form round trip against a named oracle spec; emits the
/// full metrics document.
inline void cmd_validate(const RunConfig& cfg) {
    if (cfg.output.empty()) throw parameter_error("validate: output path required");
    if (cfg.oracle != "gamma" && cfg.oracle != "ig")
        throw parameter_error("validate: oracle must be gamma or ig");
    TcbmSpec spec{cfg.theta, make_subordinator(cfg.oracle, cfg.a, cfg.b)};
    const FrequencyGrid grid =
        FrequencyGrid::uniform(cfg.omega_max, static_cast<std::size_t>(cfg.n_omega));
    const std::vector<double> xis = uniform_spatial_grid(cfg.xi_min, cfg.xi_max, cfg.n_xi);
    if (!(cfg.mollifier_R > 0.0)) throw parameter_error("validate: R must be positive");
    TransformOptions opt;
    opt.clip_negative = cfg.clip_negative;
    opt.max_exp_limit = cfg.max_exp_limit;
    opt.threads = cfg.threads;
    const ErrorReport rep =
        round_trip_report(spec, cfg.t, cfg.n, cfg.seed, grid, xis, cfg.mollifier_R, opt);

    nlohmann::ordered_json doc;
    doc["command"] = "validate";
    doc["l1"] = rep.l1;
    doc["sup"] = rep.sup;
    doc["ks"] = rep.ks;
    doc["mass"] = rep.mass;
    doc["neg_mass"] = rep.neg_mass;
    doc["theta_convention"] = kThetaConvention;
    for (const auto& [key, value] : rep.params.items()) doc[key] = value;
    write_text_atomic(cfg.output, doc.dump(2) + "\n");
}

}  // namespace tct
