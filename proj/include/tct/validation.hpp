#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "tct/errors.hpp"
#include "tct/inversion.hpp"
#include "tct/models.hpp"

namespace tct {

/// Distances between a recovered density and a closed-form oracle, plus
/// the full provenance of the run that produced the estimate.
struct ErrorReport {
    double l1 = 0.0;        // trapezoid integral of |fhat - f|
    double sup = 0.0;       // max abs deviation on the grid
    double ks = 0.0;        // max abs difference of grid-integrated CDFs,
                            // both renormalized to unit mass
    double mass = 0.0;      // recovered total mass
    double neg_mass = 0.0;  // recovered misplaced mass
    nlohmann::ordered_json params;
};

/// Metrics of `estimate` against the closed-form density of `spec` at lag t.
inline ErrorReport density_distance(const DensityEstimate& estimate,
                                    const SubordinatorSpec& spec, double t) {
    if (std::holds_alternative<DeterministicSubordinator>(spec))
        throw unsupported_error("density_distance: deterministic spec has no density oracle");
    const auto& xis = estimate.xis;
    const std::size_t n = xis.size();
    std::vector<double> truth(n), absdiff(n);
    ErrorReport rep;
    for (std::size_t i = 0; i < n; ++i) {
        truth[i] = subordinator_density(spec, t, xis[i]);
        absdiff[i] = std::abs(estimate.values[i] - truth[i]);
        rep.sup = std::max(rep.sup, absdiff[i]);
    }
    rep.l1 = detail::trapezoid(xis, absdiff);
    rep.mass = estimate.total_mass;
    rep.neg_mass = estimate.neg_mass;

    // KS on cumulative-trapezoid CDFs, each renormalized to unit mass so the
    // shape error is isolated from the mass error reported separately.
    std::vector<double> cdf_est(n, 0.0), cdf_truth(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        cdf_est[i] = cdf_est[i - 1] +
                     0.5 * (estimate.values[i] + estimate.values[i - 1]) * (xis[i] - xis[i - 1]);
        cdf_truth[i] =
            cdf_truth[i - 1] + 0.5 * (truth[i] + truth[i - 1]) * (xis[i] - xis[i - 1]);
    }
    const double me = cdf_est.back() != 0.0 ? cdf_est.back() : 1.0;
    const double mt = cdf_truth.back() != 0.0 ? cdf_truth.back() : 1.0;
    for (std::size_t i = 0; i < n; ++i)
        rep.ks = std::max(rep.ks, std::abs(cdf_est[i] / me - cdf_truth[i] / mt));
    return rep;
}

/// Numerical witness that the Gaussian CF extends to complex arguments:
/// returns |trapezoid of exp(i x z) phi(x) over [-12, 12] - exp(-z^2/2)|.
/// The window supports |Im z| <= 6; beyond that the truncated tail is no
/// longer negligible.
inline double gaussian_cf_quadrature_check(complex_t z) {
    if (std::abs(z.imag()) > 6.0)
        throw domain_error("gaussian_cf_quadrature_check: |Im z| > 6 exceeds the quadrature window");
    constexpr std::size_t kPoints = 100001;
    constexpr double kLo = -12.0, kHi = 12.0;
    const double h = (kHi - kLo) / static_cast<double>(kPoints - 1);
    const double norm = 1.0 / std::sqrt(2.0 * M_PI);
    complex_t acc(0.0, 0.0);
    for (std::size_t i = 0; i < kPoints; ++i) {
        const double x = kLo + h * static_cast<double>(i);
        const double wt = (i == 0 || i == kPoints - 1) ? 0.5 : 1.0;
        acc += wt * std::exp(complex_t(0.0, x) * z) * (norm * std::exp(-0.5 * x * x));
    }
    acc *= h;
    return std::abs(acc - std::exp(-0.5 * z * z));
}

/// Simulate -> decompose (single lag) -> density_distance, with the full
/// run provenance recorded on the report.
inline ErrorReport round_trip_report(const TcbmSpec& spec, double t, std::int64_t n,
                                     std::uint64_t seed, const FrequencyGrid& grid,
                                     const std::vector<double>& xis, double R,
                                     const TransformOptions& opt = {}) {
    if (std::holds_alternative<DeterministicSubordinator>(spec.subordinator))
        throw unsupported_error("round_trip_report: deterministic spec has no density oracle");
    IncrementPanel panel;
    panel.series.push_back({t, sample_tcbm_increments(spec, t, n, seed)});
    panel.provenance = "simulated";
    TimeChangeResult tc = time_change_transform(panel, spec.theta, grid, xis, R, opt);
    if (!tc.failures.empty()) throw numeric_error(tc.failures.begin()->second);
    ErrorReport rep = density_distance(tc.densities.at(t), spec.subordinator, t);
    rep.params = nlohmann::ordered_json{{"model", spec_name(spec.subordinator)},
                                        {"theta", spec.theta},
                                        {"t", t},
                                        {"n", n},
                                        {"seed", seed},
                                        {"omega_max", grid.omega_max()},
                                        {"n_omega", grid.size()},
                                        {"R", R},
                                        {"xi_min", xis.front()},
                                        {"xi_max", xis.back()},
                                        {"n_xi", xis.size()},
                                        {"clip_negative", opt.clip_negative}};
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GammaSubordinator>) {
                rep.params["a"] = s.a;
                rep.params["b"] = s.b;
            } else if constexpr (std::is_same_v<T, InverseGaussianSubordinator>) {
                rep.params["delta"] = s.delta;
                rep.params["gamma_p"] = s.gamma_p;
            } else {
                rep.params["rate"] = s.rate;
            }
        },
        spec.subordinator);
    return rep;
}

}  // namespace tct
