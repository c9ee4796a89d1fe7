#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "tct/ecf.hpp"
#include "tct/errors.hpp"
#include "tct/parallel.hpp"

namespace tct {

/// Real density values on a spatial grid plus normalization diagnostics.
/// total_mass is the trapezoid integral of the stored values; neg_mass
/// collects mass that a bona fide density on the declared support could
/// not have (negative lobes, and mass at xi < 0 when the support is
/// declared nonnegative). Both are model-misspecification diagnostics.
struct DensityEstimate {
    std::vector<double> xis;
    std::vector<double> values;
    double total_mass = 0.0;
    double neg_mass = 0.0;
    std::optional<double> mollifier_R;  // nullopt = simplified (Dini) inversion
    double omega_max = 0.0;
    bool clipped = false;
    double imag_residue = 0.0;  // max |Im| seen before discarding, relative to sup|f|
};

struct TransformOptions {
    std::optional<double> mollifier_R;
    bool clip_negative = false;       // clip negative values, renormalize to unit mass
    bool support_nonnegative = false; // count density mass at xi < 0 as misplaced
    double max_exp_limit = 600.0;
    int threads = 1;
};

namespace detail {

inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        s += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
    return s;
}

inline void require_spatial_grid(const std::vector<double>& xis) {
    if (xis.size() < 2) throw parameter_error("inversion: spatial grid needs at least 2 points");
    for (std::size_t i = 0; i + 1 < xis.size(); ++i)
        if (!(xis[i] < xis[i + 1]))
            throw parameter_error("inversion: spatial grid must be strictly increasing");
}

}  // namespace detail

/// Regularized Fourier inversion on the grid:
///   f(xi) = (1/2pi) sum_k w_k m(omega_k) exp(-i omega_k xi) psi_k,
/// trapezoid weights w_k, Gaussian mollifier m(omega) = exp(-omega^2/(2R^2))
/// or 1 when no R is given. The imaginary residue must cancel below 1e-10
/// of sup|f| before it is discarded; a violation means the input CF values
/// are not conjugate-symmetric and raises integrity_error.
inline DensityEstimate invert_cf(const CfEstimate& cf, const std::vector<double>& xis,
                                 const TransformOptions& opt = {}) {
    detail::require_spatial_grid(xis);
    if (opt.mollifier_R && !(*opt.mollifier_R > 0.0))
        throw parameter_error("inversion: mollifier R must be positive");
    const auto& om = cf.grid.omegas();
    const std::size_t m = om.size();

    // trapezoid weight times mollifier, folded into the CF values once
    std::vector<complex_t> integrand(m);
    for (std::size_t k = 0; k < m; ++k) {
        double w = (k == 0      ? om[1] - om[0]
                    : k == m - 1 ? om[m - 1] - om[m - 2]
                                 : om[k + 1] - om[k - 1]) *
                   0.5;
        if (opt.mollifier_R) {
            const double r = *opt.mollifier_R;
            w *= std::exp(-om[k] * om[k] / (2.0 * r * r));
        }
        integrand[k] = w * cf.values[k];
    }

    const std::size_t nxi = xis.size();
    std::vector<complex_t> raw(nxi);
    parallel_for(nxi, opt.threads, [&](std::size_t i) {
        const double xi = xis[i];
        complex_t acc(0.0, 0.0);
        for (std::size_t k = 0; k < m; ++k) {
            const double ph = -om[k] * xi;
            acc += integrand[k] * complex_t(std::cos(ph), std::sin(ph));
        }
        raw[i] = acc / (2.0 * M_PI);
    });

    double sup_abs = 0.0, sup_im = 0.0;
    for (const auto& v : raw) {
        sup_abs = std::max(sup_abs, std::abs(v));
        sup_im = std::max(sup_im, std::abs(v.imag()));
    }
    if (sup_im > 1e-10 * sup_abs) {
        std::ostringstream msg;
        msg << "invert_cf: imaginary residue " << sup_im << " exceeds 1e-10 * sup|f| = "
            << 1e-10 * sup_abs << "; the CF estimate is not conjugate-symmetric";
        throw integrity_error(msg.str());
    }

    DensityEstimate est;
    est.xis = xis;
    est.values.resize(nxi);
    for (std::size_t i = 0; i < nxi; ++i) est.values[i] = raw[i].real();
    est.mollifier_R = opt.mollifier_R;
    est.omega_max = cf.grid.omega_max();
    est.imag_residue = sup_abs > 0.0 ? sup_im / sup_abs : 0.0;

    std::vector<double> neg(nxi), misplaced(nxi, 0.0);
    for (std::size_t i = 0; i < nxi; ++i) {
        neg[i] = std::max(0.0, -est.values[i]);
        if (opt.support_nonnegative && xis[i] < 0.0)
            misplaced[i] = std::max(0.0, est.values[i]);
    }
    est.neg_mass = detail::trapezoid(xis, neg) + detail::trapezoid(xis, misplaced);
    est.total_mass = detail::trapezoid(xis, est.values);

    if (opt.clip_negative) {
        for (auto& v : est.values) v = std::max(0.0, v);
        const double mass = detail::trapezoid(xis, est.values);
        if (!(mass > 0.0))
            throw integrity_error("invert_cf: nothing left to renormalize after clipping");
        for (auto& v : est.values) v /= mass;
        est.total_mass = 1.0;
        est.clipped = true;
    }
    return est;
}

/// Spec-signature convenience: R only.
inline DensityEstimate invert_cf(const CfEstimate& cf, const std::vector<double>& xis,
                                 std::optional<double> R) {
    TransformOptions opt;
    opt.mollifier_R = R;
    return invert_cf(cf, xis, opt);
}

/// Variance-mixture transform: recovers the density of the mixing variable
/// V in X = theta V + sqrt(V) Z from samples of X.
inline DensityEstimate variance_mixture_transform(std::span<const double> samples, double theta,
                                                  const FrequencyGrid& grid,
                                                  const std::vector<double>& xis, double R,
                                                  TransformOptions opt = {}) {
    opt.mollifier_R = R;
    opt.support_nonnegative = true;
    const CfEstimate cf =
        empirical_transformed_cf(samples, theta, grid, opt.max_exp_limit, opt.threads);
    return invert_cf(cf, xis, opt);
}

/// Per-lag variance-mixture transform over an increment panel: the
/// time-change decomposition. A failing lag is reported in `failures`
/// without aborting the remaining lags.
struct TimeChangeResult {
    struct LagDiagnostics {
        double min_ess = 0.0;
        double max_exponent = 0.0;
        std::size_t n = 0;
    };
    std::map<double, DensityEstimate> densities;
    std::map<double, LagDiagnostics> diagnostics;
    std::map<double, std::string> failures;
};

inline TimeChangeResult time_change_transform(const IncrementPanel& panel, double theta,
                                              const FrequencyGrid& grid,
                                              const std::vector<double>& xis, double R,
                                              TransformOptions opt = {}) {
    panel.validate();
    opt.mollifier_R = R;
    opt.support_nonnegative = true;
    TimeChangeResult result;
    for (const auto& s : panel.series) {
        try {
            const CfEstimate cf =
                empirical_transformed_cf(s.values, theta, grid, opt.max_exp_limit, opt.threads);
            result.densities[s.lag] = invert_cf(cf, xis, opt);
            result.diagnostics[s.lag] = {min_ess(cf), max_exponent(cf), cf.n};
        } catch (const error& e) {
            result.failures[s.lag] = e.what();
        }
    }
    return result;
}

}  // namespace tct
