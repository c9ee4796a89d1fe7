#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "tct/contour.hpp"
#include "tct/errors.hpp"
#include "tct/models.hpp"
#include "tct/parallel.hpp"

namespace tct {

/// Complex CF values on a frequency grid with per-point estimator
/// diagnostics. `ess` is the effective sample size of the weights
/// exp(Re(u) x_j); it collapses towards 1 when a handful of extreme
/// samples dominate the estimate. `max_exponent` is max_j Re(u) x_j.
struct CfEstimate {
    FrequencyGrid grid;
    std::vector<complex_t> values;
    std::vector<double> ess;
    std::vector<double> max_exponent;
    std::size_t n = 0;  // sample count; 0 for the analytic path
};

namespace detail {

struct KahanSum {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace detail

/// Empirical transformed CF: for each grid omega, with u = contour_map,
///   value = (1/n) sum_j exp(Re(u) x_j) (cos(Im(u) x_j) + i sin(Im(u) x_j)).
/// The omega < 0 half is the exact conjugate mirror of the omega > 0 half,
/// which is the analytic identity for real samples and makes conjugate
/// symmetry hold to the bit. Throws cf_overflow_error if any grid point
/// needs a weight exponent above max_exp_limit.
inline CfEstimate empirical_transformed_cf(std::span<const double> samples, double theta,
                                           const FrequencyGrid& grid,
                                           double max_exp_limit = 600.0,
                                           int threads = 1) {
    if (samples.empty()) throw parameter_error("empirical_transformed_cf: no samples");
    for (double x : samples)
        if (!std::isfinite(x))
            throw parameter_error("empirical_transformed_cf: non-finite sample");
    if (!(max_exp_limit > 0.0))
        throw parameter_error("empirical_transformed_cf: max_exp_limit must be positive");

    const std::size_t m = grid.size();
    const std::size_t mid = grid.center();
    const std::size_t nsamp = samples.size();
    const double xmin = *std::min_element(samples.begin(), samples.end());
    const double xmax = *std::max_element(samples.begin(), samples.end());

    // Fail fast: the exponent bound is a function of Re(u) and the sample
    // extremes only. Scan outward so the smallest offending |omega| is named.
    for (std::size_t k = mid; k < m; ++k) {
        const double re_u = contour_map(theta, grid[k]).real();
        const double worst = std::max(re_u * xmax, re_u * xmin);
        if (worst > max_exp_limit) {
            std::ostringstream msg;
            msg << "empirical_transformed_cf: weight exponent " << worst << " exceeds limit "
                << max_exp_limit << " at omega = " << grid[k]
                << "; the frequency grid extends beyond what the sample tails support";
            throw cf_overflow_error(msg.str(), grid[k]);
        }
    }

    CfEstimate est{grid, std::vector<complex_t>(m), std::vector<double>(m),
                   std::vector<double>(m), nsamp};

    parallel_for(m - mid, threads, [&](std::size_t idx) {
        const std::size_t k = mid + idx;
        const complex_t u = contour_map(theta, grid[k]);
        const double re_u = u.real(), im_u = u.imag();
        detail::KahanSum re_acc, im_acc;
        double wsum = 0.0, w2sum = 0.0, maxexp = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < nsamp; ++j) {
            const double e = re_u * samples[j];
            maxexp = std::max(maxexp, e);
            const double w = std::exp(e);
            const double ph = im_u * samples[j];
            re_acc.add(w * std::cos(ph));
            im_acc.add(w * std::sin(ph));
            wsum += w;
            w2sum += w * w;
        }
        const double dn = static_cast<double>(nsamp);
        est.values[k] = complex_t(re_acc.sum / dn, im_acc.sum / dn);
        est.ess[k] = wsum * wsum / w2sum;
        est.max_exponent[k] = maxexp;
        if (k != mid) {
            est.values[m - 1 - k] = std::conj(est.values[k]);
            est.ess[m - 1 - k] = est.ess[k];
            est.max_exponent[m - 1 - k] = est.max_exponent[k];
        }
    });
    return est;
}

/// Exact transformed CF: psi_tau(omega) per grid point, the
/// infinite-sample limit of the empirical path. ess is reported as +inf.
inline CfEstimate analytic_transformed_cf(const TcbmSpec& spec, double t,
                                          const FrequencyGrid& grid) {
    validate_spec(spec);
    const std::size_t m = grid.size();
    CfEstimate est{grid, std::vector<complex_t>(m),
                   std::vector<double>(m, std::numeric_limits<double>::infinity()),
                   std::vector<double>(m, 0.0), 0};
    const std::size_t mid = grid.center();
    for (std::size_t k = mid; k < m; ++k) {
        est.values[k] = subordinator_cf(spec.subordinator, t, grid[k]);
        if (k != mid) est.values[m - 1 - k] = std::conj(est.values[k]);
    }
    return est;
}

/// Smallest ess on the grid; the CLI warns when this drops below 0.01 n.
inline double min_ess(const CfEstimate& est) {
    double m = std::numeric_limits<double>::infinity();
    for (double e : est.ess) m = std::min(m, e);
    return m;
}

inline double max_exponent(const CfEstimate& est) {
    double m = -std::numeric_limits<double>::infinity();
    for (double e : est.max_exponent) m = std::max(m, e);
    return m;
}

}  // namespace tct
