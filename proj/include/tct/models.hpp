#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tct/errors.hpp"
#include "tct/rng.hpp"

namespace tct {

using complex_t = std::complex<double>;

/// Gamma subordinator: increment over a span t is Gamma(shape a*t, rate b).
/// Mean a*t/b, so a == b gives the calendar-time normalization E[tau_t] = t.
struct GammaSubordinator {
    double a;  // shape accumulated per unit time
    double b;  // rate
};

/// Inverse-Gaussian subordinator: increment over t is IG with mean
/// delta*t/gamma_p and shape (delta*t)^2. delta == gamma_p gives E[tau_t] = t.
struct InverseGaussianSubordinator {
    double delta;
    double gamma_p;
};

/// Degenerate time change tau_t = rate * t. Not a mixture; provides the
/// exact-Gaussian test channel.
struct DeterministicSubordinator {
    double rate;
};

using SubordinatorSpec =
    std::variant<GammaSubordinator, InverseGaussianSubordinator, DeterministicSubordinator>;

/// Time-changed Brownian motion: X_t = theta * tau_t + W(tau_t).
struct TcbmSpec {
    double theta = 0.0;
    SubordinatorSpec subordinator;
};

inline void validate_spec(const SubordinatorSpec& spec) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GammaSubordinator>) {
                if (!(s.a > 0.0) || !(s.b > 0.0))
                    throw parameter_error("gamma subordinator: a and b must be positive");
            } else if constexpr (std::is_same_v<T, InverseGaussianSubordinator>) {
                if (!(s.delta > 0.0) || !(s.gamma_p > 0.0))
                    throw parameter_error("ig subordinator: delta and gamma_p must be positive");
            } else {
                if (!(s.rate > 0.0))
                    throw parameter_error("deterministic subordinator: rate must be positive");
            }
        },
        spec);
}

inline void validate_spec(const TcbmSpec& spec) {
    if (!std::isfinite(spec.theta)) throw parameter_error("tcbm: theta must be finite");
    validate_spec(spec.subordinator);
}

inline std::string spec_name(const SubordinatorSpec& spec) {
    if (std::holds_alternative<GammaSubordinator>(spec)) return "gamma";
    if (std::holds_alternative<InverseGaussianSubordinator>(spec)) return "ig";
    return "det";
}

/// Observed-process increments grouped by lag. Within a lag the values are
/// treated as i.i.d. draws of X_lag (stationary, independent increments).
struct IncrementPanel {
    struct LagSeries {
        double lag = 0.0;
        std::vector<double> values;
    };
    std::vector<LagSeries> series;  // first-appearance order
    std::string provenance;

    void validate() const {
        if (series.empty()) throw parameter_error("increment panel: no data");
        for (const auto& s : series) {
            if (!(s.lag > 0.0) || !std::isfinite(s.lag))
                throw parameter_error("increment panel: lags must be positive and finite");
            if (s.values.empty())
                throw parameter_error("increment panel: empty value list for a lag");
            for (double v : s.values)
                if (!std::isfinite(v))
                    throw parameter_error("increment panel: non-finite increment value");
        }
    }

    LagSeries& lag_series(double lag) {
        for (auto& s : series)
            if (s.lag == lag) return s;
        series.push_back({lag, {}});
        return series.back();
    }
};

// ------------------------------------------------------------------ sampling

/// n i.i.d. draws of tau_t. Reproducible: the result is a pure function of
/// (spec, t, n, seed).
inline std::vector<double> sample_subordinator_increment(const SubordinatorSpec& spec, double t,
                                                         std::int64_t n, std::uint64_t seed) {
    validate_spec(spec);
    if (!(t > 0.0)) throw parameter_error("sample_subordinator_increment: t must be positive");
    if (n < 1) throw parameter_error("sample_subordinator_increment: n must be at least 1");
    std::vector<double> out(static_cast<std::size_t>(n));
    SplitMix64 rng = substream(seed, 0);
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GammaSubordinator>) {
                for (auto& x : out) x = gamma_variate(rng, s.a * t, s.b);
            } else if constexpr (std::is_same_v<T, InverseGaussianSubordinator>) {
                const double mu = s.delta * t / s.gamma_p;
                const double lambda = s.delta * t * s.delta * t;
                for (auto& x : out) x = inverse_gaussian_variate(rng, mu, lambda);
            } else {
                for (auto& x : out) x = s.rate * t;
            }
        },
        spec);
    return out;
}

/// n i.i.d. draws of X_t = theta*tau + sqrt(tau)*Z, with tau exactly the
/// draws of sample_subordinator_increment(spec.subordinator, t, n, seed).
inline std::vector<double> sample_tcbm_increments(const TcbmSpec& spec, double t, std::int64_t n,
                                                  std::uint64_t seed) {
    validate_spec(spec);
    std::vector<double> taus = sample_subordinator_increment(spec.subordinator, t, n, seed);
    SplitMix64 zrng = substream(seed, 1);
    for (auto& x : taus) {
        const double tau = x;
        x = spec.theta * tau + std::sqrt(tau) * zrng.normal();
    }
    return taus;
}

// --------------------------------------------------------------- transforms

/// E[exp(-s tau_t)] for Re(s) >= 0.
///   Gamma:            (1 + s/b)^(-a t)
///   InverseGaussian:  exp(-delta t (sqrt(gamma_p^2 + 2 s) - gamma_p))
///   Deterministic:    exp(-s rate t)
inline complex_t subordinator_laplace(const SubordinatorSpec& spec, double t, complex_t s) {
    validate_spec(spec);
    if (s.real() < 0.0)
        throw domain_error("subordinator_laplace: Re(s) must be nonnegative");
    return std::visit(
        [&](const auto& sp) -> complex_t {
            using T = std::decay_t<decltype(sp)>;
            if constexpr (std::is_same_v<T, GammaSubordinator>) {
                return std::pow(1.0 + s / sp.b, complex_t(-sp.a * t));
            } else if constexpr (std::is_same_v<T, InverseGaussianSubordinator>) {
                const complex_t root = std::sqrt(sp.gamma_p * sp.gamma_p + 2.0 * s);
                return std::exp(-sp.delta * t * (root - sp.gamma_p));
            } else {
                return std::exp(-s * sp.rate * t);
            }
        },
        spec);
}

/// E[exp(i omega tau_t)], the Laplace transform continued to s = -i omega.
inline complex_t subordinator_cf(const SubordinatorSpec& spec, double t, double omega) {
    return subordinator_laplace(spec, t, complex_t(0.0, -omega));
}

/// Closed-form density of tau_t; zero for xi <= 0. The deterministic spec
/// is a point mass and has no density.
inline double subordinator_density(const SubordinatorSpec& spec, double t, double xi) {
    validate_spec(spec);
    return std::visit(
        [&](const auto& sp) -> double {
            using T = std::decay_t<decltype(sp)>;
            if constexpr (std::is_same_v<T, GammaSubordinator>) {
                if (xi <= 0.0) return 0.0;
                const double shape = sp.a * t;
                return std::exp(shape * std::log(sp.b) + (shape - 1.0) * std::log(xi) -
                                sp.b * xi - std::lgamma(shape));
            } else if constexpr (std::is_same_v<T, InverseGaussianSubordinator>) {
                if (xi <= 0.0) return 0.0;
                const double dt = sp.delta * t;
                const double dev = dt - sp.gamma_p * xi;
                return dt / std::sqrt(2.0 * M_PI) * std::pow(xi, -1.5) *
                       std::exp(-dev * dev / (2.0 * xi));
            } else {
                throw unsupported_error(
                    "subordinator_density: deterministic time change is a point mass");
            }
        },
        spec);
}

/// E[exp(i omega X_t)] = L_tau(omega^2/2 - i theta omega); the forward
/// oracle for the plain empirical CF.
inline complex_t tcbm_cf(const TcbmSpec& spec, double t, double omega) {
    validate_spec(spec);
    return subordinator_laplace(spec.subordinator, t,
                                complex_t(0.5 * omega * omega, -spec.theta * omega));
}

}  // namespace tct
