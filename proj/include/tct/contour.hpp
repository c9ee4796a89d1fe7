#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "tct/errors.hpp"
#include "tct/models.hpp"

namespace tct {

/// u(omega) = -theta + sqrt(theta^2 + 2 i omega), principal square root
/// (nonnegative real part, branch cut on the negative real axis). The
/// radicand touches the cut only at theta = omega = 0, where the root is 0.
/// Under this branch Re(u) >= |theta| - theta >= 0 for every real theta.
inline complex_t contour_map(double theta, double omega) {
    return -theta + std::sqrt(complex_t(theta * theta, 2.0 * omega));
}

/// Analytic continuation of the standard normal CF: exp(-z^2/2), entire.
inline complex_t extended_gaussian_cf(complex_t z) { return std::exp(-0.5 * z * z); }

/// z = -i * u(omega): feeding z into an extended CF Psi_X with the
/// convention E[exp(i z X)] yields E[exp(u X)].
inline complex_t cf_argument_map(double theta, double omega) {
    return complex_t(0.0, -1.0) * contour_map(theta, omega);
}

/// One evaluated point of the contour.
struct ContourPoint {
    double omega = 0.0;
    complex_t u;
};

/// Strictly increasing frequency grid, symmetric about 0 and containing 0.
/// Mirror pairs are exact: omega[i] == -omega[size()-1-i] bitwise.
class FrequencyGrid {
public:
    explicit FrequencyGrid(std::vector<double> omegas) : omegas_(std::move(omegas)) {
        const std::size_t m = omegas_.size();
        if (m < 3 || m % 2 == 0)
            throw parameter_error("frequency grid: need an odd point count >= 3");
        for (std::size_t i = 0; i + 1 < m; ++i)
            if (!(omegas_[i] < omegas_[i + 1]))
                throw parameter_error("frequency grid: omegas must be strictly increasing");
        if (omegas_[m / 2] != 0.0)
            throw parameter_error("frequency grid: grid must contain omega = 0 at the center");
        for (std::size_t i = 0; i < m / 2; ++i)
            if (omegas_[i] != -omegas_[m - 1 - i])
                throw parameter_error("frequency grid: grid must be symmetric about 0");
    }

    /// Uniform grid on [-omega_max, omega_max] with n points (n odd).
    static FrequencyGrid uniform(double omega_max, std::size_t n) {
        if (!(omega_max > 0.0)) throw parameter_error("frequency grid: omega_max must be positive");
        if (n < 3 || n % 2 == 0)
            throw parameter_error("frequency grid: point count must be odd and >= 3");
        const std::ptrdiff_t mid = static_cast<std::ptrdiff_t>(n / 2);
        const double step = omega_max / static_cast<double>(mid);
        std::vector<double> om(n);
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
            om[static_cast<std::size_t>(i)] = static_cast<double>(i - mid) * step;
        return FrequencyGrid(std::move(om));
    }

    const std::vector<double>& omegas() const { return omegas_; }
    std::size_t size() const { return omegas_.size(); }
    std::size_t center() const { return omegas_.size() / 2; }
    double operator[](std::size_t i) const { return omegas_[i]; }
    double omega_max() const { return omegas_.back(); }

private:
    std::vector<double> omegas_;
};

}  // namespace tct
