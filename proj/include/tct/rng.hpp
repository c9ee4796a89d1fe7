#pragma once

#include <cmath>
#include <cstdint>

#include "tct/errors.hpp"

namespace tct {

namespace detail {
/// SplitMix64 finalizer (Steele, Lea & Flood 2014). Used both as the
/// generator step and to derive independent substreams from a user seed.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace detail

/// Splittable 64-bit generator with explicit seeding. All samplers in the
/// library draw from this type only, so every result is bit-reproducible
/// across platforms for a given seed (std::* distributions are
/// implementation-defined and deliberately avoided).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return detail::mix64(state_);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1); safe as a logarithm argument.
    double uniform_pos() {
        double u;
        do {
            u = uniform01();
        } while (u <= 0.0);
        return u;
    }

    /// Standard normal via Box-Muller (cosine leg only; keeps each draw a
    /// pure function of the stream position).
    double normal() {
        double u1 = uniform_pos();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

private:
    std::uint64_t state_;
};

/// Derive an independent stream for substream `tag` of `seed`.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t tag) {
    return SplitMix64(detail::mix64(seed + 0x9E3779B97F4A7C15ULL * (tag + 1)));
}

/// Gamma(shape, rate) variate, Marsaglia & Tsang (2000) squeeze/rejection.
/// Valid for all shapes: shape < 1 is boosted via Gamma(shape+1) and a
/// U^{1/shape} factor.
inline double gamma_variate(SplitMix64& rng, double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0))
        throw parameter_error("gamma_variate: shape and rate must be positive");
    double boost = 1.0;
    if (shape < 1.0) {
        boost = std::pow(rng.uniform_pos(), 1.0 / shape);
        shape += 1.0;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double z, v;
        do {
            z = rng.normal();
            v = 1.0 + c * z;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_pos();
        if (u < 1.0 - 0.0331 * z * z * z * z) return boost * d * v / rate;
        if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return boost * d * v / rate;
    }
}

/// Inverse-Gaussian(mu, lambda) variate by the multiple-root method of
/// Michael, Schucany & Haas (1976). The smaller root is evaluated in a
/// cancellation-free form.
inline double inverse_gaussian_variate(SplitMix64& rng, double mu, double lambda) {
    if (!(mu > 0.0) || !(lambda > 0.0))
        throw parameter_error("inverse_gaussian_variate: mu and lambda must be positive");
    const double z = rng.normal();
    const double w = mu * z * z;
    if (w == 0.0) return mu;
    const double r = std::sqrt(w * (w + 4.0 * lambda));
    const double x = mu * (r - w) / (r + w);  // = mu + mu w/(2 lambda) - mu sqrt(...)/(2 lambda)
    if (rng.uniform01() <= mu / (mu + x)) return x;
    return mu * mu / x;
}

}  // namespace tct
