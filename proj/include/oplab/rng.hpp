#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "oplab/matrix.hpp"

namespace oplab {

/// Seeded generator producing standard complex Gaussians through an
/// explicit Box-Muller transform, so streams are reproducible independent
/// of the standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    double uniform() {
        // 53-bit mantissa uniform in (0,1]
        const std::uint64_t bits = engine_();
        return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
    }

    double gaussian() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    Complex complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return Complex(re, im);
    }

    CVec complex_gaussian_vector(Eigen::Index n) {
        CVec v(n);
        for (Eigen::Index k = 0; k < n; ++k) v(k) = complex_gaussian();
        return v;
    }

    std::uint64_t next_seed() { return engine_(); }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

} // namespace oplab
