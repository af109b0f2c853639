#pragma once

#include <cmath>
#include <cstdint>

namespace evsim {

// SplitMix64 finalizer. Used both as the step function of the sequential
// generator and as the mixer for stateless counter-based streams.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr double u64_to_unit(std::uint64_t x) noexcept {
    // 53 mantissa bits -> [0, 1)
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Pure function of (seed, stream, counter). Draws are independent of call
// order, so changing one consumer does not perturb any other draw.
inline double counter_uniform(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t counter) noexcept {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ (stream * 0x9e3779b97f4a7c15ULL));
    h = mix64(h ^ counter);
    return u64_to_unit(h);
}

// Derives an independent sub-seed, e.g. per pipeline stage or iteration.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return mix64(mix64(seed) ^ stream);
}

// Small sequential generator with implementation-defined-free draws so that
// outputs are identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // [0, 1)
    double next_unit() noexcept { return u64_to_unit(next_u64()); }

    // [0, n)
    std::uint64_t next_below(std::uint64_t n) noexcept {
        // 53-bit scaling; n is tiny in this project so the bias is nil.
        return static_cast<std::uint64_t>(next_unit() * static_cast<double>(n));
    }

    double uniform(double a, double b) noexcept { return a + (b - a) * next_unit(); }

    // Box-Muller; second value cached. Deterministic given call order.
    double normal(double mean, double stddev) noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1 = next_unit();
        double u2 = next_unit();
        if (u1 < 1e-300) u1 = 1e-300;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.141592653589793238462643 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return mean + stddev * r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace evsim
