#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace infragsp {

/// Reproducible random source. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; uniforms and Gaussians are derived here
/// rather than through <random> distributions, whose algorithms are
/// implementation-defined.
class Rng {
public:
    static constexpr std::string_view algorithm =
        "mt19937_64 seeded by splitmix64(seed, stream); uniform = top 53 bits; normal = Box-Muller";

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(mix(seed, stream)) {}

    /// Independent generator for substream `index` of `seed` (e.g. one per trial).
    static Rng substream(std::uint64_t seed, std::uint64_t index) { return Rng(seed, index + 1); }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1].
    double uniform_open_low() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform_open_low();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// log-uniform in [lo, hi], lo > 0.
    double log_uniform(double lo, double hi) {
        double a = std::log(lo), b = std::log(hi);
        return std::exp(a + (b - a) * uniform());
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& state) {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t s = seed;
        std::uint64_t a = splitmix64(s);
        std::uint64_t t = stream ^ a;
        return splitmix64(t);
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace infragsp
