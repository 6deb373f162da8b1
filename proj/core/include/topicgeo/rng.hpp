#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace topicgeo::rng {

// splitmix64 finalizer. Used both as the stream generator and to derive
// sub-stream seeds, so every random choice is a pure function of
// (master seed, stage name, integer index) — no iteration-order dependence.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t combine(std::uint64_t a, std::uint64_t b) {
    return mix64(a + 0x9e3779b97f4a7c15ULL * (b + 1));
}

// Independent seed for the index-th unit of work in a named stage.
constexpr std::uint64_t substream(std::uint64_t master, std::string_view stage,
                                  std::uint64_t index) {
    return combine(combine(master, fnv1a(stage)), index);
}

// Deterministic counter-based stream (splitmix64). All samplers below are
// implemented here rather than through <random> distributions, whose output
// is not pinned down by the standard.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a log/pow argument.
    double next_open() { return 1.0 - next_unit(); }

    // Standard normal via Box-Muller; the second value of each pair is cached.
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(next_open()));
        const double t = 2.0 * 3.14159265358979323846 * next_unit();
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    double next_exponential() { return -std::log(next_open()); }

    // Gamma(alpha, 1) via Marsaglia-Tsang; alpha < 1 handled by boosting.
    double next_gamma(double alpha) {
        if (!(alpha > 0.0)) throw std::invalid_argument("gamma shape must be positive");
        if (alpha < 1.0) {
            return next_gamma(alpha + 1.0) * std::pow(next_open(), 1.0 / alpha);
        }
        const double d = alpha - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = 0.0, v = 0.0;
            do {
                x = next_normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = next_open();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // Uniform on {0, ..., n-1}.
    int next_index(int n) {
        const int i = static_cast<int>(next_unit() * static_cast<double>(n));
        return i >= n ? n - 1 : i;
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace topicgeo::rng
