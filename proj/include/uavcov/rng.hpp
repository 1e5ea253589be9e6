#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace uavcov {

/// Per-caller random stream. Draws are built from raw 64-bit engine output
/// so sequences are identical across standard libraries.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open_low() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Exp(1).
    double exponential() { return -std::log(uniform_open_low()); }

    /// Gamma(shape m, rate m): unit mean Nakagami-m power gain. Exact for
    /// integer shape as a sum of m unit exponentials.
    double unit_mean_gamma(int m) {
        double sum = 0.0;
        for (int i = 0; i < m; ++i) sum += exponential();
        return sum / m;
    }

    /// Derives an independent stream seed for replication `index`.
    static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
        return splitmix64(base ^ splitmix64(index + 0x632be59bd9b4e019ULL));
    }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace uavcov
