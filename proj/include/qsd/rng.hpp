#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace qsd {

/// mt19937_64 with explicit uniform/normal maps, so a seed reproduces the
/// same bits regardless of the standard library's distribution code.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double t = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

    bool coin() { return (engine_() >> 63) != 0; }

    static constexpr const char* algorithm() { return "mt19937_64"; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qsd
