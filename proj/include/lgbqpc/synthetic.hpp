#pragma once

#include "lgbqpc/dataset.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace lgbqpc::synthetic {

/// Portable random stream: the raw 64-bit engine output is specified by the standard,
/// the distribution objects are not, so the transforms are done here.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_{seed} {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u = 0.0;
        while (u <= 0.0) u = uniform();
        const double v = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        spare_ = r * std::sin(2.0 * std::numbers::pi * v);
        has_spare_ = true;
        return r * std::cos(2.0 * std::numbers::pi * v);
    }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    double          spare_{0.0};
    bool            has_spare_{false};
};

/// Two interleaved Archimedean spiral arms (r = t, arm 2 rotated by pi), points evenly
/// spaced in t over [t_begin, t_end] with isotropic Gaussian jitter.
inline Dataset two_spirals(std::size_t per_arm, double noise, std::uint64_t seed, double t_begin = std::numbers::pi / 2,
                           double t_end = 3.5 * std::numbers::pi) {
    Rng rng{seed};
    std::vector<double> xy;
    std::vector<int> labels;
    for (int arm = 0; arm < 2; ++arm)
        for (std::size_t i = 0; i < per_arm; ++i) {
            const double t = t_begin + (t_end - t_begin) * static_cast<double>(i) / static_cast<double>(per_arm - 1);
            const double a = t + arm * std::numbers::pi;
            xy.push_back(t * std::cos(a) + noise * rng.normal());
            xy.push_back(t * std::sin(a) + noise * rng.normal());
            labels.push_back(arm + 1);
        }
    return Dataset{std::move(xy), 2, std::move(labels)};
}

/// Two interleaving half circles.
inline Dataset two_moons(std::size_t per_moon, double noise, std::uint64_t seed) {
    Rng rng{seed};
    std::vector<double> xy;
    std::vector<int> labels;
    for (int moon = 0; moon < 2; ++moon)
        for (std::size_t i = 0; i < per_moon; ++i) {
            const double t = std::numbers::pi * static_cast<double>(i) / static_cast<double>(per_moon - 1);
            const double x = moon == 0 ? std::cos(t) : 1.0 - std::cos(t);
            const double y = moon == 0 ? std::sin(t) : 0.5 - std::sin(t);
            xy.push_back(x + noise * rng.normal());
            xy.push_back(y + noise * rng.normal());
            labels.push_back(moon + 1);
        }
    return Dataset{std::move(xy), 2, std::move(labels)};
}

/// Isotropic Gaussian blobs with centers drawn uniformly in [-spread, spread]^m.
inline Dataset gaussian_blobs(std::size_t n, std::size_t m, std::size_t blobs, double spread, double sd,
                              std::uint64_t seed) {
    Rng rng{seed};
    std::vector<double> centers(blobs * m);
    for (auto& c : centers) c = rng.uniform(-spread, spread);
    std::vector<double> xy;
    std::vector<int> labels;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t b = i % blobs;
        for (std::size_t j = 0; j < m; ++j) xy.push_back(centers[b * m + j] + sd * rng.normal());
        labels.push_back(static_cast<int>(b) + 1);
    }
    return Dataset{std::move(xy), m, std::move(labels)};
}

}  // namespace lgbqpc::synthetic
