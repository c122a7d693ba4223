#pragma once

#include "blasius/gradient.hpp"
#include "blasius/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace blasius::support {

/// Parameters drawn uniformly from [-scale, scale]; biases included.
inline ParamVector random_params(const NetworkConfig& cfg, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> v(parameter_count(cfg));
    for (double& x : v) x = u(rng);
    return ParamVector(cfg, std::move(v));
}

inline double rel_err(double got, double want) {
    const double d = std::abs(got - want);
    return want == 0.0 ? d : d / std::abs(want);
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("blasius_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

struct GradCheck {
    std::size_t checked = 0;
    std::size_t failures = 0;
    double worst_rel = 0.0;  // largest |ad - fd| / max(|fd|, floor)
};

/// Central finite differences of loss_total on `coords` randomly chosen
/// coordinates. A coordinate passes when |ad - fd| <= max(tol * |fd|, floor).
inline GradCheck check_gradient(const ParamVector& p, const CollocationGrid& g, std::optional<double> pin,
                                std::size_t coords, std::uint64_t seed, double step = 1e-5, double tol = 1e-5,
                                double floor = 1e-8) {
    const GradResult ad = loss_and_grad(p, g, pin);
    std::vector<std::size_t> idx(p.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(std::min(coords, idx.size()));

    GradCheck out;
    ParamVector q = p;
    for (std::size_t i : idx) {
        const double x = p.values()[i];
        q.values()[i] = x + step;
        const double up = loss_total(q, g, pin).total;
        q.values()[i] = x - step;
        const double down = loss_total(q, g, pin).total;
        q.values()[i] = x;
        const double fd = (up - down) / (2.0 * step);
        const double diff = std::abs(ad.grad[i] - fd);
        out.worst_rel = std::max(out.worst_rel, diff / std::max(std::abs(fd), floor));
        if (diff > std::max(tol * std::abs(fd), floor)) ++out.failures;
        ++out.checked;
    }
    return out;
}

/// Glorot initialization with every weight and bias nudged by up to +-0.1.
inline ParamVector perturbed_init(const NetworkConfig& cfg, std::uint64_t noise_seed) {
    ParamVector p = init_params(cfg);
    std::mt19937_64 rng(noise_seed);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    for (double& x : p.values()) x += u(rng);
    return p;
}

} // namespace blasius::support
