#include "blasius/network.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace blasius;

namespace {

// Plain scalar forward pass written against the documented layout: per layer,
// a row-major fan_out x fan_in weight block followed by fan_out biases.
double reference_forward(const NetworkConfig& cfg, std::span<const double> theta, double eta) {
    std::vector<double> a{eta};
    std::size_t pos = 0;
    for (std::size_t l = 0; l <= cfg.depth; ++l) {
        const std::size_t fan_in = a.size();
        const std::size_t fan_out = l == cfg.depth ? 1 : cfg.width;
        std::vector<double> z(fan_out);
        for (std::size_t j = 0; j < fan_out; ++j) {
            double s = a[0] * theta[pos + j * fan_in];
            for (std::size_t i = 1; i < fan_in; ++i) s = s + a[i] * theta[pos + j * fan_in + i];
            z[j] = s + theta[pos + fan_out * fan_in + j];
        }
        pos += fan_out * fan_in + fan_out;
        if (l < cfg.depth) {
            for (double& v : z) v = std::tanh(v);
        }
        a = std::move(z);
    }
    EXPECT_EQ(pos, theta.size());
    return a[0];
}

double rel_floor(double got, double want, double floor) {
    return std::abs(got - want) / std::max(std::abs(want), floor);
}

} // namespace

TEST(NetworkShape, ParameterCountDefault) {
    EXPECT_EQ(parameter_count({2, 100, 0}), 10401u);
}

TEST(NetworkShape, ParameterCountFormula) {
    for (std::size_t depth = 1; depth <= 6; ++depth) {
        for (std::size_t width : {1u, 2u, 7u, 50u, 90u}) {
            const std::size_t expected = (width + width) + (depth - 1) * (width * width + width) + (width + 1);
            EXPECT_EQ(parameter_count({depth, width, 0}), expected) << depth << "x" << width;
            const auto shapes = layer_shapes({depth, width, 0});
            ASSERT_EQ(shapes.size(), depth + 1);
            EXPECT_EQ(shapes.front().fan_in, 1u);
            EXPECT_EQ(shapes.back().fan_out, 1u);
            for (std::size_t l = 1; l < shapes.size(); ++l) {
                EXPECT_EQ(shapes[l].fan_in, shapes[l - 1].fan_out);
                EXPECT_EQ(shapes[l].offset, shapes[l - 1].offset + shapes[l - 1].size());
            }
        }
    }
}

TEST(NetworkShape, ZeroDepthOrWidthRejected) {
    EXPECT_THROW(init_params({0, 10, 0}), std::invalid_argument);
    EXPECT_THROW(init_params({2, 0, 0}), std::invalid_argument);
    EXPECT_THROW(parameter_count({0, 0, 0}), std::invalid_argument);
}

TEST(NetworkShape, MismatchedValuesRejected) {
    EXPECT_THROW(ParamVector({2, 10, 0}, std::vector<double>(5)), std::invalid_argument);
    EXPECT_NO_THROW(ParamVector({2, 10, 0}, std::vector<double>(parameter_count({2, 10, 0}))));
}

TEST(NetworkInit, DeterministicForSeed) {
    EXPECT_EQ(init_params({2, 100, 17}), init_params({2, 100, 17}));
    EXPECT_NE(init_params({2, 100, 17}).values()[0], init_params({2, 100, 18}).values()[0]);
}

TEST(NetworkInit, GlorotBoundsAndZeroBiases) {
    const ParamVector p = init_params({3, 100, 5});
    for (std::size_t l = 0; l < p.shapes().size(); ++l) {
        const LayerShape& s = p.shapes()[l];
        const double bound = std::sqrt(6.0 / static_cast<double>(s.fan_in + s.fan_out));
        double max_abs = 0.0;
        for (double w : p.weights(l)) max_abs = std::max(max_abs, std::abs(w));
        EXPECT_LE(max_abs, bound);
        EXPECT_GT(max_abs, 0.8 * bound) << "weights should fill the interval";
        for (double b : p.biases(l)) EXPECT_EQ(b, 0.0);
    }
    const double interior = std::sqrt(6.0 / 200.0);
    for (double w : p.weights(1)) EXPECT_LE(std::abs(w), interior);
}

TEST(NetworkForward, ZeroParametersGiveZeroJet) {
    const ParamVector p = ParamVector::zeros({2, 100, 0});
    for (double eta : {-5.69, 0.0, 3.3, 8.0}) {
        EXPECT_EQ(forward_jet(p, eta), (Jet3{0, 0, 0, 0}));
        EXPECT_EQ(forward_value(p, eta), 0.0);
    }
}

TEST(NetworkForward, ValueMatchesScalarReference) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> at(-6.0, 8.0);
    std::uniform_int_distribution<int> dim(1, 40), deep(1, 4);
    for (int probe = 0; probe < 100; ++probe) {
        const NetworkConfig cfg{static_cast<std::size_t>(deep(rng)), static_cast<std::size_t>(dim(rng)), 0};
        const ParamVector p = support::random_params(cfg, 1000 + probe);
        const double eta = at(rng);
        const double ref = reference_forward(cfg, p.values(), eta);
        EXPECT_EQ(forward_jet(p, eta).v, forward_value(p, eta));
        EXPECT_NEAR(forward_value(p, eta), ref, 1e-13 * std::max(1.0, std::abs(ref)));
    }
}

TEST(NetworkForward, PureAndOrderIndependent) {
    const ParamVector p = init_params({2, 100, 3});
    const Jet3 a1 = forward_jet(p, 1.5);
    const Jet3 b1 = forward_jet(p, -2.0);
    const Jet3 b2 = forward_jet(p, -2.0);
    const Jet3 a2 = forward_jet(p, 1.5);
    EXPECT_EQ(a1, a2);
    EXPECT_EQ(b1, b2);
}

TEST(NetworkForward, Continuity) {
    const ParamVector p = init_params({2, 100, 9});
    for (double eta = -5.0; eta <= 8.0; eta += 0.5) {
        EXPECT_LE(std::abs(forward_value(p, eta + 1e-9) - forward_value(p, eta)), 1e-6);
    }
}

TEST(NetworkForward, DerivativesMatchFiniteDifferences) {
    const auto check = [](const ParamVector& p) {
        const auto f = [&](double x) { return forward_value(p, x); };
        for (double eta : {-3.1, -0.7, 0.45, 2.2, 5.9}) {
            const Jet3 j = forward_jet(p, eta);
            const double h1 = 1e-5, h2 = 1e-4, h3 = 1e-2;
            const double d1 = (f(eta + h1) - f(eta - h1)) / (2 * h1);
            const double d2 = (f(eta + h2) - 2 * f(eta) + f(eta - h2)) / (h2 * h2);
            const double d3 = (f(eta + 2 * h3) - 2 * f(eta + h3) + 2 * f(eta - h3) - f(eta - 2 * h3)) / (2 * h3 * h3 * h3);
            EXPECT_LE(rel_floor(j.d1, d1, 1e-2), 1e-6) << eta;
            EXPECT_LE(rel_floor(j.d2, d2, 1e-2), 1e-4) << eta;
            EXPECT_LE(rel_floor(j.d3, d3, 1e-2), 1e-2) << eta;
        }
    };
    for (std::uint64_t seed : {1u, 2u, 3u}) check(init_params({2, 100, seed}));
    check(support::random_params({3, 20, 0}, 77, 0.8));
}
