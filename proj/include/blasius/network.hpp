#pragma once

#include "blasius/jet.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace blasius {

/// Fully connected tanh network with one input (eta) and one output (f).
struct NetworkConfig {
    std::size_t depth = 2;  // hidden layers
    std::size_t width = 100;
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument on zero depth or width.
    void validate() const;

    friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

/// Affine layer shape and its offset into the flat parameter vector.
/// Weights are stored row-major (fan_out x fan_in), followed by fan_out biases.
struct LayerShape {
    std::size_t fan_in = 0;
    std::size_t fan_out = 0;
    std::size_t offset = 0;

    std::size_t weight_count() const noexcept { return fan_in * fan_out; }
    std::size_t size() const noexcept { return weight_count() + fan_out; }

    friend bool operator==(const LayerShape&, const LayerShape&) = default;
};

std::vector<LayerShape> layer_shapes(const NetworkConfig& cfg);
std::size_t parameter_count(const NetworkConfig& cfg);

/// All weights and biases of a network, flattened layer by layer.
class ParamVector {
public:
    /// Throws std::invalid_argument when `values` does not match the layer shapes of `cfg`.
    ParamVector(NetworkConfig cfg, std::vector<double> values);

    static ParamVector zeros(const NetworkConfig& cfg);

    const NetworkConfig& config() const noexcept { return config_; }
    std::span<const LayerShape> shapes() const noexcept { return shapes_; }
    std::size_t size() const noexcept { return values_.size(); }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    std::span<const double> weights(std::size_t layer) const;
    std::span<const double> biases(std::size_t layer) const;

    friend bool operator==(const ParamVector&, const ParamVector&) = default;

private:
    NetworkConfig config_;
    std::vector<LayerShape> shapes_;
    std::vector<double> values_;
};

/// Glorot-uniform weights, zero biases. Bit-identical for equal configs.
ParamVector init_params(const NetworkConfig& cfg);

/// f and its first three eta-derivatives at `eta`.
Jet3 forward_jet(const ParamVector& p, double eta);

/// Plain scalar forward pass; equals forward_jet(p, eta).v exactly.
double forward_value(const ParamVector& p, double eta);

} // namespace blasius
