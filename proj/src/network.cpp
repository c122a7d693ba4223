#include "blasius/network.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace blasius {

void NetworkConfig::validate() const {
    if (depth == 0) throw std::invalid_argument("network depth must be at least 1");
    if (width == 0) throw std::invalid_argument("network width must be at least 1");
}

std::vector<LayerShape> layer_shapes(const NetworkConfig& cfg) {
    cfg.validate();
    std::vector<LayerShape> shapes;
    shapes.reserve(cfg.depth + 1);
    std::size_t offset = 0;
    std::size_t fan_in = 1;
    for (std::size_t l = 0; l <= cfg.depth; ++l) {
        const std::size_t fan_out = (l == cfg.depth) ? 1 : cfg.width;
        shapes.push_back({fan_in, fan_out, offset});
        offset += shapes.back().size();
        fan_in = fan_out;
    }
    return shapes;
}

std::size_t parameter_count(const NetworkConfig& cfg) {
    const auto shapes = layer_shapes(cfg);
    return shapes.back().offset + shapes.back().size();
}

ParamVector::ParamVector(NetworkConfig cfg, std::vector<double> values)
    : config_(cfg), shapes_(layer_shapes(cfg)), values_(std::move(values)) {
    const std::size_t expected = shapes_.back().offset + shapes_.back().size();
    if (values_.size() != expected) {
        throw std::invalid_argument("parameter count " + std::to_string(values_.size()) +
                                    " does not match network shape (expected " +
                                    std::to_string(expected) + ")");
    }
}

ParamVector ParamVector::zeros(const NetworkConfig& cfg) {
    return ParamVector(cfg, std::vector<double>(parameter_count(cfg), 0.0));
}

std::span<const double> ParamVector::weights(std::size_t layer) const {
    const LayerShape& s = shapes_.at(layer);
    return std::span<const double>(values_).subspan(s.offset, s.weight_count());
}

std::span<const double> ParamVector::biases(std::size_t layer) const {
    const LayerShape& s = shapes_.at(layer);
    return std::span<const double>(values_).subspan(s.offset + s.weight_count(), s.fan_out);
}

ParamVector init_params(const NetworkConfig& cfg) {
    ParamVector p = ParamVector::zeros(cfg);
    std::mt19937_64 rng(cfg.seed);
    auto values = p.values();
    for (const LayerShape& s : p.shapes()) {
        const double bound = std::sqrt(6.0 / static_cast<double>(s.fan_in + s.fan_out));
        std::uniform_real_distribution<double> dist(-bound, bound);
        for (std::size_t k = 0; k < s.weight_count(); ++k) values[s.offset + k] = dist(rng);
    }
    return p;
}

// The batched evaluator in jet_batch.cpp replays exactly this sequence of
// floating-point operations; keep the two in step.
Jet3 forward_jet(const ParamVector& p, double eta) {
    std::vector<Jet3> in{seed(eta)};
    std::vector<Jet3> out;
    const auto shapes = p.shapes();
    for (std::size_t l = 0; l < shapes.size(); ++l) {
        const LayerShape& s = shapes[l];
        const auto w = p.weights(l);
        const auto b = p.biases(l);
        const bool hidden = l + 1 < shapes.size();
        out.assign(s.fan_out, Jet3{});
        for (std::size_t j = 0; j < s.fan_out; ++j) {
            const double* row = w.data() + j * s.fan_in;
            Jet3 z = scale(in[0], row[0]);
            for (std::size_t i = 1; i < s.fan_in; ++i) z = add(z, scale(in[i], row[i]));
            z = add(z, constant(b[j]));
            out[j] = hidden ? tanh_jet(z) : z;
        }
        in.swap(out);
    }
    return in.front();
}

double forward_value(const ParamVector& p, double eta) {
    std::vector<double> in{eta};
    std::vector<double> out;
    const auto shapes = p.shapes();
    for (std::size_t l = 0; l < shapes.size(); ++l) {
        const LayerShape& s = shapes[l];
        const auto w = p.weights(l);
        const auto b = p.biases(l);
        const bool hidden = l + 1 < shapes.size();
        out.assign(s.fan_out, 0.0);
        for (std::size_t j = 0; j < s.fan_out; ++j) {
            const double* row = w.data() + j * s.fan_in;
            double z = in[0] * row[0];
            for (std::size_t i = 1; i < s.fan_in; ++i) z = z + in[i] * row[i];
            z = z + b[j];
            out[j] = hidden ? std::tanh(z) : z;
        }
        in.swap(out);
    }
    return in.front();
}

} // namespace blasius
