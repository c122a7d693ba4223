#pragma once

// Column-batched jet evaluation of the network and its reverse pass.
//
// Activations are stored as (fan x 4n) row-major blocks [v | d1 | d2 | d3],
// one column per evaluation point inside each channel block.

#include "blasius/network.hpp"

#include <Eigen/Dense>

#include <array>
#include <span>
#include <vector>

namespace blasius::detail {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct BatchTrace {
    std::size_t points = 0;
    std::vector<RowMatrix> inputs;  // input of every layer
    std::vector<RowMatrix> pre;     // pre-activations of hidden layers
    std::array<std::vector<double>, 4> out;
};

/// Same floating-point result per column as forward_jet().
BatchTrace forward_batch(const ParamVector& p, std::span<const double> etas);

/// Accumulates d(sum_k out_adj[k] . out[k]) / d(theta) into `grad`.
void backward_batch(const ParamVector& p, const BatchTrace& trace,
                    const std::array<std::vector<double>, 4>& out_adj, std::span<double> grad);

} // namespace blasius::detail
