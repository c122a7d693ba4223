#include "jet_batch.hpp"

namespace blasius::detail {

namespace {

using ConstMap = Eigen::Map<const RowMatrix>;
using Map = Eigen::Map<RowMatrix>;

} // namespace

BatchTrace forward_batch(const ParamVector& p, std::span<const double> etas) {
    const std::size_t n = etas.size();
    const std::size_t cols = 4 * n;
    const auto shapes = p.shapes();

    BatchTrace trace;
    trace.points = n;
    trace.inputs.reserve(shapes.size());
    trace.pre.reserve(shapes.size() - 1);

    RowMatrix seedm = RowMatrix::Zero(1, static_cast<Eigen::Index>(cols));
    for (std::size_t c = 0; c < n; ++c) {
        seedm(0, c) = etas[c];
        seedm(0, n + c) = 1.0;
    }
    trace.inputs.push_back(std::move(seedm));

    for (std::size_t l = 0; l < shapes.size(); ++l) {
        const LayerShape& s = shapes[l];
        const double* w = p.weights(l).data();
        const double* b = p.biases(l).data();
        const RowMatrix& a = trace.inputs[l];

        RowMatrix z(static_cast<Eigen::Index>(s.fan_out), static_cast<Eigen::Index>(cols));
        for (std::size_t j = 0; j < s.fan_out; ++j) {
            double* zr = z.row(static_cast<Eigen::Index>(j)).data();
            const double* row = w + j * s.fan_in;
            const double* a0 = a.row(0).data();
            for (std::size_t c = 0; c < cols; ++c) zr[c] = a0[c] * row[0];
            for (std::size_t i = 1; i < s.fan_in; ++i) {
                const double wi = row[i];
                const double* ai = a.row(static_cast<Eigen::Index>(i)).data();
                for (std::size_t c = 0; c < cols; ++c) zr[c] = zr[c] + ai[c] * wi;
            }
            for (std::size_t c = 0; c < n; ++c) zr[c] = zr[c] + b[j];
            for (std::size_t c = n; c < cols; ++c) zr[c] = zr[c] + 0.0;
        }

        if (l + 1 == shapes.size()) {
            for (std::size_t k = 0; k < 4; ++k) {
                trace.out[k].assign(z.data() + k * n, z.data() + (k + 1) * n);
            }
            break;
        }

        RowMatrix y(z.rows(), z.cols());
        for (Eigen::Index j = 0; j < z.rows(); ++j) {
            const double* zr = z.row(j).data();
            double* yr = y.row(j).data();
            for (std::size_t c = 0; c < n; ++c) {
                const Jet3 t = tanh_jet({zr[c], zr[n + c], zr[2 * n + c], zr[3 * n + c]});
                yr[c] = t.v;
                yr[n + c] = t.d1;
                yr[2 * n + c] = t.d2;
                yr[3 * n + c] = t.d3;
            }
        }
        trace.pre.push_back(std::move(z));
        trace.inputs.push_back(std::move(y));
    }
    return trace;
}

void backward_batch(const ParamVector& p, const BatchTrace& trace,
                    const std::array<std::vector<double>, 4>& out_adj, std::span<double> grad) {
    const std::size_t n = trace.points;
    const auto cols = static_cast<Eigen::Index>(4 * n);
    const auto shapes = p.shapes();

    RowMatrix zbar(1, cols);
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t c = 0; c < n; ++c) zbar(0, static_cast<Eigen::Index>(k * n + c)) = out_adj[k][c];
    }

    for (std::size_t l = shapes.size(); l-- > 0;) {
        const LayerShape& s = shapes[l];
        const auto fan_in = static_cast<Eigen::Index>(s.fan_in);
        const auto fan_out = static_cast<Eigen::Index>(s.fan_out);

        if (l + 1 < shapes.size()) {
            // zbar currently holds the adjoint of this layer's tanh output.
            const RowMatrix& z = trace.pre[l];
            for (Eigen::Index j = 0; j < fan_out; ++j) {
                const double* zr = z.row(j).data();
                double* br = zbar.row(j).data();
                for (std::size_t c = 0; c < n; ++c) {
                    const TanhDerivatives g = tanh_derivatives(zr[c]);
                    const double z1 = zr[n + c];
                    const double z2 = zr[2 * n + c];
                    const double z3 = zr[3 * n + c];
                    const double y0 = br[c];
                    const double y1 = br[n + c];
                    const double y2 = br[2 * n + c];
                    const double y3 = br[3 * n + c];
                    br[c] = y0 * g.g1 + g.g2 * (y1 * z1 + y2 * z2 + y3 * z3) +
                            g.g3 * (y2 * z1 * z1 + 3.0 * y3 * z1 * z2) + g.g4 * y3 * z1 * z1 * z1;
                    br[n + c] = y1 * g.g1 + 2.0 * y2 * g.g2 * z1 +
                                y3 * (3.0 * g.g3 * z1 * z1 + 3.0 * g.g2 * z2);
                    br[2 * n + c] = y2 * g.g1 + 3.0 * y3 * g.g2 * z1;
                    br[3 * n + c] = y3 * g.g1;
                }
            }
        }

        Map gw(grad.data() + s.offset, fan_out, fan_in);
        gw.noalias() += zbar * trace.inputs[l].transpose();
        double* gb = grad.data() + s.offset + s.weight_count();
        for (Eigen::Index j = 0; j < fan_out; ++j) {
            const double* br = zbar.row(j).data();
            double acc = 0.0;
            for (std::size_t c = 0; c < n; ++c) acc += br[c];
            gb[j] += acc;
        }

        if (l > 0) {
            ConstMap w(p.weights(l).data(), fan_out, fan_in);
            RowMatrix prev = w.transpose() * zbar;
            zbar = std::move(prev);
        }
    }
}

} // namespace blasius::detail
