#include "blasius/analysis.hpp"
#include "blasius/gradient.hpp"
#include "blasius/io.hpp"
#include "blasius/optim.hpp"
#include "blasius/shooting.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <algorithm>

namespace py = pybind11;
using namespace blasius;

namespace {

py::array_t<double> to_array(std::span<const double> v) {
    py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

py::dict table_dict(const SolutionTable& t) {
    const std::size_t n = t.size();
    py::array_t<double> eta(n), f(n), fp(n), fpp(n), res(n);
    for (std::size_t i = 0; i < n; ++i) {
        const SolutionRow& r = t.rows[i];
        eta.mutable_at(i) = r.eta;
        f.mutable_at(i) = r.f;
        fp.mutable_at(i) = r.fp;
        fpp.mutable_at(i) = r.fpp;
        res.mutable_at(i) = r.residual;
    }
    py::dict d;
    d["eta"] = eta;
    d["f"] = f;
    d["fp"] = fp;
    d["fpp"] = fpp;
    d["residual"] = res;
    return d;
}

py::dict loss_dict(const LossBreakdown& l) {
    py::dict d;
    d["ode"] = l.ode;
    d["init"] = l.init;
    d["boundary"] = l.boundary;
    d["pin"] = l.pin;
    d["total"] = l.total;
    return d;
}

} // namespace

PYBIND11_MODULE(_blasius, m) {
    m.doc() = "Blasius boundary-layer PINN solver";

    py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);
    py::register_exception<OptimizerError>(m, "OptimizerError", PyExc_ArithmeticError);
    py::register_exception<ShootingDivergence>(m, "ShootingDivergence", PyExc_ArithmeticError);

    py::class_<NetworkConfig>(m, "NetworkConfig")
        .def(py::init([](std::size_t depth, std::size_t width, std::uint64_t seed) {
                 NetworkConfig c{depth, width, seed};
                 c.validate();
                 return c;
             }),
             py::arg("depth") = 2, py::arg("width") = 100, py::arg("seed") = 0)
        .def_readonly("depth", &NetworkConfig::depth)
        .def_readonly("width", &NetworkConfig::width)
        .def_readonly("seed", &NetworkConfig::seed)
        .def("__eq__", [](const NetworkConfig& a, const NetworkConfig& b) { return a == b; })
        .def("__repr__", [](const NetworkConfig& c) {
            return "NetworkConfig(depth=" + std::to_string(c.depth) + ", width=" + std::to_string(c.width) +
                   ", seed=" + std::to_string(c.seed) + ")";
        });

    py::class_<ParamVector>(m, "ParamVector")
        .def(py::init([](const NetworkConfig& cfg, const std::vector<double>& v) { return ParamVector(cfg, v); }),
             py::arg("config"), py::arg("values"))
        .def_property_readonly("config", &ParamVector::config)
        .def_property_readonly("values", [](const ParamVector& p) { return to_array(p.values()); })
        .def("__len__", &ParamVector::size)
        .def("__eq__", [](const ParamVector& a, const ParamVector& b) { return a == b; });

    m.def("parameter_count", &parameter_count, py::arg("config"));
    m.def("init_params", &init_params, py::arg("config"));

    m.def(
        "forward_jet",
        [](const ParamVector& p, double eta) {
            const Jet3 j = forward_jet(p, eta);
            return py::make_tuple(j.v, j.d1, j.d2, j.d3);
        },
        py::arg("params"), py::arg("eta"), "(f, f', f'', f''') at eta.");

    m.def(
        "loss_total",
        [](const ParamVector& p, double eta0, double eta_m, std::size_t points, std::optional<double> pin) {
            return loss_dict(loss_total(p, CollocationGrid::uniform(eta0, eta_m, points), pin));
        },
        py::arg("params"), py::arg("eta0") = 0.0, py::arg("eta_m") = 8.0, py::arg("points") = 100,
        py::arg("pin") = py::none());

    m.def(
        "loss_and_grad",
        [](const ParamVector& p, double eta0, double eta_m, std::size_t points, std::optional<double> pin) {
            const GradResult r = loss_and_grad(p, CollocationGrid::uniform(eta0, eta_m, points), pin);
            return py::make_tuple(loss_dict(r.loss), to_array(r.grad));
        },
        py::arg("params"), py::arg("eta0") = 0.0, py::arg("eta_m") = 8.0, py::arg("points") = 100,
        py::arg("pin") = py::none());

    m.def(
        "train",
        [](const NetworkConfig& net, std::size_t adam_steps, std::size_t lbfgs_iters, std::size_t points) {
            AdamConfig adam;
            adam.max_steps = adam_steps;
            LbfgsConfig lbfgs;
            lbfgs.max_iters = lbfgs_iters;
            std::optional<TrainingResult> r;
            {
                py::gil_scoped_release release;
                r.emplace(train(net, adam, lbfgs, CollocationGrid::uniform(0.0, 8.0, points)));
            }
            return py::make_tuple(std::move(r->params), loss_dict(r->report.final_loss));
        },
        py::arg("config") = NetworkConfig{}, py::arg("adam_steps") = AdamConfig{}.max_steps,
        py::arg("lbfgs_iters") = LbfgsConfig{}.max_iters, py::arg("points") = 100,
        "Adam then L-BFGS on [0, 8]; returns (params, loss).");

    m.def(
        "shoot",
        [](double h, double eta_max) {
            ShootingOptions o;
            o.h = h;
            o.eta_max = eta_max;
            const ShootingResult r = shoot(o);
            py::dict d = table_dict(r.table);
            d["s_star"] = r.s_star;
            d["iterations"] = r.iterations;
            return d;
        },
        py::arg("h") = 1e-4, py::arg("eta_max") = 8.0);

    m.def("backward_blowup", &backward_blowup, py::arg("s"), py::arg("h"));

    m.def(
        "tabulate",
        [](const ParamVector& p, double eta0, double eta1, std::size_t n) { return table_dict(tabulate(p, eta0, eta1, n)); },
        py::arg("params"), py::arg("eta0") = 0.0, py::arg("eta1") = 8.0, py::arg("n") = 801);

    m.def(
        "compare",
        [](const ParamVector& p, double domain_end) {
            const ComparisonReport c = compare(p, shoot().table, domain_end);
            py::dict d;
            d["max_abs_err_f"] = c.max_abs_err_f;
            d["max_abs_err_fp"] = c.max_abs_err_fp;
            d["max_abs_err_fpp"] = c.max_abs_err_fpp;
            d["rms_err_f"] = c.rms_err_f;
            d["wall_curvature_pinn"] = c.wall_curvature_pinn;
            d["wall_curvature_oracle"] = c.wall_curvature_oracle;
            d["eta99_pinn"] = c.eta99_pinn;
            d["eta99_oracle"] = c.eta99_oracle;
            return d;
        },
        py::arg("params"), py::arg("domain_end") = 8.0, "Compares against the shooting oracle.");

    m.def("save_checkpoint", &save_checkpoint, py::arg("path"), py::arg("params"));
    m.def("load_checkpoint", &load_checkpoint, py::arg("path"));
}
