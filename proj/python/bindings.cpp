#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cavcoh/model_core.hpp"
#include "cavcoh/nonmarkov.hpp"
#include "cavcoh/ode_oracle.hpp"
#include "cavcoh/protocol.hpp"
#include "cavcoh/sweep.hpp"

namespace py = pybind11;
using namespace cavcoh;

PYBIND11_MODULE(_cavcoh, m) {
    m.doc() = "coherence dynamics of an atom in a dissipative cavity "
              "under weak measurement and reversal";

    py::class_<PhysicalParams>(m, "PhysicalParams")
        .def(py::init([](double lambda_, double omega, double omega0) {
                 PhysicalParams p;
                 p.lambda = lambda_;
                 p.omega = omega;
                 p.omega0 = omega0;
                 p.validate();
                 return p;
             }),
             py::arg("lam") = 5.0, py::arg("omega") = 1.0, py::arg("omega0") = 100.0)
        .def_readonly("lambda0", &PhysicalParams::lambda0)
        .def_readonly("lam", &PhysicalParams::lambda)
        .def_readonly("omega", &PhysicalParams::omega)
        .def_readonly("omega0", &PhysicalParams::omega0)
        .def("is_weak_regime", &PhysicalParams::is_weak_regime);

    m.def("gamma_plus", &gamma_plus, py::arg("params"), py::arg("t"));
    m.def("gamma_minus", &gamma_minus, py::arg("params"), py::arg("t"));
    m.def(
        "memory_integrals",
        [](const PhysicalParams& p, double t) {
            const MemoryIntegrals mi = memory_integrals(p, t);
            return py::make_tuple(mi.i_plus, mi.i_minus);
        },
        py::arg("params"), py::arg("t"), "Returns (I_plus, I_minus).");

    m.def(
        "run_protocol",
        [](const PhysicalParams& params, double theta, double p1, double p2, double t,
           bool normalize) {
            ProtocolConfig cfg{params, {theta}, {p1, p2}, normalize};
            return Matrix2c(run_protocol(cfg, t).m);
        },
        py::arg("params"), py::arg("theta"), py::arg("p1"), py::arg("p2"), py::arg("t"),
        py::arg("normalize") = false,
        "2x2 atomic density matrix after prepare -> weak measurement -> "
        "cavity evolution -> reversal.");

    m.def(
        "coherence_l1", [](const Matrix2c& m_) { return coherence_l1(AtomState{m_}); },
        py::arg("rho"));
    m.def(
        "coherence_rel_entropy",
        [](const Matrix2c& m_) { return coherence_rel_entropy(AtomState{m_}); },
        py::arg("rho"));
    m.def(
        "trace_distance",
        [](const Matrix2c& a, const Matrix2c& b) {
            return trace_distance(AtomState{a}, AtomState{b});
        },
        py::arg("rho1"), py::arg("rho2"));

    m.def(
        "blp_measure",
        [](const PhysicalParams& params, const Matrix2c& rho1, const Matrix2c& rho2,
           double horizon, std::size_t steps) {
            const TimeGrid grid{0.0, horizon, steps};
            return blp_measure(params, {AtomState{rho1}, AtomState{rho2}}, grid).n_value;
        },
        py::arg("params"), py::arg("rho1"), py::arg("rho2"), py::arg("horizon") = 50.0,
        py::arg("steps") = 50000,
        "Positive variation of the trace distance for one initial pair.");

    m.def(
        "maximize_over_pairs",
        [](const PhysicalParams& params, double horizon, std::size_t steps,
           std::size_t samples, std::uint64_t seed) {
            const TimeGrid grid{0.0, horizon, steps};
            const NonMarkovResult r = maximize_over_pairs(params, grid, samples, seed);
            return py::make_tuple(r.n_value, Matrix2c(r.pair.first.m),
                                  Matrix2c(r.pair.second.m));
        },
        py::arg("params"), py::arg("horizon") = 50.0, py::arg("steps") = 50000,
        py::arg("samples") = 200, py::arg("seed") = 12345,
        "Returns (N, rho1, rho2) for the best pair found.");

    m.def(
        "compare_closed_form",
        [](const PhysicalParams& params, double theta, double t_end, double dt) {
            const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
            const TimeGrid grid{0.0, t_end, steps};
            const AtomState initial = prepare_initial({theta});
            return compare_closed_form(params, embed_atom_with_vacuum(initial), grid);
        },
        py::arg("params"), py::arg("theta"), py::arg("t_end") = 10.0,
        py::arg("dt") = 1e-3,
        "Max deviation between closed-form propagation and the RK4 "
        "master-equation integrator.");
}
