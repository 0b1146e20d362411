#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "absim/config.hpp"
#include "absim/interferometer.hpp"
#include "absim/modular.hpp"
#include "absim/pointer.hpp"
#include "absim/runner.hpp"
#include "absim/tsvf.hpp"

namespace py = pybind11;
using namespace absim;

namespace {

std::vector<cdouble> ket_to_list(const Ket &k) {
    return k.amps;
}

LinOp linop_from_rows(const std::vector<std::vector<cdouble>> &rows) {
    const int d = static_cast<int>(rows.size());
    std::vector<cdouble> entries;
    entries.reserve(static_cast<size_t>(d) * d);
    for (const auto &row : rows) {
        if (static_cast<int>(row.size()) != d) {
            throw DimMismatchError("operator rows must form a square matrix");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return LinOp(d, std::move(entries));
}

}  // namespace

PYBIND11_MODULE(_absim, m) {
    m.doc() = "weak measurement / interferometer simulator core";

    py::register_exception<Error>(m, "AbsimError");

    py::class_<Ket>(m, "Ket")
        .def(py::init<std::vector<cdouble>>())
        .def_property_readonly("amps", &ket_to_list)
        .def_property_readonly("dim", &Ket::dim)
        .def("norm", &Ket::norm);

    py::class_<LinOp>(m, "LinOp")
        .def(py::init(&linop_from_rows))
        .def_property_readonly("dim", &LinOp::dim)
        .def_property_readonly("hermitian", &LinOp::hermitian)
        .def_property_readonly("unitary", &LinOp::unitary)
        .def("entry", [](const LinOp &op, int r, int c) { return op.at(r, c); });

    m.def("make_ket", &make_ket);
    m.def("apply", &apply);
    m.def("inner", &inner);
    m.def("tensor_kets", py::overload_cast<const Ket &, const Ket &>(&tensor));
    m.def("tensor_ops", py::overload_cast<const LinOp &, const LinOp &>(&tensor));
    m.def("matrix_exponential", &matrix_exponential);
    m.def("identity_op", &identity_op);
    m.def("pauli_x", &pauli_x);
    m.def("pauli_y", &pauli_y);
    m.def("pauli_z", &pauli_z);
    m.def("ket_L", &ket_L);
    m.def("ket_R", &ket_R);
    m.def("ket_x_plus", &ket_x_plus);
    m.def("ket_x_minus", &ket_x_minus);
    m.def("equal_up_to_phase", &equal_up_to_phase);

    py::class_<TwoStateVector>(m, "TwoStateVector")
        .def_readonly("pre", &TwoStateVector::pre)
        .def_readonly("post", &TwoStateVector::post)
        .def_readonly("overlap", &TwoStateVector::overlap);
    m.def("tsv_from_states", &tsv_from_states);
    m.def("make_tsv", &make_tsv);
    m.def("weak_value", &weak_value);
    m.def("postselect_probability", &postselect_probability);

    py::class_<GaussianPointer>(m, "GaussianPointer")
        .def(py::init<double, double>(), py::arg("delta"), py::arg("center") = 0.0)
        .def_readonly("delta", &GaussianPointer::delta)
        .def_readonly("center", &GaussianPointer::center);

    py::class_<PointerBranch>(m, "PointerBranch")
        .def_readonly("ket", &PointerBranch::ket)
        .def_readonly("coeff", &PointerBranch::coeff)
        .def_readonly("shift", &PointerBranch::shift);

    py::class_<PointerCoupledState>(m, "PointerCoupledState")
        .def_readonly("delta", &PointerCoupledState::delta)
        .def_readonly("branches", &PointerCoupledState::branches);

    py::class_<ReadoutRecord>(m, "ReadoutRecord")
        .def_readonly("q0", &ReadoutRecord::q0)
        .def_readonly("post_system", &ReadoutRecord::post_system)
        .def_readonly("flipped", &ReadoutRecord::flipped);

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<uint64_t>())
        .def("uniform", &RngStream::uniform)
        .def("normal", &RngStream::normal, py::arg("mean") = 0.0, py::arg("stddev") = 1.0);
    m.def("derive_stream", &derive_stream);

    m.def("couple", &couple);
    m.def("post_readout_state", &post_readout_state);
    m.def("readout", &readout);
    m.def("flip_probability", &flip_probability);
    m.def("conditional_pointer_mean", &conditional_pointer_mean);
    m.def("first_order_state", &first_order_state);
    m.def("fidelity_first_order", &fidelity_first_order);
    m.def("marginal_density", &marginal_density);

    py::class_<CyclicLattice>(m, "CyclicLattice")
        .def(py::init<int, double, double>(), py::arg("sites"), py::arg("spacing"), py::arg("mass"));
    py::class_<LatticePotential>(m, "LatticePotential")
        .def(py::init([](std::vector<double> values) {
            LatticePotential v;
            v.values = std::move(values);
            return v;
        }));
    m.def("translation_op", &translation_op);
    m.def("momentum_op", &momentum_op);
    m.def("lattice_hamiltonian", &lattice_hamiltonian);
    m.def("modular_commutator_check", &modular_commutator_check);
    m.def("kicked_qubit_evolution", &kicked_qubit_evolution);
    m.def("heisenberg_derivative", &heisenberg_derivative);

    py::class_<Network>(m, "Network")
        .def("transfer", &Network::transfer)
        .def("end_to_end", &Network::end_to_end)
        .def("rail_of", &Network::rail_of)
        .def("describe", &Network::describe);
    m.def("build_single_mzi", &build_single_mzi);
    m.def("build_double_mzi", &build_double_mzi);
    m.def("arm_projector", &arm_projector);
    m.def("standard_input", &standard_input);
    m.def("exit_probabilities", [](const Network &net, const Ket &input) {
        const auto p = exit_probabilities(net, input);
        return std::make_pair(p[0], p[1]);
    });
    m.def("mzi1_weak_trajectory", &mzi1_weak_trajectory);

    m.def("parse_config", &parse_config);
    m.def("run_scenario",
          [](const std::string &config_text, int threads) {
              const ScenarioConfig cfg = parse_config(config_text);
              return run_scenario(cfg, threads).report_json;
          },
          py::arg("config_text"), py::arg("threads") = 1);
    m.def("survival_scaling",
          [](double g0, const std::vector<long> &n_values, long trials, uint64_t seed) {
              return survival_scaling(g0, n_values, trials, seed).to_json();
          });
    m.def("flip_rate_experiment", &flip_rate_experiment);
    m.def("run_exact_checks", []() {
        const CheckResult res = run_exact_checks();
        return std::make_pair(res.ok, res.text);
    });
}
