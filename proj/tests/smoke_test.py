"""Smoke tests for the python bindings: a quick pass over every module's
main operations plus a determinism check on the JSON report."""

import json
import math

import pytest

import absim


def test_basic_state_algebra():
    plus = absim.make_ket([1, 1])
    assert plus.dim == 2
    assert abs(plus.amps[0] - 1 / math.sqrt(2)) < 1e-12
    assert abs(absim.inner(absim.ket_R(), plus) - 1 / math.sqrt(2)) < 1e-12

    flipped = absim.apply(absim.pauli_z(), plus)
    assert absim.equal_up_to_phase(flipped, absim.ket_x_minus())

    with pytest.raises(absim.AbsimError):
        absim.make_ket([0, 0])


def test_double_well_weak_values():
    tsv = absim.tsv_from_states(absim.ket_x_plus(), absim.ket_R())
    assert abs(absim.weak_value(tsv, absim.pauli_z()) - 1) < 1e-12
    assert abs(absim.weak_value(tsv, absim.pauli_x()) - 1) < 1e-12


def test_pointer_flip_probability_closed_form():
    assert absim.flip_probability(0.1, 1.0) == pytest.approx(
        0.5 * (1 - math.exp(-0.005)), rel=1e-12
    )
    st = absim.couple(absim.ket_x_plus(), absim.pauli_z(), 0.1, absim.GaussianPointer(1.0))
    assert len(st.branches) == 2
    assert st.branches[0].shift == pytest.approx(-0.1)
    assert absim.conditional_pointer_mean(st, absim.ket_R()) == pytest.approx(0.1)


def test_kicked_qubit_and_lattice():
    u = absim.kicked_qubit_evolution(math.pi)
    state = absim.apply(u, absim.ket_x_plus())
    assert absim.equal_up_to_phase(state, absim.ket_x_minus())

    lat = absim.CyclicLattice(16, 1.0, 1.0)
    v = absim.LatticePotential([math.sin(0.3 * j) for j in range(16)])
    assert absim.modular_commutator_check(lat, v, 4) <= 1e-10


def test_double_mzi_weak_trajectory():
    left, right = absim.mzi1_weak_trajectory(math.pi, "R")
    assert abs(left) < 1e-10
    assert abs(right - 1) < 1e-10
    net = absim.build_double_mzi(math.pi)
    p_left, p_right = absim.exit_probabilities(net, absim.standard_input())
    assert p_left == pytest.approx(0.5, abs=1e-12)
    assert p_right == pytest.approx(0.5, abs=1e-12)


def test_run_scenario_report_is_deterministic():
    config = "scenario = double_well\ntrials = 2000\nseed = 7\n"
    a = absim.run_scenario(config, 1)
    b = absim.run_scenario(config, 4)
    assert a == b

    report = json.loads(a)
    assert report["config"]["scenario"] == "double_well"
    assert report["postselection"]["trials"] == 2000
    obs = report["observables"][0]
    assert obs["label"] == "sigma_z"
    assert obs["weak_value_re"] == pytest.approx(1.0)
    mean = obs["mean"]
    se = obs["standard_error"]
    assert abs(mean - 0.1) <= 3 * se
