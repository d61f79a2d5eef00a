import numpy as np
import pytest

from entcast import broadcasting, criteria, runner
from entcast.errors import DimensionError, ParameterError
from entcast.states import BELL_ORDER, BellKind, bell_state, to_density
from entcast.verify import coefficients


def bell_rho(kind):
    return to_density(bell_state(kind)).matrix


@pytest.mark.parametrize("kind", BELL_ORDER)
def test_every_bell_channel_teleports_perfectly(kind):
    phi = runner.haar_random_qubits(5, seed=3)
    for v in phi:
        assert runner.simulate_standard_teleportation(bell_rho(kind), v) == pytest.approx(1.0, abs=1e-12)


def test_standard_corrections_for_singlet_and_phi_plus():
    assert runner.correction_table(BellKind.PHI_PLUS) == ("I", "Z", "X", "XZ")
    assert runner.correction_table(BellKind.PSI_MINUS) == ("XZ", "X", "Z", "I")


def test_maximally_mixed_channel_gives_half():
    v = np.array([0.6, 0.8j])
    assert runner.simulate_standard_teleportation(np.eye(4) / 4, v) == pytest.approx(0.5)


def test_werner_beats_classical():
    w = runner.werner_state()
    mc = runner.monte_carlo_teleportation_fidelity(w, 2000, seed=1)
    assert mc.mean > 2 / 3
    assert mc.mean == pytest.approx(0.75, abs=1e-12)


def test_outputs_are_trace_preserving():
    rho = broadcasting.run_broadcast(*coefficients(0.7, 0.3), 0.3).rho_cd
    outs = runner.teleportation_outputs(rho, np.array([0.8, 0.6]))
    assert sum(p for p, _ in outs) == pytest.approx(1.0, abs=1e-10)
    for _, r in outs:
        assert np.trace(r) == pytest.approx(1.0)


def test_input_validation():
    with pytest.raises(DimensionError):
        runner.simulate_standard_teleportation(np.eye(8) / 8, [1, 0])
    with pytest.raises(DimensionError):
        runner.simulate_standard_teleportation(np.eye(4) / 4, [1, 1])
    with pytest.raises(ParameterError):
        runner.monte_carlo_teleportation_fidelity(np.eye(4) / 4, 10)


def test_haar_sampling():
    kets = runner.haar_random_qubits(100_000, seed=9)
    assert np.allclose(np.linalg.norm(kets, axis=1), 1.0)
    assert np.linalg.norm(runner.bloch_vectors(kets).mean(axis=0)) < 0.02
    assert np.array_equal(kets, runner.haar_random_qubits(100_000, seed=9))
    assert runner.haar_random_qubit(seed=4).labels == ("in",)


def test_monte_carlo_is_deterministic():
    rho = broadcasting.run_broadcast(0.8, 0.6, 0.25).rho_cd
    a = runner.monte_carlo_teleportation_fidelity(rho, 1000, seed=42)
    b = runner.monte_carlo_teleportation_fidelity(rho, 1000, seed=42)
    assert a == b


@pytest.mark.parametrize("R, alpha_abs", [(0.25, 0.8), (0.1, 0.6), (0.4, 0.3)])
def test_monte_carlo_matches_optimal_fidelity(R, alpha_abs):
    a, b = coefficients(alpha_abs)
    res = broadcasting.run_broadcast(a, b, R)
    for rho in (res.rho_a1b1, res.rho_cd):
        _, F = criteria.teleportation_N(rho)
        mc = runner.monte_carlo_teleportation_fidelity(rho, 50_000, seed=3)
        assert abs(mc.mean - F) <= 3 * mc.stderr + 1e-12


def test_closest_bell_state():
    assert runner.closest_bell_state(runner.werner_state()) is BellKind.PSI_MINUS
    assert runner.closest_bell_state(bell_rho(BellKind.PHI_MINUS)) is BellKind.PHI_MINUS
