import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entcast import linalg, telecloning
from entcast.errors import ZeroProbabilityError
from entcast.states import BELL_ORDER, BellKind, pair_vector
from entcast.verify import coefficients

PHI_P, PHI_M, PSI_P, PSI_M = BELL_ORDER


def test_channel_is_normalised_and_labelled():
    ch = telecloning.build_channel(0.4)
    assert ch.state.labels == ("A'1", "A'2", "B1", "B2", "B3", "B4", "B5", "B6")
    assert abs(np.linalg.norm(ch.state.amplitudes) - 1) < 1e-14


def test_channel_halves_carry_one_ebit():
    # the sender pair is maximally mixed: one ebit shared with the receivers
    ch = telecloning.build_channel(0.3)
    red = ch.state.reduced(("A'1", "A'2")).matrix
    assert np.allclose(red, np.diag([0.5, 0, 0, 0.5]))


@pytest.mark.parametrize("p", [0.0, 0.3, 0.5, 1.0])
def test_enumeration_gives_eight_equiprobable_perfect_outcomes(p):
    a, b = coefficients(0.6, 0.8)
    outs = telecloning.run_telecloning(a, b, p)
    assert len(outs) == 8
    assert {o.outcome for o in outs} == set(telecloning.RECOVERY_TABLE)
    for o in outs:
        assert o.probability == pytest.approx(1 / 8, abs=1e-12)
        assert o.fidelity == pytest.approx(1.0, abs=1e-10)
        assert o.receiver_state.labels == telecloning.RECEIVERS
    assert sum(o.probability for o in outs) == pytest.approx(1.0)


def test_mixed_parity_outcomes_cannot_occur():
    with pytest.raises(ZeroProbabilityError):
        telecloning.run_outcome(0.6, 0.8, 0.5, (PHI_P, PSI_M))
    plan = telecloning.recovery_plan((PSI_P, PHI_M))
    assert not plan.possible


def test_recovery_table_entries():
    assert telecloning.recovery_plan((PHI_P, PHI_P)).describe() == " ⊗ ".join(["I"] * 6)
    assert telecloning.recovery_plan((PHI_M, PHI_P)).operators == ("Z", "I", "Z", "I", "Z", "I")
    assert telecloning.recovery_plan((PSI_M, PSI_M)).operators == ("X",) * 6
    assert telecloning.recovery_plan((PSI_P, PSI_M)).operators == ("XZ", "X", "XZ", "X", "XZ", "X")
    assert all(plan in telecloning.OPERATORS for row in telecloning.RECOVERY_TABLE.values() for plan in row)


def test_recovery_is_needed():
    # without correction the Psi outcomes do not give the target
    out = telecloning.run_outcome(0.6, 0.8, 0.5, (PSI_P, PSI_P))
    target = telecloning.target_state(0.6, 0.8, 0.5)
    assert out.pre_recovery.fidelity(target) < 0.99
    assert out.fidelity == pytest.approx(1.0)


def test_averaged_receiver_state_is_independent_of_input():
    # before the bits arrive the receivers' state carries no information
    avg = []
    for alpha_abs in (0.2, 0.9):
        a, b = coefficients(alpha_abs, 1.0)
        rho = sum(o.probability * linalg.projector(o.pre_recovery.amplitudes)
                  for o in telecloning.run_telecloning(a, b, 0.4))
        avg.append(rho)
    assert np.allclose(avg[0], avg[1], atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(
    st.floats(min_value=0.0, max_value=1.0),
    st.floats(min_value=0.0, max_value=1.0),
    st.floats(min_value=0.0, max_value=2 * math.pi),
)
def test_clone_marginals_match_closed_form(p, alpha_abs, phase):
    a, b = coefficients(alpha_abs, phase)
    num = telecloning.output_clones(a, b, p)
    closed = telecloning.closed_form_clones(a, b, p)
    for n, c in zip(num, closed):
        assert n.allclose(c, atol=1e-10)
    f12, f34 = telecloning.clone_fidelities(p)
    psi = pair_vector(a, b)
    assert num[0].fidelity(psi) == pytest.approx(f12, abs=1e-10)
    assert num[1].fidelity(psi) == pytest.approx(f34, abs=1e-10)


def test_clone_fidelity_special_points():
    assert telecloning.clone_fidelities(0.5) == pytest.approx((0.7, 0.7), abs=1e-12)
    assert telecloning.clone_fidelities(0.0) == pytest.approx((0.25, 1.0))
    assert telecloning.clone_fidelities(1.0) == pytest.approx((1.0, 0.25))


def test_p_zero_sends_input_to_second_clone():
    clones = telecloning.output_clones(0.6, 0.8, 0.0)
    assert np.allclose(clones[0].matrix, np.eye(4) / 4)
    assert clones[1].fidelity(pair_vector(0.6, 0.8)) == pytest.approx(1.0)


def test_random_outcome_is_seeded():
    a = telecloning.run_telecloning(0.6, 0.8, 0.5, "random", seed=11)[0]
    b = telecloning.run_telecloning(0.6, 0.8, 0.5, "random", seed=11)[0]
    assert a.outcome == b.outcome
    assert a.transcript.to_json() == b.transcript.to_json()
    with pytest.raises(ValueError):
        telecloning.run_telecloning(0.6, 0.8, 0.5, "bogus")


def test_transcript_shape():
    out = telecloning.run_outcome(0.6, 0.8, 0.5, (PHI_M, PHI_P))
    kinds = [ev.kind for ev in out.transcript.events]
    assert kinds[:2] == ["measurement", "measurement"]
    assert kinds.count("classical_send") == 2
    assert kinds.count("classical_receive") == 12
    assert kinds[-6:] == ["local_op"] * 6
    assert out.transcript.events[2].payload["classical_message"] == "01"


def test_report_dicts():
    rep = telecloning.clone_report(0.6, 0.8, 0.5)
    assert rep["closed_form_match"] is True
    assert rep["fidelity_B1B2"] == pytest.approx(0.7)
    assert telecloning.resource_report() == {
        "naive": {"ebits": 5, "cbits": 10},
        "telecloning": {"ebits": 1, "cbits": 4},
    }


def test_bell_kind_strings_are_outcome_labels():
    assert str(BellKind.PSI_MINUS) == "Psi-"
    assert telecloning.OUTCOME_BITS[BellKind.PSI_MINUS] == "11"
