import math

import numpy as np
import pytest

from entwitness.models import tavis_cummings as tc
from entwitness.spaces import basis_state, evolve, expectation

from conftest import max_phase_free_error


def test_closed_state_at_zero_phase():
    for n in (1, 2, 5):
        sig = tc.tc_signature(n)
        st = tc.tc_closed_state(n, 0.0, sig)
        start = basis_state(sig, {"field": n, "atom1": 0, "atom2": 0})
        assert np.abs(st.amplitudes - start.amplitudes).max() < 1e-12


def test_closed_state_normalized():
    for n in (1, 2, 3, 6):
        for w in np.linspace(0.0, 2 * np.pi, 9):
            assert abs(tc.tc_closed_state(n, w).norm() - 1.0) < 1e-12


def test_closed_state_double_excited_amplitude():
    n, w = 3, 1.3
    sig = tc.tc_signature(n)
    st = tc.tc_closed_state(n, w, sig)
    ee = basis_state(sig, {"field": n - 2, "atom1": 1, "atom2": 1})
    amp = np.vdot(ee.amplitudes, st.amplitudes)
    assert amp == pytest.approx(math.sqrt(n * (n - 1)) * (math.cos(w) - 1) / (2 * n - 1), abs=1e-12)


def test_closed_state_matches_sector_oracle():
    for n in (1, 2, 3, 6):
        sig = tc.tc_signature(n)
        for w in (0.5, 1.0, 2.0):
            closed = tc.tc_closed_state(n, w, sig)
            numeric = tc.tc_sector_state(n, w, sig)
            assert max_phase_free_error(numeric.amplitudes, closed.amplitudes) < 1e-9


def test_closed_state_matches_full_space_oracle():
    for n, phases in [(1, (0.7, 1.9)), (2, (0.7, 1.9)), (3, (0.5, 1.0, 2.0)), (6, (0.7,))]:
        sig = tc.tc_signature(n)
        for w in phases:
            closed = tc.tc_closed_state(n, w, sig)
            full = tc.tc_full_state(n, w, sig)
            assert max_phase_free_error(full.amplitudes, closed.amplitudes) < 1e-9


def test_full_evolution_conserves_excitations():
    n = 3
    sig = tc.tc_signature(n)
    h = tc.tc_hamiltonian(sig, 1.0, 0.1)
    n_op = tc.excitation_operator(sig)
    start = basis_state(sig, {"field": n, "atom1": 0, "atom2": 0})
    for t in np.linspace(0.0, 30.0, 7):
        st = evolve(h, t, start)
        assert abs(expectation(st, n_op).real - (n + 0.0)) < 1e-8


def test_single_excitation_condition():
    for w in np.linspace(0.05, 3.1, 25):
        assert tc.tc_atom_field_condition(1, w) == pytest.approx(
            math.sin(w) ** 2 * math.cos(w) ** 2, abs=1e-12
        )


def test_two_excitation_special_points():
    assert tc.tc_atom_field_condition(2, math.pi / 4) == pytest.approx(
        (2 / 3) * 0.5 * (2 + math.sqrt(2) / 2) ** 2 - 3 * 0.5, abs=1e-12
    )
    assert tc.tc_atom_field_condition(2, math.pi / 4) == pytest.approx(0.9428, abs=1e-4)
    assert tc.tc_atom_field_condition(2, math.pi / 2) == pytest.approx(-1 / 3, abs=1e-12)


def test_two_excitation_boundary_matches_cosine_condition():
    # the verdict flips where |cos + 2| crosses 3/sqrt(2), wherever sin != 0
    for w in np.linspace(0.1, math.pi - 0.1, 200):
        margin = tc.tc_atom_field_condition(2, w)
        fires = abs(math.cos(w) + 2) > 3 / math.sqrt(2)
        if abs(abs(math.cos(w) + 2) - 3 / math.sqrt(2)) > 1e-3:
            assert (margin > 0) == fires


def test_margins_coincide_for_small_n():
    for n in (1, 2):
        for w in np.linspace(0.0, 2 * math.pi, 40):
            assert tc.tc_field_both_condition(n, w) == pytest.approx(
                tc.tc_atom_field_condition(n, w), abs=1e-12
            )


def test_field_both_easier_than_atom_field():
    n = 5
    grid = np.linspace(0.01, 2 * math.pi, 300)
    diffs = [tc.tc_field_both_condition(n, w) - tc.tc_atom_field_condition(n, w) for w in grid]
    assert min(diffs) >= -1e-12
    both_only = [
        w
        for w in grid
        if tc.tc_field_both_condition(n, w) > 0 and tc.tc_atom_field_condition(n, w) <= 0
    ]
    assert both_only  # windows where only the collective test fires


def test_closed_forms_match_simulated_margins():
    for n in range(1, 7):
        sig = tc.tc_signature(n)
        for w in np.linspace(0.1, 2 * math.pi, 11):
            state = tc.tc_sector_state(n, w, sig)
            raw_af = tc.atom_field_margin(state)
            raw_fb = tc.field_both_margin(state)
            assert abs(raw_af * tc.atom_field_scale(n) - tc.tc_atom_field_condition(n, w)) < 1e-9
            assert abs(raw_fb * tc.field_both_scale(n) - tc.tc_field_both_condition(n, w)) < 1e-9


def test_epsilon_series_remainder_order():
    # remainder of the quartic series scales like eps^6: halving eps must
    # shrink it by about 2^6
    for n in (2, 3, 6):
        for which in ("atom", "field"):
            rem = []
            for eps in (0.05, 0.025, 0.0125):
                exact, series = tc.tc_epsilon_check(n, eps, which)
                rem.append(abs(exact - series))
            order1 = math.log2(rem[0] / rem[1])
            order2 = math.log2(rem[1] / rem[2])
            assert order1 == pytest.approx(6.0, abs=0.3)
            assert order2 == pytest.approx(6.0, abs=0.3)
            # remainder stays bounded by a modest multiple of eps^6
            c = max(r / e**6 for r, e in zip(rem, (0.05, 0.025, 0.0125)))
            assert rem[0] <= 5 * c * 0.05**6


def test_epsilon_window_large_n():
    for eps in (0.01, 0.03):
        assert tc.tc_atom_field_condition(10, eps) > 0
        assert tc.tc_field_both_condition(10, eps) > 0


def test_epsilon_series_vanishes_at_zero():
    assert tc.tc_epsilon_series(4, 0.0, "atom") == 0.0
    assert tc.tc_epsilon_series(4, 0.0, "field") == 0.0


def test_epsilon_check_range_guard():
    with pytest.raises(ValueError):
        tc.tc_epsilon_check(3, 0.2)
    with pytest.raises(ValueError):
        tc.tc_epsilon_check(3, 0.01, "sideways")
