import math

import numpy as np
import pytest
import sympy as sp

from qgraph.closed_form import (
    closed_form_cycle_amplitude,
    closed_form_S1d_entropy,
    closed_form_star_amplitude,
    closed_form_star_secular,
)
from qgraph.engine import scattering_amplitudes
from qgraph.errors import ParameterOutOfRange, SingularPoint
from qgraph.families import cycle, star
from qgraph.catalog import fig1a
from qgraph.reproduce import oracle_sample


def test_single_vertex_entropy():
    d = sp.Integer(3)
    exact = 4 * (d - 1) / d**2 * sp.log(d**2 / 4, 2) + (d - 2) ** 2 / d**2 * sp.log(d**2 / (d - 2) ** 2, 2)
    assert closed_form_S1d_entropy(3) == pytest.approx(float(exact), abs=1e-14)
    assert closed_form_S1d_entropy(3) == pytest.approx(1.39215, abs=1e-5)
    vals = {d: closed_form_S1d_entropy(d) for d in range(3, 51)}
    assert max(vals, key=vals.get) == 6
    assert closed_form_S1d_entropy(200) < closed_form_S1d_entropy(50)
    with pytest.raises(ParameterOutOfRange):
        closed_form_S1d_entropy(2)


def test_star_amplitude_special_points():
    assert closed_form_star_amplitude(3, np.pi / 2) == pytest.approx(0, abs=1e-15)
    assert abs(closed_form_star_amplitude(4, 1e-6)) ** 2 == pytest.approx(1, abs=1e-9)
    assert abs(scattering_amplitudes(star(4), [1e-6]).amplitudes[0, 1, 0]) ** 2 == pytest.approx(1, abs=1e-9)
    with pytest.raises(ParameterOutOfRange):
        closed_form_star_amplitude(2, 1.0)
    with pytest.raises(SingularPoint):
        closed_form_star_amplitude(6, np.pi / 2)  # removable 0/0 of the written form


def test_star_secular_zero():
    assert closed_form_star_secular(4, np.pi / 2) == pytest.approx(0, abs=1e-15)


@pytest.mark.parametrize("n", range(3, 13))
def test_star_oracle_equivalence(n):
    k, ref = oracle_sample(np.random.default_rng(n), n, closed_form_star_amplitude)
    assert np.max(np.abs(scattering_amplitudes(star(n), k).amplitudes[:, 1, 0] - ref)) < 1e-10


@pytest.mark.parametrize("n", range(2, 13))
def test_cycle_oracle_equivalence(n):
    k, ref = oracle_sample(np.random.default_rng(100 + n), n, closed_form_cycle_amplitude)
    assert np.max(np.abs(scattering_amplitudes(cycle(n), k).amplitudes[:, 1, 0] - ref)) < 1e-10
    assert np.all(np.abs(ref) ** 2 <= 1 + 1e-12)


@pytest.mark.parametrize("n", range(3, 9))
def test_cycle_zero_at_roots_of_unity(n):
    assert closed_form_cycle_amplitude(n, 2 * np.pi / n) == pytest.approx(0, abs=1e-14)


def test_cycle2_root_of_unity_is_a_removable_point():
    with pytest.raises(SingularPoint):
        closed_form_cycle_amplitude(2, np.pi)
    # the limit there is full transmission, not a zero
    assert abs(closed_form_cycle_amplitude(2, np.pi + 1e-6)) == pytest.approx(1, abs=1e-9)


def test_cycle2_equals_two_edge_ring(rng):
    k = rng.uniform(0, 2 * np.pi, 200)
    ring = scattering_amplitudes(fig1a(2), k).amplitudes[:, 1, 0]
    assert np.max(np.abs(ring - closed_form_cycle_amplitude(2, k))) < 1e-10


def test_literal_sign_differs_by_an_overall_minus(rng):
    k = rng.uniform(0.1, 6.0, 50)
    for n in (2, 5, 8):
        a = closed_form_cycle_amplitude(n, k)
        b = closed_form_cycle_amplitude(n, k, literal_sign=True)
        assert np.allclose(a, -b, atol=1e-12)
    # zero-energy limit: two leads on one effective vertex give full transmission +1
    assert closed_form_cycle_amplitude(4, 1e-7) == pytest.approx(1, abs=1e-5)


def test_cycle_sympy_cross_check():
    z = sp.symbols("z")
    n = 4
    expr = 4 * z * (z**n - 1) * (z**n + z**2) / (-(9 * z**2 - z**4 - z ** (2 * n) - 8 * z ** (n + 2) + z ** (2 * n + 2)))
    k = 0.8123
    want = complex(expr.subs(z, sp.exp(sp.I * k)).evalf(30))
    assert closed_form_cycle_amplitude(n, k) == pytest.approx(want, abs=1e-13)
    with pytest.raises(ParameterOutOfRange):
        closed_form_cycle_amplitude(1, 0.3)
