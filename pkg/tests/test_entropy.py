import io
import math
import warnings

import numpy as np
import pytest
import sympy as sp
from hypothesis import given

from strategies import graphs, wavenumbers

from qgraph.catalog import fig1a, load_catalog_graph
from qgraph.entropy import (
    ChannelDistribution,
    QuadratureNotConverged,
    average_entropy,
    channel_probabilities,
    entropy_at,
    entropy_bits,
    entropy_curve,
    shannon_entropy,
    transmission_sweep,
    write_sweep_csv,
)
from qgraph.errors import InvalidDistribution, UnknownChannel
from qgraph.families import complete, cycle, single_vertex, star, wheel
from qgraph.graph import DIRICHLET

TWO_PI = 2 * np.pi


def _exact_entropy(probs):
    return float(sum(-p * sp.log(p, 2) for p in probs if p != 0).evalf(30))


# -- Shannon entropy -----------------------------------------------------------


@pytest.mark.parametrize(
    "p, h",
    [((0.5, 0.5), 1.0), ((1.0, 0.0), 0.0), ((0.6, 0.4), 0.970950594454668), ((0.7, 0.3), 0.881290899230693)],
)
def test_shannon(p, h):
    assert shannon_entropy(ChannelDistribution(1, p)) == pytest.approx(h, abs=1e-12)


def test_biased_coin_in_nats():
    # the same coins measured in nats, not bits
    nats = lambda p: -sum(x * math.log(x) for x in p)
    assert nats((0.6, 0.4)) == pytest.approx(0.67301, abs=5e-6)
    assert nats((0.7, 0.3)) == pytest.approx(0.61086, abs=5e-6)


def test_tiny_probabilities_are_zero():
    assert entropy_bits(np.array([1.0, 1e-320])) == 0.0
    assert entropy_bits(np.array([1.0, 1e-301])) == 0.0


@pytest.mark.parametrize("p", [(0.5, 0.6), (1.2, -0.2), (0.5, 0.49)])
def test_invalid_distribution(p):
    with pytest.raises(InvalidDistribution):
        shannon_entropy(ChannelDistribution(1, p))


def test_sum_slack_is_accepted():
    assert shannon_entropy(ChannelDistribution(1, (0.5, 0.5 + 5e-7))) == pytest.approx(1.0, abs=1e-5)


# -- per-k entropy ---------------------------------------------------------------


def test_transparent_vertex_has_zero_entropy():
    assert entropy_at(single_vertex(2), 1.7) == 0.0


def test_degree_three_vertex_entropy_exact():
    third = sp.Rational(1, 9), sp.Rational(4, 9), sp.Rational(4, 9)
    assert entropy_at(single_vertex(3), 0.4) == pytest.approx(_exact_entropy(third), abs=1e-14)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_complete_all_leads_two_term_form(n, rng):
    g = complete(n, "all")
    for k in rng.uniform(0, TWO_PI, 5):
        h = entropy_at(g, k)
        R = channel_probabilities(g, [k])[0][0, 0]
        two_term = -R * math.log2(R) - (1 - R) * math.log2((1 - R) / (n - 1))
        assert h == pytest.approx(two_term, abs=1e-10)


@given(graphs(dead_ends=True), wavenumbers)
def test_entropy_bounds(g, k):
    h = entropy_curve(g, [k])[0]
    assert -1e-12 <= h <= math.log2(g.n_channels) + 1e-12


@given(graphs(), wavenumbers)
def test_time_reversal_mirror(g, k):
    h = entropy_curve(g, [k, TWO_PI - k])
    assert h[0] == pytest.approx(h[1], abs=1e-9)


def test_unknown_entrance():
    with pytest.raises(UnknownChannel):
        entropy_at(star(4), 1.0, entrance=3)
    with pytest.raises(UnknownChannel):
        average_entropy(star(4), entrance=0)


# -- averages ---------------------------------------------------------------------


def test_constant_integrand_converges_on_first_doubling():
    prof = average_entropy(single_vertex(6))
    assert prof.average == pytest.approx(float(20 / 36 * sp.log(9, 2) + 16 / 36 * sp.log(sp.Rational(36, 16), 2)), abs=1e-12)
    assert prof.panels_used == 32 and prof.converged


def test_catalog_q_value():
    assert average_entropy(load_catalog_graph("Q")).average == pytest.approx(0.634882, abs=1e-4)


def test_profile_fields_and_bounds():
    prof = average_entropy(wheel(5), tol=1e-7)
    assert prof.converged and prof.estimated_error < 1e-7
    assert prof.period == pytest.approx(TWO_PI)
    assert prof.samples.shape == (prof.panels_used * 32, 2)
    assert 0 <= prof.average <= 1
    assert float(prof) == prof.average
    assert np.all((prof.samples[:, 1] >= 0) & (prof.samples[:, 1] <= 1 + 1e-12))


def test_two_periods_give_the_same_average():
    for g in [star(4), cycle(3, "all"), load_catalog_graph("X")]:
        one = average_entropy(g, tol=1e-10).average
        two = average_entropy(g, tol=1e-10, period=2 * TWO_PI).average
        assert one == pytest.approx(two, abs=1e-8)


def test_mirroring_does_not_change_the_rule():
    g = load_catalog_graph("IX")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", QuadratureNotConverged)
        a = average_entropy(g, panels=64, max_panels=64)
        b = average_entropy(g, panels=64, max_panels=64, mirror=False)
    assert a.average == pytest.approx(b.average, abs=1e-12)


def test_looser_tolerance_stays_within_itself():
    for gid in ["Q", "X", "IQ", "IX"]:
        g = load_catalog_graph(gid)
        fine, coarse = average_entropy(g, tol=1e-6).average, average_entropy(g, tol=1e-5).average
        assert abs(fine - coarse) <= 1e-5


@pytest.mark.parametrize("g", [cycle(5, "all"), cycle(6, "all"), complete(4, "all"), complete(5, "all")], ids=str)
def test_entrance_symmetry(g):
    vals = [average_entropy(g, entrance=i, tol=1e-8).average for i in range(1, g.n_channels + 1)]
    assert max(vals) - min(vals) < 1e-9


@pytest.mark.parametrize("n", range(3, 11))
def test_star_dead_end_condition_is_irrelevant(n):
    a = average_entropy(star(n)).average
    b = average_entropy(star(n, dead_end_bc=DIRICHLET)).average
    assert a == pytest.approx(b, abs=1e-6)


def test_star_with_all_leads_is_a_single_vertex():
    for n in (4, 5, 6):
        assert average_entropy(star(n, "all")).average == pytest.approx(average_entropy(single_vertex(n)).average, abs=1e-9)


def test_not_converged_warns_and_flags():
    with pytest.warns(QuadratureNotConverged):
        prof = average_entropy(cycle(9), tol=1e-12, max_panels=32)
    assert not prof.converged and prof.panels_used == 32


def test_bad_tolerance():
    with pytest.raises(ValueError):
        average_entropy(star(4), tol=0)


# -- sweeps ---------------------------------------------------------------------


def test_sweep_rows_and_csv():
    table = transmission_sweep(fig1a(2), 1, 1e-6, TWO_PI, 8)
    assert len(table) == 8
    buf = io.StringIO()
    write_sweep_csv(table, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "k,p_1,p_2,H,flags"
    assert len(lines) == 9
    assert lines[-1].endswith(",perturbed")  # k = 2 pi is a bound state of this ring
    assert all(line.count(",") == 4 for line in lines)
    assert buf.getvalue().endswith("\n")


def test_sweep_two_samples():
    assert len(transmission_sweep(star(4), 1, 0.5, 1.0, 2)) == 2


def test_sweep_argument_checks():
    with pytest.raises(ValueError):
        transmission_sweep(star(4), 1, 0.0, 1.0, 10)
    with pytest.raises(ValueError):
        transmission_sweep(star(4), 1, 2.0, 1.0, 10)
    with pytest.raises(ValueError):
        transmission_sweep(star(4), 1, 0.5, 1.0, 1)


def test_ring_transmission_ranges():
    grid = lambda n: transmission_sweep(fig1a(n), 1, 1e-6, TWO_PI, 20001).probabilities[:, 1]
    t2 = grid(2)
    # the shortest ring never blocks: sigma = -8z / (z^2 - 9) keeps |sigma|^2 >= 0.64
    assert t2.min() == pytest.approx(0.64, abs=1e-6) and t2.max() == pytest.approx(1, abs=1e-9)
    for n in (3, 4, 5):
        t = grid(n)
        assert t.min() < 1e-6 and t.max() > 1 - 1e-9


@pytest.mark.parametrize("n", range(2, 10))
def test_ring_half_period_follows_edge_parity(n):
    # with edges of 1 and n - 1 units, z -> -z flips every bond phase exactly
    # when n - 1 is odd, so |sigma| has period pi for even n only
    k = np.linspace(0, np.pi, 500, endpoint=False) + 1e-3
    t = channel_probabilities(fig1a(n), np.concatenate([k, k + np.pi]))[0][:, 1]
    dev = np.max(np.abs(t[:500] - t[500:]))
    if n % 2 == 0:
        assert dev < 1e-10
    else:
        assert dev > 0.1
