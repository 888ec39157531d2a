import itertools

import numpy as np
import pytest
import sympy

from hurlab.acceptance import dense_sampling_lift, random_polynomial
from hurlab.completion import make_kld_g
from hurlab.errors import DomainError, NumericalError
from hurlab.poly_monodromy import (
    MonicPolynomial,
    TrackingOptions,
    _labelled_fibre,
    _match,
    config_genus,
    critical_values,
    loop_system,
    monodromy,
    normalize,
    parse_complex,
    rescale_into_rectangle,
)
from hurlab.pmq_core import Permutation, long_cycle


def test_parse():
    assert parse_complex("1+2i") == 1 + 2j
    assert parse_complex("-i") == -1j
    assert parse_complex("3") == 3
    with pytest.raises(DomainError):
        parse_complex("abc")
    f = MonicPolynomial.parse("0,-3", 3)
    assert f.coeffs == (0, -3, 0) and f.normalized
    assert MonicPolynomial.parse("1,2,3", 3).coeffs == (1, 2, 3)
    with pytest.raises(DomainError):
        MonicPolynomial.parse("1", 4)
    with pytest.raises(DomainError):
        MonicPolynomial([1])


def test_normalize_keeps_critical_values():
    f = MonicPolynomial([1 + 1j, -2, 0.5, 3])
    g = normalize(f)
    assert g.normalized and g.degree == 4
    a = [v for v, _ in critical_values(f)]
    b = [v for v, _ in critical_values(g)]
    assert np.allclose(sorted(a, key=lambda c: (c.real, c.imag)), sorted(b, key=lambda c: (c.real, c.imag)))
    z = 0.3 - 0.7j
    assert np.isclose(g(z), f(z - 3 / 4))


def test_critical_values_multiplicities():
    cv = critical_values(MonicPolynomial([0, -3, 0]))
    assert [(round(v.real, 9), m) for v, m in cv] == [(-2, 1), (2, 1)]
    (v, m), = critical_values(MonicPolynomial([0, 0, 0, 0, 0]))
    assert abs(v) < 1e-9 and m == 4
    cv = critical_values(MonicPolynomial([1, 0, -2, 0]))  # (z^2 - 1)^2
    assert sorted(m for _, m in cv) == [1, 2]


def test_worked_cubic():
    cfg = monodromy(MonicPolynomial([0, -3, 0]))
    assert [b.location for b in cfg.branch_points] == pytest.approx([-2, 2], abs=1e-9)
    s1, s2 = cfg.monodromies
    assert s1 == Permutation.parse("(1 2)", 3) and s2 == Permutation.parse("(2 3)", 3)
    assert cfg.ordered_product() == long_cycle(3)
    assert cfg.genus == 0 and cfg.total == make_kld_g(0, 3)
    data = cfg.to_dict()
    assert data["degree"] == 3 and data["basepoint"] == {"re": 0.0, "im": -1.0}
    assert data["branch_points"][0]["permutation"] == [2, 1, 3]


@pytest.mark.parametrize("d", range(2, 8))
def test_power_map_is_one_long_cycle(d):
    cfg = monodromy(MonicPolynomial([0] * d))
    assert len(cfg.branch_points) == 1
    assert cfg.monodromies[0] == long_cycle(d)


def test_double_transposition_over_a_shared_value():
    cfg = monodromy(MonicPolynomial([1, 0, -2, 0]))
    types = sorted(s.cycle_type().lam for s in cfg.monodromies)
    assert types == [((2, 1),), ((2, 2),)]
    assert cfg.ordered_product() == long_cycle(4)


@pytest.mark.parametrize("seed", range(6))
def test_tracker_matches_dense_sampling(seed):
    rng = np.random.default_rng(100 + seed)
    f = random_polynomial(rng, 3 + seed % 3)
    cfg = monodromy(f)
    system = loop_system([b.location for b in cfg.branch_points])
    fibre = _labelled_fibre(f, system.far_base, TrackingOptions())
    for loop, b in zip(system.loops, cfg.branch_points):
        z1, z2 = dense_sampling_lift(f, loop, fibre, samples=6000)
        assert Permutation(_match(z1, z2)).inverse() == b.monodromy


def _seg_dist(p, a, b):
    ab = b - a
    t = min(1.0, max(0.0, ((p - a) * ab.conjugate()).real / abs(ab) ** 2))
    return abs(p - (a + t * ab))


@pytest.mark.parametrize("seed", range(10))
def test_loops_are_disjoint_and_ordered(seed):
    rng = np.random.default_rng(seed)
    pts = list(rng.standard_normal(6) + 1j * rng.standard_normal(6))
    system = loop_system(pts)
    assert sorted(system.points, key=lambda c: (c.real, c.imag)) == system.points
    loops = system.loops
    for a, b in itertools.permutations(loops, 2):
        assert abs(a.center - b.center) > a.radius + b.radius
        # b's stem stays away from a's circle
        assert _seg_dist(a.center, b.base, b.entry) > a.radius
    assert all(l.base == system.far_base for l in loops)
    assert system.far_base.imag < min(p.imag for p in pts)


def test_coincident_points_rejected():
    with pytest.raises(DomainError):
        loop_system([1j, 1j])


def test_refinement_and_perturbation_stable():
    rng = np.random.default_rng(5)
    fine = TrackingOptions(newton_tol=1e-13, max_step=0.005)
    for d in range(2, 7):
        f = random_polynomial(rng, d)
        base = monodromy(f).monodromies
        assert monodromy(f, opts=fine).monodromies == base
        g = MonicPolynomial(np.asarray(f.coeffs) + 1e-9)
        assert monodromy(g).monodromies == base


def test_tracking_budget_raises():
    with pytest.raises(NumericalError):
        monodromy(MonicPolynomial([0, -3, 0]), opts=TrackingOptions(max_steps=3))


def test_genus_guard():
    t = Permutation.parse("(1 2)", 2)
    assert config_genus([t, t, t, t], 2, 2) == 1
    with pytest.raises(DomainError):
        config_genus([t, t], 1, 2)


def test_rescale_into_unit_square():
    f = MonicPolynomial([5, -30, 2j, 1])
    res = rescale_into_rectangle(f)
    vals = [v for v, _ in critical_values(res.poly)]
    assert all(0 < v.real < 1 and 0 < v.imag < 1 for v in vals)
    orig = [v for v, _ in critical_values(f)]
    mapped = sorted((res.t ** 4 * v + res.shift for v in orig), key=lambda c: (c.real, c.imag))
    assert np.allclose(mapped, sorted(vals, key=lambda c: (c.real, c.imag)))
    # conjugacy classes of the local monodromies survive the rescaling
    a = sorted(s.cycle_type().lam for s in monodromy(f).monodromies)
    b = sorted(s.cycle_type().lam for s in monodromy(res.poly).monodromies)
    assert a == b
    inside = MonicPolynomial([0.5 + 0.5j, 0])
    assert rescale_into_rectangle(inside).t == 1.0


def test_rescale_quadratic_symbolically():
    z, t, b, c = sympy.symbols("z t b c")
    f = z**2 + b * z + c
    crit = sympy.solve(sympy.diff(f, z), z)[0]
    value = sympy.simplify(f.subs(z, crit))
    scaled = sympy.expand(t**2 * f.subs(z, z / t))
    scaled_value = sympy.simplify(scaled.subs(z, sympy.solve(sympy.diff(scaled, z), z)[0]))
    assert sympy.simplify(scaled_value - t**2 * value) == 0
    num = MonicPolynomial([7 - 3j, 4 + 1j])
    res = rescale_into_rectangle(num)
    expect = complex(value.subs({b: 4 + 1j, c: 7 - 3j})) * res.t**2 + res.shift
    (got, _), = critical_values(res.poly)
    assert abs(got - expect) < 1e-12
