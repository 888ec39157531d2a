import itertools

import pytest

from hurlab.completion import completion_norm, make_klud_g
from hurlab.errors import DomainError
from hurlab.moduli_dims import SurfaceData, balanced_orders, dims, dims_table_csv, euler_check, riemann_roch
from hurlab.poly_monodromy import MonicPolynomial, monodromy
from hurlab.pmq_core import Permutation


def test_riemann_roch():
    assert riemann_roch(0, 5) == 6
    assert riemann_roch(1, 1) == 1
    with pytest.raises(DomainError):
        riemann_roch(2, 2)


def test_spot_values():
    quintic = dims(SurfaceData(0, (5,)))
    assert quintic.ccO_fiber_complex == 5 and quintic.ccO_total_real == 8
    torus = dims(SurfaceData(1, (2,)))
    assert torus.ccO_total_real == 6 and torus.ccO_fiber_complex == 1 and torus.ccO_fiber_valid
    hyper = dims(SurfaceData(2, (2,)))
    assert not hyper.ccO_fiber_valid and "hyperelliptic" in hyper.note


@pytest.mark.parametrize("g,n", list(itertools.product(range(6), range(1, 4))))
def test_h_matches_completion_norm(g, n):
    for d in range(max(n, 2), 9):
        s = SurfaceData(g, balanced_orders(n, d))
        assert completion_norm(make_klud_g(g, s.d_vec)) == s.h
        rec = dims(s)
        assert rec.harm_real - rec.charm_real == d - 1
        if rec.ccO_fiber_valid:
            # fibre bundle over moduli space with fibres of real dimension 2 * fiber_complex
            assert rec.teich_real + 2 * rec.ccO_fiber_complex == rec.ccO_total_real


def test_surface_guards():
    with pytest.raises(DomainError):
        SurfaceData(-1, (2,))
    with pytest.raises(DomainError):
        SurfaceData(0, ())
    with pytest.raises(DomainError):
        SurfaceData(0, (0, 2))
    assert balanced_orders(3, 8) == (3, 3, 2)


def test_euler_check_polynomials():
    for coeffs in ([0, -3, 0], [1, 0, -2, 0], [0.2, 1j, -1, 0.5]):
        rep = euler_check(monodromy(MonicPolynomial(coeffs)))
        assert rep.consistent and rep.chi_branch == 2


def test_euler_check_torus_configuration():
    t = Permutation.parse("(1 2)", 2)

    # double cover with three finite simple branch points and one pole of order 2
    class Cfg:
        d, n_poles, genus = 2, 1, 1
        monodromies = [t, t, t]
    rep = euler_check(Cfg)
    assert rep.chi_branch == 0 and rep.consistent

    class Bad(Cfg):
        genus = 0
    assert not euler_check(Bad).consistent

    class Degenerate(Cfg):
        d = 1
    with pytest.raises(DomainError):
        euler_check(Degenerate)


def test_csv_table():
    text = dims_table_csv(range(2), range(1, 3), range(1, 4))
    lines = text.strip().splitlines()
    assert lines[0].startswith("g,n,d,h,")
    assert len(lines) == 1 + 2 * (3 + 2)
