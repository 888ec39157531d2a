import numpy as np
import pytest

from hurlab.errors import NumericalError
from hurlab.roots import aberth, companion_roots, polyroots


def _sorted(z):
    return np.array(sorted(np.asarray(z), key=lambda c: (round(c.real, 6), round(c.imag, 6))))


@pytest.mark.parametrize("seed", range(20))
def test_aberth_agrees_with_companion(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 12))
    c = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
    z, ok = aberth(c)
    assert ok
    ref = companion_roots(c)
    # every Aberth root is close to some companion root and vice versa
    d = np.abs(z[:, None] - ref[None, :])
    assert d.min(axis=1).max() < 1e-8 and d.min(axis=0).max() < 1e-8


def test_known_roots():
    z = polyroots([-6, 11, -6, 1])  # (z-1)(z-2)(z-3)
    assert np.allclose(np.sort(z.real), [1, 2, 3], atol=1e-10)
    assert np.allclose(z.imag, 0, atol=1e-10)


def test_multiple_root_passes_backward_check():
    z = polyroots([0, 0, 0, 1])
    assert np.all(np.abs(z) < 1e-4)
    z = polyroots([1, -2, 1])  # (z - 1)^2
    assert np.all(np.abs(z - 1) < 1e-6)


def test_trailing_zeros_trimmed_and_zero_rejected():
    assert len(polyroots([2, 1, 0, 0])) == 1
    with pytest.raises(NumericalError):
        polyroots([0, 0])
