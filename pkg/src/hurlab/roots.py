"""Simultaneous polynomial root finding (Aberth-Ehrlich) with a companion-matrix fallback."""
from __future__ import annotations

import numpy as np

from .errors import NumericalError

__all__ = ["aberth", "companion_roots", "polyroots"]


def _ascending(coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    nz = np.nonzero(c)[0]
    if nz.size == 0:
        raise NumericalError("zero polynomial has no well-defined roots")
    return c[: nz[-1] + 1]


def companion_roots(coeffs) -> np.ndarray:
    """Roots via eigenvalues of the companion matrix (coefficients ascending)."""
    c = _ascending(coeffs)
    return np.roots(c[::-1]).astype(complex)


def aberth(coeffs, tol: float = 1e-14, max_iter: int = 500):
    """Aberth-Ehrlich iteration; coefficients ascending ``a_0 .. a_n``.

    Returns ``(roots, converged)``.  Starting points lie on a circle of the
    Fujiwara radius, rotated off the real axis.
    """
    c = _ascending(coeffs)
    n = len(c) - 1
    if n == 0:
        return np.empty(0, dtype=complex), True
    c = c / c[-1]
    desc = c[::-1]
    ddesc = np.polyder(desc)
    radius = 2 * max(abs(c[k]) ** (1.0 / (n - k)) for k in range(n)) if n else 1.0
    radius = max(radius, 1e-3)
    centre = -c[n - 1] / n
    z = centre + radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    active = np.ones(n, dtype=bool)
    for _ in range(max_iter):
        p = np.polyval(desc, z)
        dp = np.polyval(ddesc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = (1.0 / diff).sum(axis=1)
            step = ratio / (1 - ratio * s)
        step[~np.isfinite(step)] = 0.0
        step[~active] = 0.0
        z = z - step
        active = np.abs(step) > tol * (1 + np.abs(z))
        if not active.any():
            return z, True
    return z, False


def polyroots(coeffs, tol: float = 1e-14) -> np.ndarray:
    """All roots with multiplicity; Aberth first, companion matrix when Aberth stalls.

    Either way the result is checked against a scaled backward-error bound and a
    :class:`NumericalError` carrying the residuals is raised when it fails.
    """
    c = _ascending(coeffs)
    z, ok = aberth(c, tol=tol)
    if not ok:
        z = companion_roots(c)
    desc = c[::-1]
    resid = np.abs(np.polyval(desc, z))
    scale = np.polyval(np.abs(desc), np.maximum(1.0, np.abs(z)))
    if np.any(resid / scale > 1e-6):
        raise NumericalError("root finder did not converge", {"residuals": resid.tolist(), "roots": z.tolist()})
    return z
