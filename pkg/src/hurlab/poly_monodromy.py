"""Numerical monodromy of monic polynomials viewed as branched covers of the plane.

Sheets over the lower half-plane below all critical values are labeled once and
for all: continue the fibre straight down to a large ``|w|`` where the roots of
``f(z) = w`` sit in the ``d`` sectors of ``w^(1/d)``, and number the sectors
counterclockwise.  With this labeling a clockwise loop around every critical
value acts as the long cycle ``(1, 2, ..., d)``.

The local monodromy ``sigma_i`` of loop ``alpha_i`` is the inverse of the sheet
map obtained by lifting it, so that concatenating loops corresponds to the
package-wide product ``sigma_1 * sigma_2 * ...`` (right factor acts first).
"""
from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from numpy.polynomial import Polynomial

from .completion import CompletionElement, normal_form
from .errors import DomainError, NumericalError
from .pmq_core import Permutation
from .roots import polyroots

__all__ = [
    "MonicPolynomial",
    "BranchPoint",
    "HurwitzConfiguration",
    "Loop",
    "LoopSystem",
    "TrackingOptions",
    "normalize",
    "critical_points",
    "critical_values",
    "basepoint",
    "loop_system",
    "track",
    "monodromy",
    "rescale_into_rectangle",
    "RescaleResult",
    "config_genus",
    "parse_complex",
]


# -- polynomials --------------------------------------------------------------


def parse_complex(text: str) -> complex:
    """Parse ``"x+yi"``-style literals (``i`` or ``j`` as the imaginary unit)."""
    t = text.strip().replace(" ", "").replace("I", "i").replace("j", "i")
    if not t:
        raise DomainError("empty coefficient")
    # bare "i", "+i", "-i" -> "1i" and friends
    t = re.sub(r"(^|[+\-])i", r"\g<1>1i", t)
    try:
        return complex(t.replace("i", "j"))
    except ValueError as exc:
        raise DomainError(f"cannot parse complex number {text!r}") from exc


@dataclass(frozen=True)
class MonicPolynomial:
    """``z^d + a_{d-1} z^{d-1} + ... + a_0``; ``coeffs`` holds ``a_0 .. a_{d-1}``."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence[complex]):
        c = tuple(complex(x) for x in coeffs)
        if len(c) < 2:
            raise DomainError("degree must be at least 2")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def parse(cls, text: str, degree: Optional[int] = None) -> "MonicPolynomial":
        """Parse ``"a0,a1,...,a_{d-2}[,a_{d-1}]"``; a missing top coefficient means normalized."""
        parts = [parse_complex(p) for p in text.split(",") if p.strip() != ""]
        if degree is None:
            degree = len(parts) + 1
        if len(parts) == degree - 1:
            parts.append(0j)
        if len(parts) != degree:
            raise DomainError(f"degree {degree} needs {degree - 1} or {degree} coefficients, got {len(parts)}")
        return cls(parts)

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @property
    def normalized(self) -> bool:
        return self.coeffs[-1] == 0

    def ascending(self) -> np.ndarray:
        return np.array(self.coeffs + (1.0 + 0j,), dtype=complex)

    def descending(self) -> np.ndarray:
        return self.ascending()[::-1].copy()

    def __call__(self, z):
        return np.polyval(self.descending(), z)

    def derivative_ascending(self) -> np.ndarray:
        a = self.ascending()
        return a[1:] * np.arange(1, len(a))

    def __str__(self):
        terms = [f"z^{self.degree}"]
        for k in range(self.degree - 1, -1, -1):
            c = self.coeffs[k]
            if c != 0:
                terms.append(f"({c:g})" + (f"z^{k}" if k > 1 else ("z" if k == 1 else "")))
        return " + ".join(terms)


def normalize(f: MonicPolynomial) -> MonicPolynomial:
    """Precompose with ``z -> z - a_{d-1}/d`` so that the ``z^{d-1}`` coefficient vanishes."""
    d = f.degree
    shift = f.coeffs[-1] / d
    if shift == 0:
        return f
    composed = Polynomial(f.ascending())(Polynomial([-shift, 1.0]))
    c = list(np.asarray(composed.coef, dtype=complex)[:d])
    c += [0j] * (d - len(c))
    c[-1] = 0j
    return MonicPolynomial(c)


def critical_points(f: MonicPolynomial) -> np.ndarray:
    return polyroots(f.derivative_ascending())


def critical_values(f: MonicPolynomial, cluster_tol: float = 1e-8) -> list:
    """Critical values ``[(location, multiplicity), ...]`` with near-equal values merged.

    Two values ``u, v`` are merged when ``|u - v| <= cluster_tol * max(1, |u|, |v|)``;
    the multiplicity counts the merged critical points, so multiplicities sum to
    ``d - 1``.  Sorted by real part, then imaginary part.
    """
    zeta = critical_points(f)
    vals = f(zeta)
    n = len(vals)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if abs(vals[i] - vals[j]) <= cluster_tol * max(1.0, abs(vals[i]), abs(vals[j])):
                parent[find(i)] = find(j)
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(vals[i])
    out = [(complex(np.mean(g)), len(g)) for g in groups.values()]
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return out


# -- loops --------------------------------------------------------------------


def basepoint(points) -> complex:
    """``(min(Im over points and 0) - 1) * i``."""
    ims = [complex(p).imag for p in points] + [0.0]
    return complex(0.0, min(ims) - 1.0)


@dataclass(frozen=True)
class Loop:
    """Straight stem from ``base`` to ``entry`` on the circle around ``center``, one clockwise turn, back."""

    base: complex
    center: complex
    radius: float

    @property
    def entry_angle(self) -> float:
        return cmath.phase(self.base - self.center)

    @property
    def entry(self) -> complex:
        return self.center + self.radius * cmath.exp(1j * self.entry_angle)

    def stem_pieces(self, ratio: float = 0.1) -> list:
        """Stem split into segments shrinking geometrically towards the circle."""
        far = self.base - self.entry
        knots = [self.base]
        scale = 1.0
        while abs(far) * scale > self.radius:
            scale *= ratio
            knots.append(self.entry + far * scale)
        knots.append(self.entry)
        return list(zip(knots, knots[1:]))

    def arc(self, s):
        return self.center + self.radius * np.exp(1j * (self.entry_angle - 2 * np.pi * s))

    def arc_velocity(self, s):
        return -2j * np.pi * self.radius * np.exp(1j * (self.entry_angle - 2 * np.pi * s))

    def polyline(self, n_arc: int = 64) -> np.ndarray:
        """Closed polyline approximation, for plotting and geometric checks."""
        arc = self.arc(np.linspace(0.0, 1.0, n_arc + 1))
        return np.concatenate([[self.base], arc, [self.base]])


@dataclass
class LoopSystem:
    """Admissible generating loops in canonical order, based at a point below everything."""

    basepoint: complex  # the reported basepoint, (min Im - 1) i
    far_base: complex  # common base of the loops; joined to ``basepoint`` inside the lower half-plane
    points: list  # critical values in canonical order
    loops: list
    order: list = field(default_factory=list)  # permutation applied to the input points


def _segment_distance(p: complex, a: complex, b: complex) -> float:
    ab = b - a
    if ab == 0:
        return abs(p - a)
    t = ((p - a) * ab.conjugate()).real / abs(ab) ** 2
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * ab))


def _lex_order(points, tie_tol):
    idx = list(range(len(points)))

    def key(i):
        return points[i].real, points[i].imag

    idx.sort(key=key)
    # treat real parts within tie_tol as equal
    groups = []
    for i in idx:
        if groups and abs(points[i].real - points[groups[-1][0]].real) <= tie_tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    out = []
    for g in groups:
        out += sorted(g, key=lambda i: points[i].imag)
    return out


def loop_system(points: Sequence[complex]) -> LoopSystem:
    """Loops around ``points`` ordered left to right as seen from far below.

    The common base lies far below and to the right of all points and loops are
    listed in the left-to-right angular order of their straight stems.  The base
    is pushed down (at most ``64 *`` the spread) until this order is increasing
    real part with ties broken by increasing imaginary part; only real parts
    closer than the depth can resolve keep the angular order, which differs from
    the lexicographic one by Hurwitz moves.  Radii are 0.3 times the clearance
    to other points and other stems.
    """
    pts = [complex(p) for p in points]
    if not pts:
        return LoopSystem(basepoint(pts), basepoint(pts), [], [], [])
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i] == pts[j]:
                raise DomainError("coincident points in loop system")
    spread = max(abs(p - q) for p in pts for q in pts)
    scale = max(1.0, spread, max(abs(p) for p in pts))
    tie_tol = 1e-9 * scale
    target = _lex_order(pts, tie_tol)
    x0 = max(p.real for p in pts) + scale
    ytop = min(min(p.imag for p in pts), 0.0)
    depth = 8 * scale
    while True:
        far = complex(x0, ytop - depth)

        def slope(i, far=far):
            return (pts[i].real - far.real) / (pts[i].imag - far.imag)

        order = sorted(range(len(pts)), key=lambda i: (slope(i), pts[i].imag))
        if order == target or depth >= 64 * scale:
            break
        depth *= 4
    ordered = [pts[i] for i in order]
    radii = []
    for i, p in enumerate(ordered):
        clear = [abs(p - far) * 0.5, scale]
        for j, q in enumerate(ordered):
            if j != i:
                clear.append(abs(p - q))
                clear.append(_segment_distance(p, far, q))
        radii.append(0.3 * min(clear))
    loops = [Loop(far, p, r) for p, r in zip(ordered, radii)]
    return LoopSystem(basepoint(pts), far, ordered, loops, order)


# -- path tracking -----------------------------------------------------------


@dataclass(frozen=True)
class TrackingOptions:
    """Path-tracker knobs.  ``newton_tol`` is relative to ``1 + |z|``."""

    newton_tol: float = 1e-12
    max_step: float = 0.05
    min_step: float = 1e-13
    max_steps: int = 100_000
    collapse_ratio: float = 0.5  # reject a step if the closest pair of roots shrinks by more than this


def _newton(desc, ddesc, z, w, tol, iters=8):
    for _ in range(iters):
        dz = (np.polyval(desc, z) - w) / np.polyval(ddesc, z)
        z = z - dz
        if np.all(np.abs(dz) <= tol * (1 + np.abs(z))):
            return z, True
    return z, False


def _min_sep(z):
    if len(z) < 2:
        return math.inf
    diff = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(diff, np.inf)
    return float(diff.min())


def track(f: MonicPolynomial, path, velocity, z0, opts: TrackingOptions = TrackingOptions()) -> np.ndarray:
    """Continue the roots ``z0`` of ``f(z) = path(0)`` to roots of ``f(z) = path(1)``.

    RK4 predictor on ``dz/ds = w'(s) / f'(z)``, Newton corrector.  A step is
    accepted only if Newton converges, the correction is small compared with the
    spacing of the roots, and the spacing does not collapse; otherwise it is
    halved.  Root identity is therefore preserved along the path.
    """
    desc = f.descending()
    ddesc = np.polyder(desc)
    z = np.array(z0, dtype=complex)
    s = 0.0
    h = opts.max_step
    steps = 0
    sep = _min_sep(z)
    trace = []

    def rhs(ss, zz):
        return velocity(ss) / np.polyval(ddesc, zz)

    while s < 1.0:
        steps += 1
        if steps > opts.max_steps:
            raise NumericalError("path tracking exceeded the step budget", {"s": s, "trace": trace[-20:]})
        h = min(h, 1.0 - s)
        k1 = rhs(s, z)
        k2 = rhs(s + h / 2, z + h / 2 * k1)
        k3 = rhs(s + h / 2, z + h / 2 * k2)
        k4 = rhs(s + h, z + h * k3)
        pred = z + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        ok = np.all(np.isfinite(pred))
        if ok:
            corr, ok = _newton(desc, ddesc, pred, path(s + h), opts.newton_tol)
        if ok:
            new_sep = _min_sep(corr)
            shift = float(np.max(np.abs(corr - pred)))
            ok = shift < 0.1 * min(sep, new_sep) and new_sep > opts.collapse_ratio * sep
        if not ok:
            trace.append((s, h))
            h /= 2
            if h < opts.min_step:
                raise NumericalError(
                    "path tracking stalled (roots too close or Newton failing)",
                    {"s": s, "trace": trace[-20:]},
                )
            continue
        z = corr
        s += h
        sep = new_sep
        if shift < 1e-3 * sep:
            h = min(opts.max_step, h * 2)
    return z


def _segment(a: complex, b: complex):
    return (lambda s: a + s * (b - a)), (lambda s: (b - a) * np.ones_like(s))


def _match(z_from, z_to) -> list:
    """Index map ``j -> k`` with ``z_to[j] ~ z_from[k]``; raises if not a clean bijection."""
    diff = np.abs(np.asarray(z_to)[:, None] - np.asarray(z_from)[None, :])
    idx = diff.argmin(axis=1)
    sep = _min_sep(np.asarray(z_from))
    if len(set(idx.tolist())) != len(idx) or diff[np.arange(len(idx)), idx].max() > 0.25 * sep:
        raise NumericalError("fibre matching after a loop is ambiguous", {"distances": diff.tolist()})
    return idx.tolist()


def _labelled_fibre(f: MonicPolynomial, w0: complex, opts: TrackingOptions) -> np.ndarray:
    """Roots of ``f = w0`` ordered by sheet label (index ``j`` is sheet ``j + 1``)."""
    d = f.degree
    a = f.ascending().copy()
    a[0] -= w0
    z0, _ = _newton(f.descending(), np.polyder(f.descending()), polyroots(a), w0, 1e-14)
    shift = f.coeffs[-1] / d
    reach = abs(w0) + 10.0
    z = z0
    w_cur = w0
    for _ in range(40):
        w_next = complex(w0.real, w0.imag - reach)
        z = track(f, *_segment(w_cur, w_next), z, opts)
        w_cur = w_next
        u = z + shift
        base_angle = cmath.phase(w_cur) / d
        rel = (np.angle(u) - base_angle) / (2 * np.pi / d)
        k = np.round(rel).astype(int) % d
        dev = np.abs(rel - np.round(rel))
        if len(set(k.tolist())) == d and dev.max() < 0.25:
            labels = np.empty(d, dtype=complex)
            labels[k] = z0
            return labels
        reach *= 10.0
    raise NumericalError("could not separate the fibre into asymptotic sectors", {"w": w_cur})


@dataclass
class BranchPoint:
    location: complex
    multiplicity: int
    monodromy: Permutation

    def to_dict(self) -> dict:
        return {
            "re": self.location.real,
            "im": self.location.imag,
            "multiplicity": self.multiplicity,
            "permutation": list(self.monodromy.image),
        }


@dataclass
class HurwitzConfiguration:
    d: int
    basepoint: complex
    branch_points: list
    total: CompletionElement
    genus: int
    n_poles: int
    meta: dict = field(default_factory=dict)

    @property
    def monodromies(self) -> list:
        return [b.monodromy for b in self.branch_points]

    def ordered_product(self) -> Permutation:
        out = Permutation.identity(self.d)
        for s in self.monodromies:
            out = out * s
        return out

    def to_dict(self) -> dict:
        return {
            "degree": self.d,
            "basepoint": {"re": self.basepoint.real, "im": self.basepoint.imag},
            "branch_points": [b.to_dict() for b in self.branch_points],
            "total": self.total.to_dict(),
            "genus": self.genus,
        }


def config_genus(monodromies: Sequence[Permutation], n: int, d: int) -> int:
    """Genus of the compactified cover from ``d + n - sum N(sigma_i) = 2 - 2g``."""
    twice = 2 - n - d + sum(s.norm() for s in monodromies)
    if twice < 0 or twice % 2:
        raise DomainError(f"non-integral genus: 2g = {twice}")
    return twice // 2


def monodromy(f: MonicPolynomial, cluster_tol: float = 1e-8,
              opts: TrackingOptions = TrackingOptions()) -> HurwitzConfiguration:
    """Branch points and their monodromy permutations for the cover ``f: C -> C``."""
    d = f.degree
    if d < 2:
        raise DomainError("degree must be at least 2")
    cvs = critical_values(f, cluster_tol)
    system = loop_system([c for c, _ in cvs])
    mult = {c: m for c, m in cvs}
    fibre = _labelled_fibre(f, system.far_base, opts)
    branch = []
    for loop in system.loops:
        z1 = fibre
        for a, b in loop.stem_pieces():
            z1 = track(f, *_segment(a, b), z1, opts)
        z2 = track(f, loop.arc, loop.arc_velocity, z1, opts)
        lift = _match(z1, z2)  # sheet j ends where sheet lift[j] started
        sigma = Permutation(lift).inverse()
        m = mult[loop.center]
        if sigma.norm() != m:
            raise NumericalError(
                "monodromy norm disagrees with critical multiplicity",
                {"location": loop.center, "norm": sigma.norm(), "multiplicity": m},
            )
        branch.append(BranchPoint(loop.center, m, sigma))
    total = normal_form([b.monodromy for b in branch])
    genus = config_genus([b.monodromy for b in branch], 1, d)
    return HurwitzConfiguration(
        d, system.basepoint, branch, total, genus, 1,
        meta={"far_base": system.far_base, "radii": [l.radius for l in system.loops]},
    )


@dataclass
class RescaleResult:
    poly: MonicPolynomial
    t: float
    shift: complex  # constant added after scaling, so critical values map to t^d * v + shift


def rescale_into_rectangle(f: MonicPolynomial, cluster_tol: float = 1e-8) -> RescaleResult:
    """``t^d f(z/t) + shift`` with critical values inside the open unit square.

    ``t = 1`` and ``shift = 0`` when they already are.  Otherwise ``t`` shrinks
    the spread of the critical values below 0.8 and ``shift`` recentres them at
    ``(1 + i)/2``.
    """
    d = f.degree
    vals = [c for c, _ in critical_values(f, cluster_tol)]

    def inside(vs):
        return all(0 < v.real < 1 and 0 < v.imag < 1 for v in vs)

    if inside(vals):
        return RescaleResult(f, 1.0, 0j)
    re = [v.real for v in vals]
    im = [v.imag for v in vals]
    width = max(max(re) - min(re), max(im) - min(im))
    td = min(1.0, 0.8 / width) if width > 0 else 1.0
    t = td ** (1.0 / d)
    centre = complex((max(re) + min(re)) / 2, (max(im) + min(im)) / 2)
    shift = complex(0.5, 0.5) - td * centre
    c = [f.coeffs[k] * t ** (d - k) for k in range(d)]
    c[0] += shift
    return RescaleResult(MonicPolynomial(c), t, shift)
