"""Dimension counts and Euler characteristics for surfaces with marked poles."""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import asdict, dataclass
from typing import Iterable

from .errors import DomainError

__all__ = ["SurfaceData", "DimensionRecord", "riemann_roch", "dims", "euler_check", "EulerReport", "dims_table_csv", "balanced_orders"]


@dataclass(frozen=True)
class SurfaceData:
    """Genus ``g`` with ``n`` poles of orders ``d_vec``."""

    g: int
    d_vec: tuple

    def __post_init__(self):
        object.__setattr__(self, "d_vec", tuple(int(x) for x in self.d_vec))
        if self.g < 0:
            raise DomainError("genus must be non-negative")
        if not self.d_vec:
            raise DomainError("need at least one pole")
        if any(x < 1 for x in self.d_vec):
            raise DomainError("pole orders must be positive")

    @property
    def n(self) -> int:
        return len(self.d_vec)

    @property
    def d(self) -> int:
        return sum(self.d_vec)

    @property
    def h(self) -> int:
        return 2 * self.g + self.n + self.d - 2


def riemann_roch(g: int, deg: int) -> int:
    """Dimension of sections of a degree-``deg`` divisor in the range where it is forced."""
    if g < 0:
        raise DomainError("genus must be non-negative")
    if deg < 2 * g - 1:
        raise DomainError(f"obstructed range: degree {deg} < 2g-1 = {2 * g - 1}")
    return deg - g + 1


@dataclass(frozen=True)
class DimensionRecord:
    g: int
    n: int
    d: int
    h: int
    harm_real: int
    charm_real: int
    ccO_fiber_complex: int
    ccO_fiber_valid: bool
    ccO_total_real: int
    teich_real: int
    moduli_real: int
    note: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def dims(s: SurfaceData) -> DimensionRecord:
    d, n, g = s.d, s.n, s.g
    valid = d >= 2 * g + n - 1
    note = ""
    if not valid:
        note = "below the stable range; the fibre dimension depends on the complex structure"
        if g >= 2 and n == 1 and d == 2:
            note += " (degree-2 maps only exist on hyperelliptic curves)"
    if g == 0 and n == 1:
        # the formula gives -2; the moduli space is a point, and -2 is the
        # dimension of the stack quotient by translations, which keeps
        # teich_real + 2 * fibre = 2h true
        note = "moduli space is a point; teich_real is the virtual value 6g-6+4n"
    return DimensionRecord(
        g=g,
        n=n,
        d=d,
        h=s.h,
        harm_real=3 * d - n,
        charm_real=2 * d - n + 1,
        ccO_fiber_complex=d - g + 1 - n,
        ccO_fiber_valid=valid,
        ccO_total_real=2 * s.h,
        teich_real=6 * g - 6 + 4 * n,
        moduli_real=6 * g - 6 + 4 * n,
        note=note,
    )


@dataclass(frozen=True)
class EulerReport:
    chi_branch: int  # d * chi(sphere minus k points) + n + sum of cycle counts
    chi_genus: int  # 2 - 2g
    consistent: bool


def euler_check(cfg) -> EulerReport:
    """Euler characteristic of the compactified cover, counted two ways.

    ``cfg`` needs ``d``, ``n_poles``, ``genus`` and ``monodromies``.  The first
    count removes the ``k`` branch values from the sphere, lifts, and puts back
    one point per cycle of each local monodromy plus the ``n`` poles.
    """
    d = cfg.d
    if d < 2:
        raise DomainError("degree must be at least 2")
    sigmas = list(cfg.monodromies)
    k = len(sigmas)
    lifted = d * (1 - k)  # sphere minus the k branch values and the point at infinity
    chi1 = lifted + cfg.n_poles + sum(s.cycle_count() for s in sigmas)
    chi2 = 2 - 2 * cfg.genus
    return EulerReport(chi1, chi2, chi1 == chi2)


def dims_table_csv(g_range: Iterable[int], n_range: Iterable[int], d_range: Iterable[int]) -> str:
    """CSV of :func:`dims` over all ``(g, n, d)``, with pole orders as balanced as possible."""
    buf = io.StringIO()
    fields = list(DimensionRecord.__dataclass_fields__)
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for g, n, d in itertools.product(g_range, n_range, d_range):
        if d < n:
            continue
        writer.writerow(dims(SurfaceData(g, balanced_orders(n, d))).as_dict())
    return buf.getvalue()


def balanced_orders(n: int, d: int) -> tuple:
    if n < 1 or d < n:
        raise DomainError("need 1 <= n <= d")
    q, r = divmod(d, n)
    return tuple(q + 1 if i < r else q for i in range(n))
