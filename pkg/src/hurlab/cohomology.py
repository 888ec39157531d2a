"""Conjugation-invariant classes of the geodesic permutation quandle, graded by norm.

A basis element in degree ``2m`` is a cycle type ``lam`` (multiplicities of
cycle lengths ``i >= 2``) with ``sum (i-1) lam_i = m`` that fits into ``d``
points.  Passing from ``d + 1`` to ``d`` points keeps the cycle types that still
fit and kills the rest; for ``2m <= d`` nothing is killed and the count is the
partition number ``p(m)``.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .pmq_core import CycleType

__all__ = [
    "conjugacy_basis",
    "stable_dim",
    "partition_count",
    "GradedDimTable",
    "dim_table",
    "stabilization_map",
    "partition_to_cycle_type",
]


def _parts(m: int, largest: int):
    """Partitions of ``m`` into parts ``<= largest``, parts in decreasing order."""
    if m == 0:
        yield ()
        return
    for p in range(min(m, largest), 0, -1):
        for rest in _parts(m - p, p):
            yield (p,) + rest


def partition_to_cycle_type(parts, d: int) -> CycleType:
    """A part ``j`` becomes one cycle of length ``j + 1``."""
    counts: dict = {}
    for j in parts:
        counts[j + 1] = counts.get(j + 1, 0) + 1
    return CycleType.from_dict(d, counts)


def conjugacy_basis(d: int, m: int) -> list:
    if d < 2 or m < 0:
        raise DomainError("need d >= 2 and m >= 0")
    out = []
    for parts in _parts(m, m):
        if sum(j + 1 for j in parts) <= d:
            out.append(partition_to_cycle_type(parts, d))
    return sorted(out, key=lambda c: c.lam)


@lru_cache(maxsize=None)
def partition_count(m: int) -> int:
    """p(m) via Euler's pentagonal recurrence."""
    if m < 0:
        return 0
    if m == 0:
        return 1
    total, k = 0, 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > m:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(m - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= m:
            total += sign * partition_count(m - g2)
        k += 1
    return total


def stable_dim(m: int) -> int:
    if m < 0:
        raise DomainError("degree must be non-negative")
    return partition_count(m)


@dataclass
class GradedDimTable:
    d: int
    dims: dict = field(default_factory=dict)
    basis: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "dims": {str(m): v for m, v in self.dims.items()},
            "basis": {str(m): [c.as_dict for c in b] for m, b in self.basis.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d", "m", "dim", "stable_dim"])
        for m, v in self.dims.items():
            w.writerow([self.d, m, v, stable_dim(m)])
        return buf.getvalue()


def dim_table(d: int, m_max: int) -> GradedDimTable:
    t = GradedDimTable(d)
    for m in range(m_max + 1):
        t.basis[m] = conjugacy_basis(d, m)
        t.dims[m] = len(t.basis[m])
    return t


def stabilization_map(d: int, m: int) -> np.ndarray:
    """Matrix of the restriction from ``d + 1`` to ``d`` points in degree ``2m``.

    Rows index ``conjugacy_basis(d, m)``, columns ``conjugacy_basis(d + 1, m)``.
    """
    rows = conjugacy_basis(d, m)
    cols = conjugacy_basis(d + 1, m)
    where = {c.lam: i for i, c in enumerate(rows)}
    mat = np.zeros((len(rows), len(cols)), dtype=int)
    for j, c in enumerate(cols):
        if c.size <= d:
            mat[where[c.lam], j] = 1
    return mat
