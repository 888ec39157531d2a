"""Permutations of {1..d} and the geodesic partially multiplicative quandle on them.

Composition convention
----------------------
``sigma * tau`` is the composite map ``x -> sigma(tau(x))``: the right factor acts
first.  This is the unique convention under which the ordered product of adjacent
transpositions ``(1,2)(2,3)...(d-1,d)`` equals the long cycle ``(1,2,...,d)``, and
every serialization in the package uses it.

All points are 1-based at the interface; internally images are stored 0-based.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import DomainError

__all__ = [
    "Permutation",
    "GeoElement",
    "CycleType",
    "norm",
    "partial_product",
    "is_geodesic",
    "conjugate",
    "cycles",
    "cycle_type",
    "long_cycle",
    "transposition",
    "all_permutations",
    "all_transpositions",
]


class Permutation:
    """A permutation of {1, ..., d}, immutable and hashable."""

    __slots__ = ("_img", "_hash")

    def __init__(self, image0: Sequence[int], *, check: bool = True):
        img = tuple(int(x) for x in image0)
        if check:
            if len(img) == 0:
                raise DomainError("permutation degree must be positive")
            if sorted(img) != list(range(len(img))):
                raise DomainError(f"not a bijection of 0..{len(img) - 1}: {img}")
        self._img = img
        self._hash = hash(img)

    # -- constructors --------------------------------------------------

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(range(d), check=False)

    @classmethod
    def from_images(cls, images: Iterable[int]) -> "Permutation":
        """Build from the 1-based one-line notation, e.g. ``[2, 3, 1]``."""
        return cls([int(x) - 1 for x in images])

    @classmethod
    def from_cycles(cls, d: int, cyc: Iterable[Sequence[int]]) -> "Permutation":
        """Build from 1-based cycles; ``(a1 a2 ... am)`` sends a1 -> a2 -> ... -> am -> a1."""
        img = list(range(d))
        seen = set()
        for c in cyc:
            c = [int(x) - 1 for x in c]
            for x in c:
                if not 0 <= x < d:
                    raise DomainError(f"point {x + 1} outside 1..{d}")
                if x in seen:
                    raise DomainError(f"point {x + 1} appears in two cycles")
                seen.add(x)
            for a, b in zip(c, c[1:] + c[:1]):
                img[a] = b
        return cls(img, check=False)

    @classmethod
    def parse(cls, text: str, d: Optional[int] = None) -> "Permutation":
        """Parse ``"2 3 1"`` (one-line) or ``"(1 2)(3 4 5)"`` (cycles; needs ``d`` or infers it)."""
        text = text.strip()
        if text.startswith("(") or text == "":
            groups = re.findall(r"\(([^()]*)\)", text)
            cyc = [[int(t) for t in re.split(r"[\s,]+", g.strip()) if t] for g in groups]
            if d is None:
                d = max((max(c) for c in cyc if c), default=1)
            return cls.from_cycles(d, cyc)
        perm = cls.from_images(int(t) for t in re.split(r"[\s,]+", text) if t)
        if d is not None and perm.d != d:
            raise DomainError(f"expected degree {d}, got {perm.d}")
        return perm

    # -- basic protocol ------------------------------------------------

    @property
    def d(self) -> int:
        return len(self._img)

    @property
    def image(self) -> tuple:
        """1-based one-line image."""
        return tuple(x + 1 for x in self._img)

    @property
    def image0(self) -> tuple:
        return self._img

    def __call__(self, i: int) -> int:
        return self._img[i - 1] + 1

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Permutation"):
        return (self.d, self._img) < (other.d, other._img)

    def __repr__(self):
        return f"Permutation({self.cycle_string()}, d={self.d})"

    def __str__(self):
        return " ".join(map(str, self.image))

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.d != other.d:
            raise DomainError(f"degree mismatch {self.d} != {other.d}")
        a = self._img
        return Permutation([a[x] for x in other._img], check=False)

    def __pow__(self, k: int) -> "Permutation":
        result = Permutation.identity(self.d)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result * base
        return result

    def inverse(self) -> "Permutation":
        inv = [0] * self.d
        for i, x in enumerate(self._img):
            inv[x] = i
        return Permutation(inv, check=False)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))

    def conjugate(self, tau: "Permutation") -> "Permutation":
        """``tau^-1 * self * tau``."""
        return tau.inverse() * self * tau

    def extend(self, d: int) -> "Permutation":
        """The same permutation viewed in S_d for ``d >= self.d`` (new points fixed)."""
        if d < self.d:
            raise DomainError("cannot shrink a permutation")
        return Permutation(self._img + tuple(range(self.d, d)), check=False)

    # -- cycle structure -----------------------------------------------

    def cycles(self) -> list:
        """All cycles including fixed points, each starting at its minimum, sorted by minimum."""
        seen = [False] * self.d
        out = []
        for start in range(self.d):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = self._img[x]
            out.append(tuple(cyc))
        return out

    def cycle_count(self) -> int:
        return len(self.cycles())

    def norm(self) -> int:
        return self.d - self.cycle_count()

    def parity(self) -> int:
        return self.norm() % 2

    def support(self) -> frozenset:
        return frozenset(i + 1 for i, x in enumerate(self._img) if i != x)

    def cycle_type(self) -> "CycleType":
        counts: dict = {}
        for c in self.cycles():
            if len(c) >= 2:
                counts[len(c)] = counts.get(len(c), 0) + 1
        return CycleType(self.d, tuple(sorted(counts.items())))

    def cycle_string(self) -> str:
        nontrivial = [c for c in self.cycles() if len(c) > 1]
        if not nontrivial:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in nontrivial)

    def norm_on(self, block: Iterable[int]) -> int:
        """Norm of the restriction to an invariant subset ``block`` (1-based)."""
        block = set(block)
        n_cycles = sum(1 for c in self.cycles() if c[0] in block)
        return len(block) - n_cycles


GeoElement = Permutation


@dataclass(frozen=True)
class CycleType:
    """Multiplicities ``lam = ((i, lambda_i), ...)`` of cycle lengths ``i >= 2``; fixed points dropped."""

    d: int
    lam: tuple = ()

    def __post_init__(self):
        if any(i < 2 or m < 0 for i, m in self.lam):
            raise DomainError(f"bad cycle type {self.lam}")
        if self.size > self.d:
            raise DomainError(f"cycle type {self.lam} does not fit in degree {self.d}")

    @classmethod
    def from_dict(cls, d: int, lam: dict) -> "CycleType":
        return cls(d, tuple(sorted((int(i), int(m)) for i, m in lam.items() if m)))

    @property
    def as_dict(self) -> dict:
        return dict(self.lam)

    @property
    def size(self) -> int:
        """Number of moved points, sum of i * lambda_i."""
        return sum(i * m for i, m in self.lam)

    @property
    def N(self) -> int:
        return sum((i - 1) * m for i, m in self.lam)

    def representative(self) -> Permutation:
        cyc = []
        nxt = 1
        for i, m in self.lam:
            for _ in range(m):
                cyc.append(range(nxt, nxt + i))
                nxt += i
        return Permutation.from_cycles(self.d, cyc)


# -- functional surface --------------------------------------------------


def norm(sigma: Permutation) -> int:
    """Word length with respect to all transpositions: d minus the number of cycles."""
    return sigma.norm()


def is_geodesic(sigma: Permutation, tau: Permutation) -> bool:
    return (sigma * tau).norm() == sigma.norm() + tau.norm()


def partial_product(sigma: Permutation, tau: Permutation) -> Optional[Permutation]:
    """The product in the geodesic PMQ, or ``None`` when the pair is not geodesic."""
    prod = sigma * tau
    if prod.norm() == sigma.norm() + tau.norm():
        return prod
    return None


def conjugate(sigma: Permutation, tau: Permutation) -> Permutation:
    """Quandle conjugation ``sigma^tau = tau^-1 sigma tau``."""
    return sigma.conjugate(tau)


def cycles(sigma: Permutation) -> list:
    return sigma.cycles()


def cycle_type(sigma: Permutation) -> CycleType:
    return sigma.cycle_type()


def long_cycle(d: int) -> Permutation:
    """``lc_d = (1, 2, ..., d)``."""
    return Permutation.from_cycles(d, [range(1, d + 1)])


def transposition(d: int, i: int, j: int) -> Permutation:
    if i == j:
        raise DomainError("a transposition needs two distinct points")
    return Permutation.from_cycles(d, [(i, j)])


def all_permutations(d: int) -> Iterator[Permutation]:
    from itertools import permutations

    for p in permutations(range(d)):
        yield Permutation(p, check=False)


def all_transpositions(d: int) -> list:
    return [transposition(d, i, j) for i in range(1, d + 1) for j in range(i + 1, d + 1)]
