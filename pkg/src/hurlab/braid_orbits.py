"""Hurwitz (braid) moves on factor sequences and orbit enumeration.

A right move at position ``i`` replaces ``(a_i, a_{i+1})`` by
``(a_{i+1}, a_{i+1}^-1 a_i a_{i+1})``; the left move is its inverse.  Both keep the
ordered product fixed.  Coalesce/split moves merge a geodesic adjacent pair into
its product or split a factor into a geodesic pair.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .completion import CompletionElement, normal_form, unit
from .errors import BudgetExceeded, DomainError, NotGeodesicError
from .pmq_core import Permutation, all_permutations, all_transpositions, partial_product

__all__ = [
    "FactorSequence",
    "OrbitReport",
    "hurwitz_move",
    "coalesce_move",
    "split_move",
    "neighbours",
    "orbit",
    "orbit_partition",
    "classify_components",
    "split_by_blocks",
    "hurwitz_condition",
    "DEFAULT_NODE_CAP",
]

DEFAULT_NODE_CAP = 10**6


@dataclass(frozen=True)
class FactorSequence:
    """Ordered tuple of non-unit permutations of a common degree ``d``."""

    d: int
    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        for f in self.factors:
            if f.d != self.d:
                raise DomainError(f"factor of degree {f.d} in a degree-{self.d} sequence")
            if f.is_identity():
                raise DomainError("factor sequences may not contain the unit")

    @classmethod
    def of(cls, factors: Sequence[Permutation]) -> "FactorSequence":
        factors = tuple(factors)
        if not factors:
            raise DomainError("use FactorSequence(d, ()) for an empty sequence")
        return cls(factors[0].d, factors)

    @classmethod
    def parse(cls, d: int, text: str) -> "FactorSequence":
        """Parse cycle-notation factors separated by ``;`` or ``,`` between groups, e.g. ``"(1 2);(2 3)"``."""
        parts = [p for p in text.replace("),", ");").split(";") if p.strip()]
        return cls(d, tuple(Permutation.parse(p, d) for p in parts))

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __getitem__(self, i):
        return self.factors[i]

    def key(self) -> tuple:
        return tuple(f.image0 for f in self.factors)

    def __lt__(self, other: "FactorSequence"):
        return self.key() < other.key()

    def product(self) -> Permutation:
        out = Permutation.identity(self.d)
        for f in self.factors:
            out = out * f
        return out

    def normal_form(self) -> CompletionElement:
        if not self.factors:
            return unit(self.d)
        return normal_form(self.factors)

    def to_list(self) -> list:
        return [list(f.image) for f in self.factors]

    def __repr__(self):
        return "[" + ", ".join(f.cycle_string() for f in self.factors) + "]"


def _check_index(s: FactorSequence, i: int) -> None:
    if not 1 <= i < len(s):
        raise DomainError(f"move index {i} out of range 1..{len(s) - 1}")


def hurwitz_move(s: FactorSequence, i: int, direction: str = "right") -> FactorSequence:
    """Braid generator at the 1-based position ``i`` (acting on factors ``i, i+1``)."""
    _check_index(s, i)
    f = list(s.factors)
    a, b = f[i - 1], f[i]
    if direction == "right":
        f[i - 1], f[i] = b, a.conjugate(b)
    elif direction == "left":
        f[i - 1], f[i] = b.conjugate(a.inverse()), a
    else:
        raise DomainError(f"direction must be 'left' or 'right', not {direction!r}")
    return FactorSequence(s.d, tuple(f))


def coalesce_move(s: FactorSequence, i: int) -> FactorSequence:
    """Replace the adjacent pair at positions ``i, i+1`` by its geodesic product."""
    _check_index(s, i)
    prod = partial_product(s.factors[i - 1], s.factors[i])
    if prod is None:
        raise NotGeodesicError(f"factors {i} and {i + 1} do not form a geodesic pair")
    f = s.factors
    return FactorSequence(s.d, f[: i - 1] + (prod,) + f[i + 1:])


def split_move(s: FactorSequence, i: int, pair: tuple) -> FactorSequence:
    """Replace factor ``i`` (1-based) by ``(b, c)`` where ``b * c`` is a geodesic factorization of it."""
    if not 1 <= i <= len(s):
        raise DomainError(f"factor index {i} out of range")
    b, c = pair
    if b.is_identity() or c.is_identity():
        raise DomainError("split pieces must be non-units")
    if b * c != s.factors[i - 1] or partial_product(b, c) is None:
        raise NotGeodesicError("split pieces do not form a geodesic factorization")
    f = s.factors
    return FactorSequence(s.d, f[: i - 1] + (b, c) + f[i:])


@lru_cache(maxsize=None)
def _geodesic_splits(a: Permutation) -> tuple:
    out = []
    for b in all_permutations(a.d):
        if b.is_identity():
            continue
        c = b.inverse() * a
        if c.is_identity():
            continue
        if b.norm() + c.norm() == a.norm():
            out.append((b, c))
    return tuple(out)


def neighbours(s: FactorSequence, moves: str = "hurwitz") -> Iterable[FactorSequence]:
    """Sequences one move away; ``moves`` is ``"hurwitz"`` or ``"full"`` (adds coalesce/split)."""
    if moves not in ("hurwitz", "full"):
        raise DomainError(f"unknown move set {moves!r}")
    n = len(s)
    for i in range(1, n):
        yield hurwitz_move(s, i, "right")
        yield hurwitz_move(s, i, "left")
    if moves == "full":
        for i in range(1, n):
            if partial_product(s.factors[i - 1], s.factors[i]) is not None:
                yield coalesce_move(s, i)
        for i in range(1, n + 1):
            for pair in _geodesic_splits(s.factors[i - 1]):
                yield split_move(s, i, pair)


def orbit(s: FactorSequence, moves: str = "hurwitz", node_cap: int = DEFAULT_NODE_CAP) -> frozenset:
    """BFS closure of ``s`` under the chosen move set."""
    seen = {s}
    queue = deque([s])
    while queue:
        cur = queue.popleft()
        for nxt in neighbours(cur, moves):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > node_cap:
                    raise BudgetExceeded(f"orbit exceeded node cap {node_cap}")
                queue.append(nxt)
    return frozenset(seen)


def orbit_partition(seqs: Iterable[FactorSequence], moves: str = "hurwitz",
                    node_cap: int = DEFAULT_NODE_CAP) -> list:
    """Split a move-closed collection into orbits, each returned as a frozenset."""
    remaining = set(seqs)
    out = []
    total = 0
    while remaining:
        start = min(remaining)
        orb = orbit(start, moves, node_cap)
        total += len(orb)
        if total > node_cap:
            raise BudgetExceeded(f"orbit enumeration exceeded node cap {node_cap}")
        remaining -= orb
        out.append(orb)
    return out


def hurwitz_condition(d: int, k: int, sigma: Permutation) -> bool:
    """Transitive transposition k-tuples with product ``sigma`` exist iff this holds."""
    if d == 1:
        return k == 0  # S_1 has no transpositions
    excess = k - (2 * d - 2 - sigma.norm())
    return excess >= 0 and excess % 2 == 0


@dataclass
class OrbitReport:
    """Orbits of an enumerated family of sequences, with a normal-form classifier."""

    orbit_count: int
    orbits: list  # (representative, size, normal_form) per orbit, sorted by representative
    classifier: dict = field(default_factory=dict)  # normal form -> list of orbit indices
    enumerated: int = 0

    def fibers_match(self) -> bool:
        """True when every normal-form fiber is a single orbit (orbit partition = fiber partition)."""
        return all(len(v) == 1 for v in self.classifier.values())

    def transitive_counts(self) -> dict:
        """Number of orbits of transitive sequences for each total monodromy."""
        out: dict = {}
        for rep, _, nf in self.orbits:
            if len(nf.blocks) == 1:
                out[nf.sigma] = out.get(nf.sigma, 0) + 1
        return out

    def to_dict(self) -> dict:
        return {
            "orbit_count": self.orbit_count,
            "orbits": [
                {"size": size, "representative": rep.to_list(), "normal_form": nf.to_dict()}
                for rep, size, nf in self.orbits
            ],
        }


def _report(seqs: list, moves: str, node_cap: int) -> OrbitReport:
    parts = orbit_partition(seqs, moves, node_cap)
    infos = sorted((min(orb), len(orb), min(orb).normal_form()) for orb in parts)
    classifier: dict = {}
    for idx, (_, _, nf) in enumerate(infos):
        classifier.setdefault(nf, []).append(idx)
    return OrbitReport(len(infos), infos, classifier, enumerated=len(seqs))


def classify_components(d: int, k: int, transpositions_only: bool = True,
                        node_cap: int = DEFAULT_NODE_CAP) -> OrbitReport:
    """Enumerate every length-``k`` sequence and group it into Hurwitz orbits."""
    if d < 1 or k < 0:
        raise DomainError("need d >= 1 and k >= 0")
    if transpositions_only:
        alphabet = all_transpositions(d)
    else:
        alphabet = [p for p in all_permutations(d) if not p.is_identity()]
    if len(alphabet) ** k > node_cap:
        raise BudgetExceeded(f"{len(alphabet)}^{k} sequences exceed node cap {node_cap}")
    seqs = [FactorSequence(d, t) for t in itertools.product(alphabet, repeat=k)]
    return _report(seqs, "hurwitz", node_cap)


def split_by_blocks(s: FactorSequence) -> list:
    """Sub-sequences of ``s`` grouped by the block of its normal form containing each factor."""
    nf = s.normal_form()
    if len(nf.blocks) == 1:
        return [s]
    where = {x: i for i, b in enumerate(nf.blocks) for x in b}
    groups: dict = {}
    for f in s.factors:
        owners = {where[x] for x in f.support()}
        assert len(owners) == 1, "factor straddles blocks"
        groups.setdefault(owners.pop(), []).append(f)
    return [FactorSequence(s.d, tuple(groups[i])) for i in sorted(groups)]
