"""The completion of the geodesic PMQ on S_d.

An element is a triple ``(sigma; B_1..B_l; r_1..r_l)``: the total monodromy
``sigma``, an unordered partition of {1..d} into blocks, and for every block the
number of transpositions supported in it.  It is the normal form of any
transposition word up to Hurwitz moves, i.e. it labels a connected component of
the Hurwitz space.

A triple is realizable (lies in the image of ``normal_form``) iff

* every cycle of ``sigma`` lies inside one block;
* singleton blocks carry ``r = 0``;
* for a block ``B`` with ``|B| >= 2``: ``r(B) = N(sigma_B) (mod 2)`` and
  ``r(B) >= 2|B| - 2 - N(sigma_B)`` (Riemann-Hurwitz for a connected cover of the
  sphere by ``|B|`` sheets with ``r(B)`` simple branch points).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import DomainError
from .pmq_core import Permutation, long_cycle, transposition

__all__ = [
    "CompletionElement",
    "EnvelopingElement",
    "embed",
    "normal_form",
    "normal_form_of_transpositions",
    "geodesic_transpositions",
    "canonical_factorization",
    "multiply",
    "completion_norm",
    "to_enveloping",
    "unit",
    "include",
    "make_klud_g",
    "make_kld_g",
    "totmon_e",
    "totmon_e_prime",
    "stab_genus",
    "stab_degree",
    "is_propagator_witness",
    "set_partitions",
    "min_block_count",
]


def min_block_count(size: int, block_norm: int) -> int:
    """Least number of transpositions connecting ``size`` points with product of norm ``block_norm``."""
    if size == 1:
        return 0
    return 2 * size - 2 - block_norm


def _canon_blocks(blocks, r):
    pairs = sorted((tuple(sorted(int(x) for x in b)), int(c)) for b, c in zip(blocks, r))
    return tuple(b for b, _ in pairs), tuple(c for _, c in pairs)


@dataclass(frozen=True, eq=True)
class CompletionElement:
    """Normal form ``(sigma; blocks; r)``; blocks sorted by minimum, ``r`` aligned with them."""

    sigma: Permutation
    blocks: tuple
    r: tuple

    def __init__(self, sigma: Permutation, blocks: Iterable[Iterable[int]], r: Iterable[int], *, check: bool = True):
        blocks = [tuple(b) for b in blocks]
        r = [int(c) for c in r]
        if len(blocks) != len(r):
            raise DomainError("blocks and r must have the same length")
        b, c = _canon_blocks(blocks, r)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "blocks", b)
        object.__setattr__(self, "r", c)
        if check:
            self.validate()

    @classmethod
    def from_blocks(cls, sigma: Permutation, weighted: dict) -> "CompletionElement":
        """Build from ``{block: r}`` for the non-singleton blocks; missing points become singletons."""
        covered = set()
        blocks, r = [], []
        for b, c in weighted.items():
            blocks.append(tuple(b))
            r.append(c)
            covered.update(b)
        for x in range(1, sigma.d + 1):
            if x not in covered:
                blocks.append((x,))
                r.append(0)
        return cls(sigma, blocks, r)

    @property
    def d(self) -> int:
        return self.sigma.d

    def validate(self) -> None:
        d = self.d
        pts = [x for b in self.blocks for x in b]
        if sorted(pts) != list(range(1, d + 1)):
            raise DomainError(f"blocks {self.blocks} are not a partition of 1..{d}")
        where = {x: i for i, b in enumerate(self.blocks) for x in b}
        for cyc in self.sigma.cycles():
            if len({where[x] for x in cyc}) != 1:
                raise DomainError(f"cycle {cyc} of sigma straddles blocks")
        for b, c in zip(self.blocks, self.r):
            if c < 0:
                raise DomainError("negative transposition count")
            nb = self.sigma.norm_on(b)
            if len(b) == 1:
                if c != 0:
                    raise DomainError(f"singleton block {b} must carry r = 0")
                continue
            if (c - nb) % 2:
                raise DomainError(f"block {b}: r = {c} has the wrong parity (norm {nb})")
            if c < min_block_count(len(b), nb):
                raise DomainError(
                    f"block {b}: r = {c} too small to connect it (need >= {min_block_count(len(b), nb)})"
                )

    def is_valid(self) -> bool:
        try:
            self.validate()
        except DomainError:
            return False
        return True

    def weighted_blocks(self) -> dict:
        return dict(zip(self.blocks, self.r))

    def key(self) -> tuple:
        return (self.sigma.image0, self.blocks, self.r)

    def __lt__(self, other):
        return self.key() < other.key()

    def __mul__(self, other: "CompletionElement") -> "CompletionElement":
        return multiply(self, other)

    def __pow__(self, k: int) -> "CompletionElement":
        out = unit(self.d)
        for _ in range(k):
            out = multiply(out, self)
        return out

    def __repr__(self):
        inner = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"({self.sigma.cycle_string()}; {inner}; {','.join(map(str, self.r))})"

    def norm(self) -> int:
        return sum(self.r)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "sigma": list(self.sigma.image),
            "blocks": [list(b) for b in self.blocks],
            "r": list(self.r),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "CompletionElement":
        sigma = Permutation.from_images(data["sigma"])
        if "d" in data and int(data["d"]) != sigma.d:
            raise DomainError("field d disagrees with sigma")
        return cls(sigma, data["blocks"], data["r"])

    @classmethod
    def from_json(cls, text: str) -> "CompletionElement":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class EnvelopingElement:
    """Element ``(n, sigma)`` of the index-two subgroup of Z x S_d with ``n = parity(sigma) mod 2``."""

    n: int
    sigma: Permutation

    def __post_init__(self):
        if (self.n - self.sigma.parity()) % 2:
            raise DomainError(f"({self.n}, {self.sigma!r}) violates the parity condition")

    def __mul__(self, other: "EnvelopingElement") -> "EnvelopingElement":
        return EnvelopingElement(self.n + other.n, self.sigma * other.sigma)

    def inverse(self) -> "EnvelopingElement":
        return EnvelopingElement(-self.n, self.sigma.inverse())


# -- normal forms ----------------------------------------------------------


def geodesic_transpositions(sigma: Permutation) -> list:
    """Minimal-length transposition word for ``sigma``: ``(a1..am) -> (a1,a2)(a2,a3)...(a_{m-1},a_m)``."""
    out = []
    for cyc in sigma.cycles():
        for a, b in zip(cyc, cyc[1:]):
            out.append((a, b))
    return out


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def normal_form_of_transpositions(d: int, pairs: Sequence[tuple]) -> CompletionElement:
    """Normal form of an ordered word of transpositions given as 1-based pairs."""
    img = list(range(d))
    uf = _UnionFind(d)
    for a, b in pairs:
        a, b = a - 1, b - 1
        if a == b or not (0 <= a < d and 0 <= b < d):
            raise DomainError(f"bad transposition ({a + 1},{b + 1}) in degree {d}")
        # left-to-right product: new = old * (a b), i.e. (a b) acts first
        img[a], img[b] = img[b], img[a]
        uf.union(a, b)
    comps: dict = {}
    for x in range(d):
        comps.setdefault(uf.find(x), []).append(x + 1)
    count = {root: 0 for root in comps}
    for a, _ in pairs:
        count[uf.find(a - 1)] += 1
    roots = list(comps)
    return CompletionElement(
        Permutation(img, check=False), [comps[k] for k in roots], [count[k] for k in roots], check=False
    )


def normal_form(factors: Sequence[Permutation]) -> CompletionElement:
    """Normal form of an ordered sequence of non-unit PMQ elements."""
    factors = list(factors)
    if not factors:
        raise DomainError("normal_form of an empty sequence needs a degree; use unit(d)")
    d = factors[0].d
    pairs = []
    for f in factors:
        if f.d != d:
            raise DomainError("factors of different degree")
        if f.is_identity():
            raise DomainError("factor sequences may not contain the unit")
        pairs.extend(geodesic_transpositions(f))
    return normal_form_of_transpositions(d, pairs)


def unit(d: int) -> CompletionElement:
    return CompletionElement(Permutation.identity(d), [(x,) for x in range(1, d + 1)], [0] * d, check=False)


def embed(sigma: Permutation) -> CompletionElement:
    """Image of a PMQ element: blocks are its cycles, each carrying its own norm."""
    cyc = sigma.cycles()
    return CompletionElement(sigma, cyc, [len(c) - 1 for c in cyc], check=False)


def canonical_factorization(a: CompletionElement) -> list:
    """A deterministic transposition word (list of :class:`Permutation`) with normal form ``a``.

    Per block, in order of minimum element: a geodesic word for ``sigma_B``, then
    a doubled transposition joining each further cycle to the block's first cycle,
    then the first such transposition (or a block's first adjacent pair) doubled
    as padding until ``r(B)`` is reached.
    """
    a.validate()
    d = a.d
    pairs = []
    cyc_of = {c[0]: c for c in a.sigma.cycles()}
    for b, count in zip(a.blocks, a.r):
        if len(b) == 1:
            continue
        block_cycles = [cyc_of[x] for x in b if x in cyc_of]
        word = []
        for c in block_cycles:
            word.extend(zip(c, c[1:]))
        anchor = block_cycles[0][0]
        for c in block_cycles[1:]:
            word += [(anchor, c[0]), (anchor, c[0])]
        pad = (b[0], b[1])
        while len(word) < count:
            word += [pad, pad]
        pairs.extend(word)
    return [transposition(d, i, j) for i, j in pairs]


def multiply(a: CompletionElement, b: CompletionElement) -> CompletionElement:
    """Product in the completion: merge overlapping non-singleton blocks and add counts."""
    if a.d != b.d:
        raise DomainError(f"degree mismatch {a.d} != {b.d}")
    d = a.d
    uf = _UnionFind(d)
    for blocks in (a.blocks, b.blocks):
        for blk in blocks:
            for x in blk[1:]:
                uf.union(blk[0] - 1, x - 1)
    comps: dict = {}
    for x in range(d):
        comps.setdefault(uf.find(x), []).append(x + 1)
    count = {root: 0 for root in comps}
    for elem in (a, b):
        for blk, c in zip(elem.blocks, elem.r):
            count[uf.find(blk[0] - 1)] += c
    roots = list(comps)
    return CompletionElement(a.sigma * b.sigma, [comps[k] for k in roots], [count[k] for k in roots], check=False)


def completion_norm(a: CompletionElement) -> int:
    return sum(a.r)


def to_enveloping(a: CompletionElement) -> EnvelopingElement:
    return EnvelopingElement(completion_norm(a), a.sigma)


def include(a: CompletionElement, d: int) -> CompletionElement:
    """View ``a`` in degree ``d >= a.d``; new points become singleton blocks."""
    if d < a.d:
        raise DomainError("cannot include into a smaller degree")
    blocks = list(a.blocks) + [(x,) for x in range(a.d + 1, d + 1)]
    r = list(a.r) + [0] * (d - a.d)
    return CompletionElement(a.sigma.extend(d), blocks, r, check=False)


# -- distinguished elements -------------------------------------------------


def _klud_permutation(d_vec: Sequence[int]) -> tuple:
    starts = []
    nxt = 1
    for di in d_vec:
        starts.append(nxt)
        nxt += di
    d = nxt - 1
    perm = Permutation.from_cycles(d, [range(s, s + di) for s, di in zip(starts, d_vec)])
    return perm, starts


def make_klud_g(g: int, d_vec: Sequence[int]) -> CompletionElement:
    """Product ``(1,2)^{2g} . kappa^ud . tr_2 tr_2 ... tr_n tr_n`` evaluated through ``normal_form``."""
    d_vec = [int(x) for x in d_vec]
    if g < 0:
        raise DomainError("genus must be non-negative")
    if not d_vec or any(x < 1 for x in d_vec):
        raise DomainError("pole orders must be positive")
    kappa, starts = _klud_permutation(d_vec)
    d = kappa.d
    if d < 2:
        raise DomainError("d = sum of pole orders must be at least 2")
    t12 = transposition(d, 1, 2)
    factors = [t12] * (2 * g)
    if not kappa.is_identity():
        factors.append(kappa)
    for s in starts[1:]:
        tr = transposition(d, s - 1, s)
        factors += [tr, tr]
    return normal_form(factors)


def make_kld_g(g: int, d: int) -> CompletionElement:
    """One pole of order ``d``: ``(lc_d; {1..d}; d - 1 + 2g)``."""
    return make_klud_g(g, [d])


def totmon_e(d: int) -> CompletionElement:
    """``(1,2)`` repeated ``2d - 2`` times."""
    return normal_form([transposition(d, 1, 2)] * (2 * d - 2))


def totmon_e_prime(d: int) -> CompletionElement:
    """``(1,2)(1,2)(2,3)(2,3)...(d-1,d)(d-1,d)``."""
    factors = []
    for j in range(1, d):
        tr = transposition(d, j, j + 1)
        factors += [tr, tr]
    return normal_form(factors)


def stab_genus(a: CompletionElement) -> CompletionElement:
    """Left multiplication by ``(1,2)`` twice."""
    t = embed(transposition(a.d, 1, 2))
    return multiply(multiply(t, t), a)


def stab_degree(a: CompletionElement) -> CompletionElement:
    """Include into degree ``d + 1`` and multiply on the right by ``(d, d+1)``."""
    d = a.d
    return multiply(include(a, d + 1), embed(transposition(d + 1, d, d + 1)))


# -- propagator search -------------------------------------------------------


def set_partitions(items: Sequence[int]) -> Iterator[list]:
    """All set partitions of ``items`` (each a list of lists, items kept in order)."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _even_distributions(total: int, minima: list) -> Iterator[tuple]:
    """Tuples ``r`` with ``r_i >= minima[i]``, ``r_i - minima[i]`` even, summing to ``total``."""
    spare = total - sum(minima)
    if spare < 0 or spare % 2:
        return
    pairs = spare // 2
    n = len(minima)
    if n == 0:
        if pairs == 0:
            yield ()
        return

    def rec(i, left):
        if i == n - 1:
            yield (left,)
            return
        for k in range(left + 1):
            for tail in rec(i + 1, left - k):
                yield (k,) + tail

    for extra in rec(0, pairs):
        yield tuple(m + 2 * e for m, e in zip(minima, extra))


def _identity_elements(d: int, total: int) -> Iterator[CompletionElement]:
    ident = Permutation.identity(d)
    for part in set_partitions(range(1, d + 1)):
        big = [b for b in part if len(b) > 1]
        minima = [2 * len(b) - 2 for b in big]
        for r in _even_distributions(total, minima):
            yield CompletionElement.from_blocks(ident, dict(zip(map(tuple, big), r)))


def is_propagator_witness(x: CompletionElement, max_k: int) -> Optional[tuple]:
    """Find ``(y, k)`` with ``x * y = e'^k`` and ``y`` in the identity-monodromy submonoid.

    Returns the witness with smallest ``k`` and, for that ``k``, the least ``y``
    under the block/count ordering, or ``None`` if no ``k <= max_k`` works.
    """
    if not x.sigma.is_identity():
        raise DomainError("propagator search is restricted to elements with trivial monodromy")
    d = x.d
    ep = totmon_e_prime(d)
    for k in range(1, max_k + 1):
        target = ep ** k
        rest = completion_norm(target) - completion_norm(x)
        if rest < 0:
            continue
        found = [y for y in _identity_elements(d, rest) if multiply(x, y) == target]
        if found:
            return min(found, key=lambda y: (y.blocks, y.r)), k
    return None
