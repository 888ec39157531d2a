import itertools
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from hurlab.braid_orbits import FactorSequence, hurwitz_move
from hurlab.completion import (
    CompletionElement,
    EnvelopingElement,
    canonical_factorization,
    completion_norm,
    embed,
    include,
    is_propagator_witness,
    make_kld_g,
    make_klud_g,
    multiply,
    normal_form,
    normal_form_of_transpositions,
    set_partitions,
    stab_degree,
    stab_genus,
    to_enveloping,
    totmon_e,
    totmon_e_prime,
    unit,
)
from hurlab.errors import DomainError
from hurlab.pmq_core import Permutation, all_permutations, long_cycle, partial_product, transposition

from conftest import random_element
from oracles import reachable_states


def _state_to_element(d, state):
    perm, blocks, counts = state
    cnt = dict(counts)
    bl = [sorted(x + 1 for x in b) for b in blocks]
    return CompletionElement(Permutation(perm), bl, [cnt[b] for b in blocks], check=False)


def _all_valid(d, max_total):
    out = set()
    for sigma in all_permutations(d):
        cyc = sigma.cycles()
        for part in set_partitions(range(len(cyc))):
            blocks = [sorted(x for i in grp for x in cyc[i]) for grp in part]
            for r in itertools.product(range(max_total + 1), repeat=len(blocks)):
                if sum(r) > max_total:
                    continue
                e = CompletionElement(sigma, blocks, r, check=False)
                if e.is_valid():
                    out.add(e)
    return out


@pytest.mark.parametrize("d,max_len", [(2, 6), (3, 6), (4, 6), (5, 6)])
def test_realizable_elements_are_exactly_normal_forms(d, max_len):
    reached = {_state_to_element(d, s) for s in reachable_states(d, max_len)}
    assert reached == _all_valid(d, max_len)


def test_small_counts_rejected():
    # three points joined by two transpositions always have a 3-cycle as product
    bad = CompletionElement(Permutation.identity(3), [[1, 2, 3]], [2], check=False)
    assert not bad.is_valid()
    with pytest.raises(DomainError):
        bad.validate()
    assert CompletionElement(Permutation.identity(3), [[1, 2, 3]], [4]).norm() == 4
    with pytest.raises(DomainError):
        CompletionElement(Permutation.identity(2), [[1], [2]], [2, 0])
    with pytest.raises(DomainError):
        CompletionElement(Permutation.parse("(1 2)", 3), [[1, 2, 3]], [2])  # parity
    with pytest.raises(DomainError):
        CompletionElement(Permutation.parse("(1 2)", 3), [[1], [2, 3]], [0, 2])  # cycle straddles


def test_normal_form_of_word_matches_transposition_version():
    word = [(1, 2), (2, 3), (1, 2), (4, 5)]
    perms = [transposition(5, a, b) for a, b in word]
    assert normal_form(perms) == normal_form_of_transpositions(5, word)
    e = normal_form(perms)
    assert e.sigma == perms[0] * perms[1] * perms[2] * perms[3]
    assert e.blocks == ((1, 2, 3), (4, 5)) and e.r == (3, 1)


def test_canonical_factorization_round_trip(rng):
    for _ in range(500):
        a = random_element(rng, rng.randint(1, 7))
        word = canonical_factorization(a)
        got = normal_form(word) if word else unit(a.d)
        assert got == a


def test_associativity_and_unit(rng):
    for _ in range(10_000):
        d = rng.randint(1, 6)
        a, b, c = (random_element(rng, d) for _ in range(3))
        assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))
    a = random_element(rng, 4)
    assert multiply(unit(4), a) == a == multiply(a, unit(4))


def test_normal_form_is_multiplicative(rng):
    for _ in range(300):
        d = rng.randint(2, 6)
        s = [transposition(d, *rng.sample(range(1, d + 1), 2)) for _ in range(rng.randint(1, 5))]
        t = [transposition(d, *rng.sample(range(1, d + 1), 2)) for _ in range(rng.randint(1, 5))]
        assert normal_form(s + t) == multiply(normal_form(s), normal_form(t))


def test_normal_form_invariant_under_hurwitz_moves(rng):
    for _ in range(300):
        d = rng.randint(2, 6)
        factors = (Permutation(rng.sample(range(d), d)) for _ in range(4))
        seq = FactorSequence(d, tuple(f for f in factors if not f.is_identity()))
        if len(seq) < 2:
            continue
        i = rng.randint(1, len(seq) - 1)
        moved = hurwitz_move(seq, i, rng.choice(["left", "right"]))
        assert moved.normal_form() == seq.normal_form()
        assert moved.product() == seq.product()


@pytest.mark.parametrize("d", range(1, 5))
def test_embed_respects_geodesic_products(d):
    for s, t in itertools.product(all_permutations(d), repeat=2):
        p = partial_product(s, t)
        if p is not None:
            assert multiply(embed(s), embed(t)) == embed(p)


def test_enveloping_map_is_a_homomorphism(rng):
    for _ in range(200):
        d = rng.randint(2, 6)
        a, b = random_element(rng, d), random_element(rng, d)
        assert to_enveloping(multiply(a, b)) == to_enveloping(a) * to_enveloping(b)
    with pytest.raises(DomainError):
        EnvelopingElement(1, Permutation.identity(3))


def test_klud_values():
    assert make_klud_g(1, [2]).to_dict() == {"d": 2, "sigma": [2, 1], "blocks": [[1, 2]], "r": [3]}
    for g in range(4):
        for d in range(2, 8):
            assert make_kld_g(g, d) == CompletionElement(long_cycle(d), [range(1, d + 1)], [d - 1 + 2 * g])
    e = make_klud_g(0, [2, 1])
    assert e.sigma == Permutation.parse("(1 2)", 3) and e.blocks == ((1, 2, 3),) and e.r == (3,)
    with pytest.raises(DomainError):
        make_klud_g(0, [1])
    with pytest.raises(DomainError):
        make_klud_g(-1, [3])


@pytest.mark.parametrize("g,d_vec", [(g, v) for g in range(6) for v in [(2,), (1, 1), (3, 1), (2, 2, 1), (4, 3, 1), (8,)]])
def test_klud_norm_is_h(g, d_vec):
    h = 2 * g + len(d_vec) + sum(d_vec) - 2
    assert completion_norm(make_klud_g(g, d_vec)) == h


@pytest.mark.parametrize("d", range(2, 7))
def test_totmon_elements(d):
    ident = Permutation.identity(d)
    assert totmon_e(d) == CompletionElement(ident, [[1, 2]] + [[i] for i in range(3, d + 1)], [2 * d - 2] + [0] * (d - 2))
    assert totmon_e_prime(d) == CompletionElement(ident, [range(1, d + 1)], [2 * d - 2])


def test_stabilizations():
    k20 = make_kld_g(0, 2)
    assert stab_genus(k20) == make_kld_g(1, 2)
    assert stab_degree(k20) == make_kld_g(0, 3)
    assert include(k20, 4).blocks == ((1, 2), (3,), (4,))
    with pytest.raises(DomainError):
        include(k20, 1)


def test_propagator_witness_small():
    t = embed(transposition(3, 1, 2))
    y, k = is_propagator_witness(multiply(t, t), 3)
    assert k == 1
    assert multiply(multiply(t, t), y) == totmon_e_prime(3)
    with pytest.raises(DomainError):
        is_propagator_witness(t, 3)


def test_json_round_trip(rng):
    for _ in range(100):
        a = random_element(rng, rng.randint(1, 7))
        text = a.to_json()
        assert CompletionElement.from_json(text) == a
        assert json.loads(text) == a.to_dict()
    with pytest.raises(DomainError):
        CompletionElement.from_dict({"d": 3, "sigma": [2, 1], "blocks": [[1, 2]], "r": [1]})


def test_power_and_repr():
    a = embed(transposition(3, 1, 2))
    assert a ** 2 == multiply(a, a)
    assert repr(a ** 2) == "((); {1,2},{3}; 2,0)"
    assert a ** 0 == unit(3)
