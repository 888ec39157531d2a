import random

import pytest

from hurlab.completion import CompletionElement, min_block_count, set_partitions
from hurlab.pmq_core import Permutation


def random_element(rng: random.Random, d: int, extra: int = 2) -> CompletionElement:
    """Random realizable completion element of degree ``d``."""
    img = list(range(d))
    rng.shuffle(img)
    sigma = Permutation(img)
    cyc = sigma.cycles()
    # merge cycles into blocks at random
    groups: list = []
    for c in cyc:
        if groups and rng.random() < 0.5:
            rng.choice(groups).extend(c)
        else:
            groups.append(list(c))
    r = []
    for b in groups:
        lo = min_block_count(len(b), sigma.norm_on(b))
        r.append(0 if len(b) == 1 else lo + 2 * rng.randint(0, extra))
    return CompletionElement(sigma, groups, r)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
