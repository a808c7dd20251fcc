import os
import random
from itertools import combinations
from pathlib import Path

import pytest

from splitrel.graphs import SimpleGraph, TwoTerminalGraph, is_connected


@pytest.fixture(scope="session")
def cache_dir():
    """Ledger cache shared across the suite (and across runs)."""
    root = os.environ.get("SPLITREL_CACHE") or str(
        Path(__file__).resolve().parent.parent / ".splitrel-cache"
    )
    Path(root).mkdir(parents=True, exist_ok=True)
    return root


def random_connected_graph(rng: random.Random, n: int, m: int) -> SimpleGraph:
    pairs = list(combinations(range(n), 2))
    assert n - 1 <= m <= len(pairs)
    while True:
        g = SimpleGraph(n, tuple(rng.sample(pairs, m)))
        if is_connected(g):
            return g


def random_two_terminal(rng: random.Random, n: int, m: int) -> TwoTerminalGraph:
    g = random_connected_graph(rng, n, m)
    s, t = rng.sample(range(n), 2)
    return TwoTerminalGraph(g, s, t)


def k_n(n: int) -> SimpleGraph:
    return SimpleGraph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


def path_n(n: int) -> SimpleGraph:
    return SimpleGraph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_n(n: int) -> SimpleGraph:
    return SimpleGraph(n, tuple((i, (i + 1) % n) for i in range(n)))
