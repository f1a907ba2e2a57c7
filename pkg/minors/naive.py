# minors/naive.py

"""Brute-force minor test used to cross-check the branch-and-bound search."""

import itertools

from config import main_config
from graphs.graph import Graph


def _realises(h: Graph, g: Graph, labels: list[int]) -> bool:
    t = h.n
    blocks = [[v for v in range(g.n) if labels[v] == b] for b in range(t)]
    if not all(g.is_connected_set(block) for block in blocks):
        return False
    touching = set()
    for u, v in g.edges:
        a, b = labels[u], labels[v]
        if a >= 0 and b >= 0 and a != b:
            touching.add((min(a, b), max(a, b)))
    for perm in itertools.permutations(range(t)):
        if all((min(perm[v], perm[w]), max(perm[v], perm[w])) in touching for v, w in h.edges):
            return True
    return False


def naive_minor(h: Graph, g: Graph) -> bool:
    """
    Decides whether H is a minor of G by trying every assignment of the
    vertices of G to "unused" or to one of |V(H)| branch sets.

    Branch sets are unlabelled during the assignment (restricted growth
    labels); every bijection onto V(H) is then tried.

    Raises:
        ValueError: If G has more than main_config.NAIVE_MAX_VERTICES vertices.
    """
    if g.n > main_config.NAIVE_MAX_VERTICES:
        raise ValueError(
            f"naive oracle is limited to {main_config.NAIVE_MAX_VERTICES} host vertices, got {g.n}"
        )
    t = h.n
    if t == 0:
        return True
    if t > g.n:
        return False

    labels = [-1] * g.n

    def assign(i: int, opened: int) -> bool:
        if g.n - i < t - opened:
            return False
        if i == g.n:
            return _realises(h, g, labels)
        labels[i] = -1
        if assign(i + 1, opened):
            return True
        for b in range(opened):
            labels[i] = b
            if assign(i + 1, opened):
                return True
        if opened < t:
            labels[i] = opened
            if assign(i + 1, opened + 1):
                return True
        labels[i] = -1
        return False

    return assign(0, 0)
