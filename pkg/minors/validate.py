# minors/validate.py

"""
Certificate checker for minor models.

Deliberately shares no code with the search: connectivity and edge
witnessing are checked through networkx on a fresh copy of G.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import networkx as nx

from blobbing.blobs import MinorModel
from graphs.graph import Graph


@dataclass(frozen=True)
class ModelCheck:
    valid: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.valid


def validate_model(model: MinorModel, h: Graph, g: Graph) -> ModelCheck:
    """
    Checks that `model` is a minor model of H in G.

    Conditions, in the order they are checked: one branch set per vertex of H,
    non-empty branch sets inside V(G), pairwise disjointness, connectivity of
    every branch set, and an edge of G between X_v and X_w for every edge vw
    of H.

    Returns:
        ModelCheck: Truthy when valid; otherwise carries the first violation.
    """
    if len(model.branch_sets) != h.n:
        return ModelCheck(False, f"expected {h.n} branch sets, got {len(model.branch_sets)}")

    host = nx.Graph()
    host.add_nodes_from(range(g.n))
    host.add_edges_from(g.edges)

    for v, branch in enumerate(model.branch_sets):
        if not branch:
            return ModelCheck(False, f"branch set of {v} is empty")
        stray = [u for u in branch if u not in host]
        if stray:
            return ModelCheck(False, f"branch set of {v} contains vertices {sorted(stray)} outside G")

    for v, w in itertools.combinations(range(h.n), 2):
        overlap = model.branch_sets[v] & model.branch_sets[w]
        if overlap:
            return ModelCheck(False, f"branch sets of {v} and {w} share {sorted(overlap)}")

    for v, branch in enumerate(model.branch_sets):
        if not nx.is_connected(host.subgraph(branch)):
            return ModelCheck(False, f"branch set of {v} is not connected")

    for v, w in h.edges:
        if not any(True for _ in nx.edge_boundary(host, model.branch_sets[v], model.branch_sets[w])):
            return ModelCheck(False, f"no edge of G between the branch sets of {v} and {w}")

    return ModelCheck(True)
