# tests/mocks/graph_catalogue.py

import networkx as nx

from graphs.graph import Graph
from randgen.samplers import sample_gnp
from randgen.seeds import Seed


class GraphCatalogue:
    """
    Named graphs shared by the test modules.

    The atlas holds every graph on up to 7 vertices up to isomorphism,
    which makes it the exhaustive catalogue for small-host cross-checks.
    """

    @staticmethod
    def complete(n: int) -> Graph:
        return Graph.complete(n)

    @staticmethod
    def cycle(n: int) -> Graph:
        return Graph.cycle(n)

    @staticmethod
    def path(n: int) -> Graph:
        return Graph.path(n)

    @staticmethod
    def empty(n: int) -> Graph:
        return Graph.empty(n)

    @staticmethod
    def petersen() -> Graph:
        return Graph.from_networkx(nx.petersen_graph())

    @staticmethod
    def complete_bipartite(a: int, b: int) -> Graph:
        return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    @staticmethod
    def atlas(max_vertices: int, min_vertices: int = 1) -> list[Graph]:
        return [
            Graph.from_networkx(g)
            for g in nx.graph_atlas_g()
            if min_vertices <= g.number_of_nodes() <= max_vertices
        ]

    @staticmethod
    def random(n: int, p: float, seed: int, stream: int = 0) -> Graph:
        return sample_gnp(n, p, Seed(seed, stream))
