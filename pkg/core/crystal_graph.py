# core/crystal_graph.py

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, List, Optional, Tuple

from core.errors import InvariantError, check_bound
from core.weights import WeightExpr


class Crystal(ABC):
    """
    Common interface of the crystals in this package.

    Vertices are immutable values. Subclasses supply the Kashiwara operators; epsilon and
    phi default to iterating them.
    """

    e: int

    @abstractmethod
    def highest_weight_vertex(self):
        """The vertex the connected component of interest is generated from."""

    @abstractmethod
    def e_tilde(self, x, i):
        """Returns the raised vertex or None."""

    @abstractmethod
    def f_tilde(self, x, i):
        """Returns the lowered vertex or None."""

    @abstractmethod
    def weight(self, x) -> WeightExpr:
        ...

    @abstractmethod
    def vertex_name(self, x) -> str:
        ...

    def sort_key(self, x):
        return self.vertex_name(x)

    def epsilon(self, x, i) -> int:
        count = 0
        while True:
            x = self.e_tilde(x, i)
            if x is None:
                return count
            count += 1

    def phi(self, x, i) -> int:
        return self.epsilon(x, i) + self.weight(x).pairing(i)

    def colors(self) -> range:
        return range(self.e)


@dataclass
class CrystalGraph:
    """
    A finite layered digraph with Z/eZ-colored edges.

    Layer n holds the canonical names of the vertices at depth n; edges are
    (source, target, color) triples sorted canonically.
    """
    e: int
    name: str
    layers: List[List[str]] = field(default_factory=list)
    edges: List[Tuple[str, str, int]] = field(default_factory=list)

    @property
    def vertex_count(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def layer_sizes(self) -> List[int]:
        return [len(layer) for layer in self.layers]


def explore(crystal: Crystal, max_rank: int, bound: int, name: str,
            start=None, on_vertex: Optional[Callable] = None) -> Tuple[CrystalGraph, List[List]]:
    """
    Breadth-first search over f_tilde from the highest weight vertex.

    Args:
        crystal (Crystal): The crystal to explore.
        max_rank (int): Number of layers below the start vertex.
        bound (int): Configured upper limit for max_rank.
        name (str): Graph name used in serialized output.
        start: Start vertex; defaults to crystal.highest_weight_vertex().
        on_vertex (Callable): Optional hook called with each new vertex.

    Returns:
        The CrystalGraph and the layers as lists of vertex objects.
    """
    check_bound("max_rank", max_rank, bound)
    start = crystal.highest_weight_vertex() if start is None else start
    layers = [[start]]
    seen: Dict[Hashable, int] = {start: 0}
    edges = []
    for depth in range(max_rank):
        next_layer = {}
        for x in layers[-1]:
            for i in crystal.colors():
                y = crystal.f_tilde(x, i)
                if y is None:
                    continue
                if y in seen and seen[y] != depth + 1:
                    raise InvariantError(f"vertex {crystal.vertex_name(y)} reached at two depths")
                seen[y] = depth + 1
                next_layer[y] = True
                edges.append((crystal.vertex_name(x), crystal.vertex_name(y), i))
        layer = sorted(next_layer, key=crystal.sort_key)
        if on_vertex is not None:
            for y in layer:
                on_vertex(y)
        layers.append(layer)
        logging.debug(f"{name}: layer {depth + 1} has {len(layer)} vertices")
    graph = CrystalGraph(
        e=crystal.e,
        name=name,
        layers=[[crystal.vertex_name(x) for x in layer] for layer in layers],
        edges=sorted(edges),
    )
    return graph, layers
