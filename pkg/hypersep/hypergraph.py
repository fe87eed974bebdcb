"""
Hypergraphs with 1-indexed vertices and edges.

Edges keep multiset semantics: the same vertex set may appear several times and
each occurrence is an independent edge.
"""

import logging
from dataclasses import dataclass, field
from math import ceil

import networkx as nx

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"Vertex count must be non-negative, got {self.n}.")
        edges = tuple(frozenset(edge) for edge in self.edges)
        for index, edge in enumerate(edges, start=1):
            if not edge:
                raise ValueError(f"Edge {index} is empty.")
            for vertex in edge:
                if not 1 <= vertex <= self.n:
                    raise ValueError(
                        f"Edge {index} has vertex {vertex} outside [1, {self.n}]."
                    )
        object.__setattr__(self, "edges", edges)

    @property
    def m(self):
        return len(self.edges)

    @property
    def vertices(self):
        return range(1, self.n + 1)

    def edge(self, index):
        """Return the vertex set of the 1-based edge ``index``."""
        return self.edges[index - 1]

    def edge_indices(self):
        return range(1, self.m + 1)

    def incidence(self):
        """Map every vertex to the sorted list of edge indices containing it."""
        incident = {vertex: [] for vertex in self.vertices}
        for index, edge in enumerate(self.edges, start=1):
            for vertex in edge:
                incident[vertex].append(index)
        return incident

    def degrees(self):
        degree = [0] * (self.n + 1)
        for edge in self.edges:
            for vertex in edge:
                degree[vertex] += 1
        return degree

    def is_uniform(self, r=None):
        sizes = {len(edge) for edge in self.edges}
        if r is None:
            return len(sizes) <= 1
        return sizes <= {r}

    def max_edge_size(self):
        return max((len(edge) for edge in self.edges), default=0)


@dataclass(frozen=True)
class Component:
    vertices: frozenset
    edges: frozenset


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple
    isolated_vertices: frozenset = field(default_factory=frozenset)

    def edge_counts(self):
        return tuple(len(component.edges) for component in self.components)


def incidence_graph(hypergraph, removed=frozenset()):
    """
    Bipartite graph joining each vertex to the edges that contain it.

    Vertices are integer nodes and edge ``i`` is the node ``("edge", i)``;
    edges in ``removed`` are left out. Vertices in no kept edge stay isolated.
    """
    graph = nx.Graph()
    graph.add_nodes_from(hypergraph.vertices)
    for index, edge in enumerate(hypergraph.edges, start=1):
        if index in removed:
            continue
        graph.add_edges_from((("edge", index), vertex) for vertex in edge)
    return graph


def _split_nodes(nodes):
    vertices, edges = set(), set()
    for node in nodes:
        if isinstance(node, tuple):
            edges.add(node[1])
        else:
            vertices.add(node)
    return frozenset(vertices), frozenset(edges)


def connected_components(hypergraph):
    """
    Split ``hypergraph`` into connected components.

    Components are ordered by their minimum vertex id; vertices in no edge are
    reported separately as isolated vertices.
    """
    components, isolated = [], set()
    for nodes in nx.connected_components(incidence_graph(hypergraph)):
        vertices, edges = _split_nodes(nodes)
        if edges:
            components.append(Component(vertices, edges))
        else:
            isolated |= vertices
    components.sort(key=lambda component: min(component.vertices))
    return ComponentDecomposition(tuple(components), frozenset(isolated))


def component_edge_counts(hypergraph, removed=frozenset()):
    """
    Edge counts of the components of ``hypergraph`` once ``removed`` edges are
    deleted, ordered by each component's minimum vertex id.
    """
    graph = incidence_graph(hypergraph, frozenset(removed))
    counts = []
    for nodes in nx.connected_components(graph):
        vertices, edges = _split_nodes(nodes)
        if edges:
            counts.append((min(vertices), len(edges)))
    return tuple(count for _, count in sorted(counts))


def max_degree(hypergraph):
    return max(hypergraph.degrees(), default=0)


def edge_partition(hypergraph, vertex_set):
    """
    Classify every edge against ``vertex_set``.

    Returns ``(inside, outside, crossing)``: edges contained in the set, edges
    disjoint from it, and edges meeting both the set and its complement.
    """
    vertex_set = frozenset(vertex_set)
    inside, outside, crossing = set(), set(), set()
    for index, edge in enumerate(hypergraph.edges, start=1):
        common = len(edge & vertex_set)
        if common == len(edge):
            inside.add(index)
        elif common == 0:
            outside.add(index)
        else:
            crossing.add(index)
    return frozenset(inside), frozenset(outside), frozenset(crossing)


def remove_edges(hypergraph, removed):
    """
    Delete the edges in ``removed``.

    Returns the new hypergraph and a tuple mapping each new edge index
    (position + 1) to its index in ``hypergraph``.
    """
    removed = frozenset(removed)
    kept = [index for index in hypergraph.edge_indices() if index not in removed]
    reduced = Hypergraph(hypergraph.n, tuple(hypergraph.edge(i) for i in kept))
    return reduced, tuple(kept)


@dataclass(frozen=True)
class PaddingReport:
    """
    How :func:`uniformize` changed a hypergraph.

    ``vertex_map`` maps every output vertex to its input vertex, or to ``None``
    for padding vertices. ``padding`` maps edge indices (shared by input and
    output) to the output ids of the vertices added to them.
    """

    vertex_map: dict
    padding: dict
    blocks: int

    @property
    def added_vertices(self):
        return sum(1 for original in self.vertex_map.values() if original is None)


def uniformize(hypergraph, r, k):
    """
    Pad every edge smaller than ``r`` so the result is ``r``-uniform.

    Short edges are split, in index order, into blocks of ``k``; each block
    gets ``r`` fresh vertices (ids n+1, n+2, ... in block order) and each edge
    in the block takes the first fresh vertices it needs. Isolated vertices
    are then removed and the remaining vertices renumbered in increasing
    order. Edge indices are preserved, so a separator of the output is a
    separator of the input.
    """
    if k < 1:
        raise ValueError(f"Degree bound must be at least 1, got {k}.")
    if max_degree(hypergraph) > k:
        raise ValueError(f"Maximum degree exceeds the degree bound k={k}.")
    for index, edge in enumerate(hypergraph.edges, start=1):
        if len(edge) > r:
            raise ValueError(f"Edge {index} has {len(edge)} vertices, more than r={r}.")

    short = [i for i in hypergraph.edge_indices() if len(hypergraph.edge(i)) < r]
    blocks = ceil(len(short) / k)
    padded_edges = list(hypergraph.edges)
    fresh_padding = {}
    for position, index in enumerate(short):
        block = position // k
        first_fresh = hypergraph.n + block * r + 1
        edge = hypergraph.edge(index)
        added = tuple(range(first_fresh, first_fresh + r - len(edge)))
        padded_edges[index - 1] = edge | frozenset(added)
        fresh_padding[index] = added

    used = sorted(set().union(*padded_edges)) if padded_edges else []
    renumber = {old: new for new, old in enumerate(used, start=1)}
    vertex_map = {
        new: (old if old <= hypergraph.n else None) for old, new in renumber.items()
    }
    edges = tuple(frozenset(renumber[v] for v in edge) for edge in padded_edges)
    padding = {
        index: tuple(renumber[v] for v in added)
        for index, added in fresh_padding.items()
    }
    report = PaddingReport(vertex_map, padding, blocks)
    logger.debug(
        "Uniformized %d short edges into %d blocks, %d padding vertices.",
        len(short),
        blocks,
        report.added_vertices,
    )
    return Hypergraph(len(used), edges), report
