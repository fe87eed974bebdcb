"""Hypergraph and CSP builders shared by the test modules."""

import os
import shutil
import tempfile
import unittest
from itertools import product

from hypersep.csp import CSP, Constraint
from hypersep.hypergraph import Hypergraph


def path_graph(n):
    """P_n: vertices 1..n, edge i joins i and i + 1."""
    return Hypergraph(n, tuple({i, i + 1} for i in range(1, n)))


def cycle_graph(n):
    return Hypergraph(n, tuple({i, i % n + 1} for i in range(1, n + 1)))


def star(leaves):
    """Center 1 joined to each of 2..leaves + 1."""
    return Hypergraph(leaves + 1, tuple({1, i} for i in range(2, leaves + 2)))


def matching(pairs):
    return Hypergraph(2 * pairs, tuple({2 * i - 1, 2 * i} for i in range(1, pairs + 1)))


def triangle():
    return Hypergraph(3, ({1, 2}, {2, 3}, {1, 3}))


def complete_graph(n):
    return Hypergraph(
        n, tuple({u, v} for u in range(1, n + 1) for v in range(u + 1, n + 1))
    )


def cube_graph():
    """The 3-regular cube graph: 8 vertices, 12 edges."""
    edges = []
    for u in range(8):
        for bit in (1, 2, 4):
            v = u ^ bit
            if u < v:
                edges.append({u + 1, v + 1})
    return Hypergraph(8, tuple(edges))


def disjoint_union(*hypergraphs):
    edges, offset = [], 0
    for hypergraph in hypergraphs:
        edges.extend({v + offset for v in edge} for edge in hypergraph.edges)
        offset += hypergraph.n
    return Hypergraph(offset, tuple(edges))


def random_hypergraph(rng, n, m, max_size):
    """``m`` random edges of 1..``max_size`` distinct vertices each."""
    edges = []
    for _ in range(m):
        size = rng.randint(1, min(max_size, n))
        edges.append(set(rng.sample(range(1, n + 1), size)))
    return Hypergraph(n, tuple(edges))


def random_uniform_hypergraph(rng, n, m, r, k):
    """Random ``r``-uniform hypergraph with maximum degree at most ``k``."""
    degree = dict.fromkeys(range(1, n + 1), 0)
    edges = []
    attempts = 0
    while len(edges) < m and attempts < 100 * m:
        attempts += 1
        free = [v for v in degree if degree[v] < k]
        if len(free) < r:
            break
        edge = rng.sample(free, r)
        for v in edge:
            degree[v] += 1
        edges.append(set(edge))
    return Hypergraph(n, tuple(edges))


def random_connected_graph(rng, n, max_degree, extra_edges):
    """A random spanning tree plus up to ``extra_edges`` more edges, simple and
    with every degree at most ``max_degree`` (which must be at least 2)."""
    degree = dict.fromkeys(range(1, n + 1), 0)
    edges = set()
    order = list(range(1, n + 1))
    rng.shuffle(order)
    for position in range(1, n):
        v = order[position]
        candidates = [u for u in order[:position] if degree[u] < max_degree]
        u = rng.choice(candidates)
        edges.add(frozenset((u, v)))
        degree[u] += 1
        degree[v] += 1
    for _ in range(extra_edges):
        u, v = rng.sample(range(1, n + 1), 2)
        edge = frozenset((u, v))
        if edge in edges or degree[u] >= max_degree or degree[v] >= max_degree:
            continue
        edges.add(edge)
        degree[u] += 1
        degree[v] += 1
    return Hypergraph(n, tuple(sorted(edges, key=sorted)))


def not_equal_csp(graph, domain):
    """Graph coloring: one variable per vertex, ``x_u != x_v`` per edge."""
    allowed = frozenset(
        (a, b) for a, b in product(range(domain), repeat=2) if a != b
    )
    constraints = tuple(
        Constraint(tuple(sorted(edge)), allowed) for edge in graph.edges
    )
    return CSP(graph.n, domain, constraints)


def random_csp(rng, num_vars, domain, count, max_arity, max_frequency):
    """Random table constraints with bounded arity and variable frequency."""
    frequency = dict.fromkeys(range(1, num_vars + 1), 0)
    constraints = []
    for _ in range(count):
        free = [x for x in frequency if frequency[x] < max_frequency]
        arity = rng.randint(1, min(max_arity, len(free))) if free else 0
        scope = tuple(rng.sample(free, arity))
        for x in scope:
            frequency[x] += 1
        allowed = frozenset(
            values
            for values in product(range(domain), repeat=arity)
            if rng.random() < 0.7
        )
        constraints.append(Constraint(scope, allowed))
    return CSP(num_vars, domain, tuple(constraints))


class TempDirMixin(unittest.TestCase):
    def setUp(self):
        super().setUp()
        self.tmpdir = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, self.tmpdir)

    def path(self, name):
        return os.path.join(self.tmpdir, name)

    def write_file(self, name, content):
        path = self.path(name)
        with open(path, "w", encoding="utf-8") as stream:
            stream.write(content)
        return path

    def read_file(self, name):
        with open(self.path(name), encoding="utf-8") as stream:
            return stream.read()
