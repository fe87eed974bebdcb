"""
Refuters that build decision trees by querying separator variables first.

Both refuters return the tree together with its resolution trace, and both
artifacts are verified by the independent checkers before being handed out.
"""

import logging
from dataclasses import dataclass, field
from math import sqrt
from typing import NamedTuple

import networkx as nx

from hypersep.csp import (
    DECIDE,
    brute_force,
    cnf_encode,
    constraint_hypergraph,
    decompose,
    restrict,
)
from hypersep.exceptions import SatisfiableInstance
from hypersep.hypergraph import Hypergraph, max_degree
from hypersep.refutation.resolution import check_resolution, dtree_to_resolution
from hypersep.refutation.trees import DecisionTree, Leaf, Query, check_dtree
from hypersep.separator import (
    epsilon_r,
    find_separator,
    trivial_separator,
    vertex_cut_separator,
)
from hypersep.tseitin import TseitinInstance, is_odd_charge, tseitin_cnf

logger = logging.getLogger(__name__)

# Multiplier of k * sqrt(|E'|) in the cut size allowed at min-degree-3 nodes.
CUT_CONSTANT = 6 * sqrt(2)


@dataclass
class RefuterStats:
    leaves: int = 0
    depth: int = 0
    proof_size: int = 0
    proof_width: int = 0
    separators_used: list = field(default_factory=list)
    cut_bound_relaxations: int = 0

    def as_record(self):
        """Flat ``key=value`` pairs for the ``STATS:`` line."""
        separators = ";".join(f"{edges}/{size}" for edges, size in self.separators_used)
        return {
            "leaves": self.leaves,
            "depth": self.depth,
            "proof_size": self.proof_size,
            "proof_width": self.proof_width,
            "separators": separators or "-",
            "relaxations": self.cut_bound_relaxations,
        }


class Refutation(NamedTuple):
    tree: DecisionTree
    trace: object
    stats: RefuterStats


def tseitin_leaf_exponent(edges, k, m=None):
    """
    Base-2 logarithm of the leaf count :func:`refute_tseitin` stays within on
    a graph with ``edges`` edges and maximum degree ``k``; ``m`` is the edge
    count of the whole graph when ``edges`` describes a subgraph.
    """
    m = edges if m is None else m
    epsilon = epsilon_r(2)
    return (
        (1 - 2 * epsilon) * edges
        + 4 * CUT_CONSTANT * k * sqrt(edges)
        + k * sqrt(m)
    )


def _finish(cnf, root, stats):
    tree = DecisionTree(2, root)
    checked = check_dtree(cnf, tree)
    assert checked, checked.message
    trace = dtree_to_resolution(cnf, tree)
    checked = check_resolution(cnf, trace)
    assert checked, checked.message
    stats.leaves = tree.leaf_count()
    stats.depth = tree.depth()
    stats.proof_size = trace.size
    stats.proof_width = trace.width
    logger.info(
        "Refutation with %d leaves, depth %d, %d resolution steps.",
        stats.leaves,
        stats.depth,
        stats.proof_size,
    )
    return Refutation(tree, trace, stats)


def _clause_lookup(cnf):
    """Map ``(source, falsifying values)`` to the clause index in ``cnf``."""
    lookup = {}
    for index, (clause, source) in enumerate(zip(cnf.clauses, cnf.provenance), start=1):
        lookup[source, tuple(0 if literal > 0 else 1 for literal in clause)] = index
    return lookup


def refute_csp2(
    csp, method=None, *, seed=None, max_trials=None, jobs=None, budget=None
):
    """
    Refute an unsatisfiable Boolean CSP.

    The tree first queries every variable of a balanced separator of the
    constraint hypergraph. Below each branch it picks the first unsatisfiable
    component of the restricted instance and queries all of that component's
    variables. A path stops as soon as a constraint is falsified.

    Raises :class:`SatisfiableInstance` with a satisfying assignment when a
    branch leaves every component satisfiable.
    """
    cnf = cnf_encode(csp)
    lookup = _clause_lookup(cnf)
    occurrences = {}
    for index, constraint in enumerate(csp.constraints, start=1):
        for x in constraint.scope:
            occurrences.setdefault(x, []).append(index)

    def falsified(indices, assignment):
        for index in indices:
            constraint = csp.constraints[index - 1]
            if constraint.is_falsified(assignment):
                values = tuple(assignment[x] for x in constraint.scope)
                return Leaf(lookup[index, values])
        return None

    structure = constraint_hypergraph(csp)
    separator = find_separator(
        structure.hypergraph, method, seed=seed, max_trials=max_trials, jobs=jobs
    )
    separator_variables = structure.variables_of(separator.edges)
    stats = RefuterStats(separators_used=[(structure.hypergraph.m, separator.size)])

    def complete(variables, position, assignment):
        x = variables[position]
        children = []
        for value in (0, 1):
            extended = {**assignment, x: value}
            leaf = falsified(occurrences.get(x, ()), extended)
            if leaf is None:
                leaf = complete(variables, position + 1, extended)
            children.append(leaf)
        return Query(x, tuple(children))

    def below_separator(rho):
        restricted = restrict(csp, rho)
        parts, _ = decompose(restricted)
        witness = dict(rho)
        for part in parts:
            answer = brute_force(part, DECIDE, budget)
            if not answer.satisfiable:
                logger.debug(
                    "Branch %s: part over %d variables is unsatisfiable.",
                    rho,
                    len(part.variables),
                )
                return complete(sorted(part.variables), 0, rho)
            witness.update(answer.witness)
        covered = frozenset().union(*(part.variables for part in parts))
        witness.update(dict.fromkeys(restricted.variables - covered, 0))
        raise SatisfiableInstance(
            "The instance is satisfiable.",
            witness=dict(sorted(witness.items())),
        )

    def query_separator(position, assignment):
        if position == len(separator_variables):
            return below_separator(assignment)
        x = separator_variables[position]
        children = []
        for value in (0, 1):
            extended = {**assignment, x: value}
            leaf = falsified(occurrences.get(x, ()), extended)
            if leaf is None:
                leaf = query_separator(position + 1, extended)
            children.append(leaf)
        return Query(x, tuple(children))

    constants = [i for i, c in enumerate(csp.constraints, start=1) if not c.scope]
    root = falsified(constants, {}) or query_separator(0, {})
    return _finish(cnf, root, stats)


@dataclass(frozen=True)
class _Node:
    """A tree node's label: the remaining graph and its charges."""

    edges: frozenset
    alive: frozenset
    charges: dict
    assignment: dict


def refute_tseitin(graph, charges, base_case_edges=None):
    """
    Refute the Tseitin formula of a simple graph with an odd total charge.

    Each node is labelled by the remaining subgraph and its charges. A node
    becomes a leaf once an isolated vertex carries charge 1. Otherwise, while
    more than ``base_case_edges`` edges remain (default ``k * sqrt(m)``), the
    next edge comes from a degree-1 vertex, then a degree-2 vertex, and failing
    both from a balanced vertex cut. After a cut every branch continues in the
    odd-charged component. Edge choices depend only on the subgraph, and cuts
    are memoized per subgraph.
    """
    if not graph.is_uniform(2):
        raise ValueError("Tseitin refutation needs a graph (2-uniform hypergraph).")
    if len(set(graph.edges)) != graph.m:
        raise ValueError("Tseitin refutation needs a simple graph.")
    if not is_odd_charge(charges):
        raise SatisfiableInstance("The total charge is even.")

    cnf = tseitin_cnf(TseitinInstance(graph, charges))
    lookup = _clause_lookup(cnf)
    incidence = graph.incidence()
    k = max_degree(graph)
    threshold = k * sqrt(graph.m) if base_case_edges is None else base_case_edges
    epsilon = epsilon_r(2)
    memo = {}
    stats = RefuterStats()

    def degrees(node):
        degree = dict.fromkeys(node.alive, 0)
        for e in node.edges:
            for v in graph.edge(e):
                degree[v] += 1
        return degree

    def leaf(node, degree):
        for v in sorted(node.alive):
            if degree[v] == 0 and node.charges[v]:
                values = tuple(node.assignment[e] for e in incidence[v])
                return Leaf(lookup[v, values])
        return None

    def assign(node, e, value):
        charges = dict(node.charges)
        if value:
            for v in graph.edge(e):
                charges[v] ^= 1
        return _Node(
            node.edges - {e}, node.alive, charges, {**node.assignment, e: value}
        )

    def query(node, e, then):
        return Query(e, tuple(then(assign(node, e, value)) for value in (0, 1)))

    def cut(node, degree):
        if node.edges in memo:
            return memo[node.edges]
        vertices = sorted(v for v in node.alive if degree[v])
        local = {v: i for i, v in enumerate(vertices, start=1)}
        edges = sorted(node.edges)
        subgraph = Hypergraph(
            len(vertices),
            tuple(frozenset(local[v] for v in graph.edge(e)) for e in edges),
        )
        size = len(edges)
        bound = (0.5 - epsilon) * size + CUT_CONSTANT * k * sqrt(size)
        result = vertex_cut_separator(subgraph, bound)
        if result is None:
            stats.cut_bound_relaxations += 1
            logger.warning(
                "No balanced cut within %.2f of %d edges; relaxing to %d.",
                bound,
                size,
                size // 2,
            )
            result = vertex_cut_separator(subgraph, size // 2)
        if result is None:
            result = trivial_separator(subgraph)
        separator = tuple(edges[i - 1] for i in result.edges)
        memo[node.edges] = separator
        stats.separators_used.append((size, len(separator)))
        return separator

    def descend(node):
        remaining = nx.Graph()
        remaining.add_nodes_from(node.alive)
        remaining.add_edges_from(tuple(graph.edge(e)) for e in node.edges)
        for group in sorted(nx.connected_components(remaining), key=min):
            if sum(node.charges[v] for v in group) % 2:
                alive = frozenset(group)
                return _Node(
                    frozenset(e for e in node.edges if graph.edge(e) <= alive),
                    alive,
                    {v: node.charges[v] for v in alive},
                    node.assignment,
                )
        raise AssertionError("charge parity must stay odd")

    def query_cut(node, separator, position):
        degree = degrees(node)
        found = leaf(node, degree)
        if found is not None:
            return found
        if position == len(separator):
            return build(descend(node))
        return query(
            node,
            separator[position],
            lambda child: query_cut(child, separator, position + 1),
        )

    def incident_edge(node, degree, wanted):
        for v in sorted(node.alive):
            if degree[v] == wanted:
                return min(e for e in incidence[v] if e in node.edges)
        return None

    def build(node):
        degree = degrees(node)
        found = leaf(node, degree)
        if found is not None:
            return found
        if len(node.edges) <= threshold:
            return query(node, min(node.edges), build)
        for wanted in (1, 2):
            e = incident_edge(node, degree, wanted)
            if e is not None:
                return query(node, e, build)
        return query_cut(node, cut(node, degree), 0)

    root = _Node(
        frozenset(graph.edge_indices()),
        frozenset(graph.vertices),
        {v: charges[v] for v in graph.vertices},
        {},
    )
    return _finish(cnf, build(root), stats)
