"""
Random bounded-degree uniform hypergraphs, an exact minimum balanced
separator oracle, and the separator tightness experiment built from both.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from math import ceil, comb, e
from statistics import mean

from hypersep.exceptions import BudgetExceeded
from hypersep.hypergraph import Hypergraph, max_degree
from hypersep.separator import epsilon_r
from hypersep.settings import get_config, get_setting
from hypersep.utils import derive_rng, ordered_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneratorParams:
    n: int
    k: int
    r: int
    seed: int = 0

    def __post_init__(self):
        if not 2 <= self.r <= self.n:
            raise ValueError(f"Need 2 <= r <= n, got r={self.r}, n={self.n}.")
        if self.k < 0:
            raise ValueError(f"Degree parameter must be non-negative, got {self.k}.")
        if self.q > 1:
            raise ValueError(f"Edge probability {self.q:.3f} exceeds 1.")

    @property
    def q(self):
        """Probability of each ``r``-subset, giving ``n * k / r`` edges on average."""
        return (self.n * self.k / self.r) / comb(self.n, self.r)

    @property
    def degree_cap(self):
        return ceil(2 * e * self.k)


def random_uniform_hypergraph(params, budget=None):
    """
    Include every ``r``-subset of ``1..n`` (in lexicographic order) with
    probability ``q``, then drop, in index order, each edge that touches a
    vertex whose degree is still above ``ceil(2e * k)``.
    """
    budget = get_setting("GENERATOR_BUDGET", budget)
    candidates = comb(params.n, params.r)
    if candidates > budget:
        raise BudgetExceeded(
            f"C({params.n}, {params.r}) = {candidates} candidate edges exceed "
            f"the budget of {budget}."
        )
    rng = derive_rng(params.seed, "hypergraph", params.n, params.k, params.r)
    q = params.q
    edges = [
        subset
        for subset in combinations(range(1, params.n + 1), params.r)
        if rng.random() < q
    ]

    degree = [0] * (params.n + 1)
    for edge in edges:
        for v in edge:
            degree[v] += 1
    cap = params.degree_cap
    kept = []
    for edge in edges:
        if any(degree[v] > cap for v in edge):
            for v in edge:
                degree[v] -= 1
        else:
            kept.append(edge)
    if len(kept) < len(edges):
        logger.debug("Trimmed %d of %d edges.", len(edges) - len(kept), len(edges))
    return Hypergraph(params.n, tuple(kept))


def _active_vertices(hypergraph):
    return sorted(frozenset().union(*hypergraph.edges))


def _edge_masks(hypergraph, vertices):
    bit = {v: 1 << i for i, v in enumerate(vertices)}
    return [sum(bit[v] for v in edge) for edge in hypergraph.edges]


def _largest_component(masks):
    groups = []  # [vertex mask, edge count]
    for mask in masks:
        merged = [mask, 1]
        rest = []
        for group in groups:
            if group[0] & merged[0]:
                merged[0] |= group[0]
                merged[1] += group[1]
            else:
                rest.append(group)
        rest.append(merged)
        groups = rest
    return max((count for _, count in groups), default=0)


def _by_edge_subsets(hypergraph):
    masks = _edge_masks(hypergraph, _active_vertices(hypergraph))
    half = hypergraph.m // 2
    indices = range(1, hypergraph.m + 1)
    for size in range(hypergraph.m + 1):
        for removed in combinations(indices, size):
            skip = set(removed)
            kept = [mask for i, mask in enumerate(masks, start=1) if i not in skip]
            if _largest_component(kept) <= half:
                return size, removed
    raise AssertionError("removing every edge is always balanced")


def _by_vertex_partitions(hypergraph):
    vertices = _active_vertices(hypergraph)
    n, m = len(vertices), hypergraph.m
    half = m // 2
    masks = _edge_masks(hypergraph, vertices)
    full = (1 << n) - 1

    # inner[S] = number of edges contained in S.
    inner = [0] * (1 << n)
    for mask in masks:
        inner[mask] += 1
    for bit in range(n):
        step = 1 << bit
        for subset in range(1 << n):
            if subset & step:
                inner[subset] += inner[subset ^ step]

    # kept[S]: most edges a partition of S can keep, each block capped at half.
    kept = [0] * (1 << n)
    choice = [0] * (1 << n)
    for subset in range(1, 1 << n):
        low = subset & -subset
        others = subset ^ low
        best, best_block = -1, 0
        sub = others
        while True:
            block = sub | low
            value = min(inner[block], half) + kept[subset ^ block]
            if value > best:
                best, best_block = value, block
            if not sub:
                break
            sub = (sub - 1) & others
        kept[subset], choice[subset] = best, best_block

    removed = set()
    remaining = full
    blocks = []
    while remaining:
        blocks.append(choice[remaining])
        remaining ^= choice[remaining]
    for block in blocks:
        contained = [i for i, mask in enumerate(masks, start=1) if mask & block == mask]
        removed.update(contained[: max(0, len(contained) - half)])
    covered = {
        i
        for block in blocks
        for i, mask in enumerate(masks, start=1)
        if mask & block == mask
    }
    removed.update(set(range(1, m + 1)) - covered)
    return m - kept[full], tuple(sorted(removed))


def min_balanced_separator(hypergraph, max_edges=None, max_vertices=None):
    """
    Exact minimum balanced separator size and one witness.

    Uses edge-subset enumeration (lexicographically first minimum witness)
    when ``m <= max_edges``, or a dynamic program over vertex partitions when
    at most ``max_vertices`` vertices lie on edges, whichever enumerates less.
    Raises :class:`BudgetExceeded` when neither applies.
    """
    config = get_config()
    if max_edges is None:
        max_edges = config["ORACLE_MAX_EDGES"]
    if max_vertices is None:
        max_vertices = config["ORACLE_MAX_VERTICES"]
    strategies = []
    if hypergraph.m <= max_edges:
        strategies.append((2**hypergraph.m, _by_edge_subsets))
    active = len(_active_vertices(hypergraph))
    if active <= max_vertices:
        strategies.append((3**active, _by_vertex_partitions))
    if not strategies:
        raise BudgetExceeded(
            f"{active} vertices on edges and m={hypergraph.m} exceed the oracle "
            f"limits ({max_vertices} vertices, {max_edges} edges)."
        )
    _, strategy = min(strategies, key=lambda option: option[0])
    return strategy(hypergraph)


def induced_edge_regularity(hypergraph, alpha=0.5, samples=200, seed=0):
    """
    Largest relative gap between ``|E(S)|`` and ``(|S| / n)**r * m`` over
    random vertex sets with at least ``alpha * n`` vertices. Reported only.
    """
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}.")
    n, m = hypergraph.n, hypergraph.m
    if not m or not n:
        return 0.0
    r = hypergraph.max_edge_size()
    rng = derive_rng(seed, "regularity")
    vertices = list(hypergraph.vertices)
    worst = 0.0
    for _ in range(samples):
        chosen = frozenset(rng.sample(vertices, rng.randint(ceil(alpha * n), n)))
        inside = sum(1 for edge in hypergraph.edges if edge <= chosen)
        expected = (len(chosen) / n) ** r * m
        worst = max(worst, abs(inside - expected) / expected)
    return worst


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    k: int
    r: int
    m: int
    max_degree: int
    min_sep: int
    theory_bound: float
    ratio: float
    seed: int


@dataclass(frozen=True)
class CellSummary:
    n: int
    k: int
    r: int
    instances: int
    mean_m: float
    mean_ratio: float
    min_ratio: float
    regularity: float


@dataclass(frozen=True)
class ExperimentReport:
    rows: tuple = ()
    cells: tuple = field(default_factory=tuple)


def sweep_cells(ns, ks, rs):
    """Cells ordered by ``r``, then ``n``, then ``k``."""
    return [(n, k, r) for r, n, k in product(rs, ns, ks)]


def _run_instance(task):
    (n, k, r), instance_seed, regularity_samples = task
    hypergraph = random_uniform_hypergraph(GeneratorParams(n, k, r, instance_seed))
    size, _ = min_balanced_separator(hypergraph)
    m = hypergraph.m
    row = ExperimentRow(
        n=n,
        k=k,
        r=r,
        m=m,
        max_degree=max_degree(hypergraph),
        min_sep=size,
        theory_bound=(0.5 - epsilon_r(r)) * m,
        ratio=size / m if m else 0.0,
        seed=instance_seed,
    )
    regularity = induced_edge_regularity(
        hypergraph, samples=regularity_samples, seed=instance_seed
    )
    return row, regularity


def tightness_experiment(
    cells, instances, seed=None, jobs=None, regularity_samples=200
):
    """
    Measure the minimum balanced separator of ``instances`` random hypergraphs
    per ``(n, k, r)`` cell; instance ``i`` of every cell uses seed ``seed + i``.
    Rows follow cell order, whatever ``jobs`` is.
    """
    seed = get_setting("SEED", seed)
    jobs = get_setting("JOBS", jobs)
    cells = list(cells)
    tasks = [
        (cell, seed + i, regularity_samples) for cell in cells for i in range(instances)
    ]
    outcomes = ordered_map(_run_instance, tasks, jobs)
    rows = tuple(row for row, _ in outcomes)

    summaries = []
    for position, (n, k, r) in enumerate(cells):
        chunk = outcomes[position * instances : (position + 1) * instances]
        if not chunk:
            continue
        ratios = [row.ratio for row, _ in chunk]
        summaries.append(
            CellSummary(
                n=n,
                k=k,
                r=r,
                instances=len(chunk),
                mean_m=mean(row.m for row, _ in chunk),
                mean_ratio=mean(ratios),
                min_ratio=min(ratios),
                regularity=mean(regularity for _, regularity in chunk),
            )
        )
    logger.info("Experiment produced %d rows over %d cells.", len(rows), len(cells))
    return ExperimentReport(rows, tuple(summaries))
