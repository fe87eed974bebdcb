"""
Balanced separators: checking, randomized sampling, exhaustive edge search and
vertex-cut enumeration.

A set ``R`` of edge indices is a balanced separator when every component of
the hypergraph without ``R`` keeps at most ``m // 2`` edges.
"""

import logging
from dataclasses import dataclass, field, replace
from itertools import combinations
from math import ceil, sqrt

from django.core.exceptions import ImproperlyConfigured

from hypersep.hypergraph import (
    component_edge_counts,
    edge_partition,
    max_degree,
    uniformize,
)
from hypersep.settings import get_config, get_separator_methods, get_setting
from hypersep.utils import derive_rng, ordered_map

logger = logging.getLogger(__name__)

TRIVIAL = "trivial"
RANDOM = "random"
EXHAUSTIVE = "exhaustive"
VERTEX_CUT = "vertex-cut"


def epsilon_r(r):
    """The savings constant ``(1 - 2**(-1/r))**r``."""
    if r < 2:
        raise ValueError(f"epsilon_r needs r >= 2, got {r}.")
    return (1 - 2 ** (-1 / r)) ** r


@dataclass(frozen=True)
class SeparatorParams:
    r: int
    k: int
    n: int
    max_trials: int = 1000
    p: float = None
    epsilon: float = field(init=False)
    slack: float = field(init=False)

    def __post_init__(self):
        if self.p is None:
            object.__setattr__(self, "p", 2 ** (-1 / self.r))
        if not 0 < self.p < 1:
            raise ValueError(f"Sampling probability must lie in (0, 1), got {self.p}.")
        if self.max_trials < 1:
            raise ValueError("max_trials must be positive.")
        object.__setattr__(self, "epsilon", epsilon_r(self.r))
        object.__setattr__(
            self, "slack", 4 * self.k * sqrt(self.n * self.p * (1 - self.p))
        )

    def crossing_bound(self, m):
        """Largest crossing-edge count a sample may have to be accepted."""
        return (0.5 - self.epsilon) * m + self.slack

    def size_bound(self, m):
        return theory_bound(m, self.epsilon, self.slack)


def theory_bound(m, epsilon, slack):
    """``(1/2 - epsilon) * m + 3 * slack``: crossing excess plus both trims."""
    return (0.5 - epsilon) * m + 3 * slack


def separator_params(hypergraph, r=None, k=None, max_trials=None):
    r = r or max(2, hypergraph.max_edge_size())
    k = k or max(1, max_degree(hypergraph))
    return SeparatorParams(
        r=r,
        k=k,
        n=hypergraph.n,
        max_trials=get_setting("MAX_TRIALS", max_trials),
    )


@dataclass(frozen=True)
class SeparatorResult:
    edges: tuple
    component_edge_counts: tuple
    method: str
    trials_used: int = 0
    size_bound_used: float = 0.0
    fallback: bool = False

    @property
    def size(self):
        return len(self.edges)


def is_balanced_separator(hypergraph, removed):
    counts = component_edge_counts(hypergraph, removed)
    half = hypergraph.m // 2
    return all(count <= half for count in counts), counts


def trivial_separator(hypergraph, size_bound=0.0, trials_used=0):
    """The first ``ceil(m / 2)`` edges, which are always balanced."""
    edges = tuple(range(1, ceil(hypergraph.m / 2) + 1))
    _, counts = is_balanced_separator(hypergraph, edges)
    return SeparatorResult(
        edges,
        counts,
        TRIVIAL,
        trials_used=trials_used,
        size_bound_used=size_bound,
        fallback=True,
    )


def _sample(hypergraph, params, seed, trial):
    rng = derive_rng(seed, trial)
    chosen = frozenset(v for v in hypergraph.vertices if rng.random() < params.p)
    inside, outside, crossing = edge_partition(hypergraph, chosen)
    m = hypergraph.m
    if abs(len(inside) - m / 2) > params.slack:
        return None
    if len(crossing) > params.crossing_bound(m):
        return None
    half = m // 2
    trim_inside = sorted(inside)[: max(0, len(inside) - half)]
    trim_outside = sorted(outside)[: max(0, len(outside) - half)]
    return tuple(sorted(crossing.union(trim_inside, trim_outside)))


def random_separator(hypergraph, params, seed=0, jobs=1):
    """
    Sample vertex sets until one yields a small balanced separator.

    Trial ``i`` draws from a generator derived from ``(seed, i)``; with
    ``jobs > 1`` trials run in batches and the smallest successful index wins,
    so the result never depends on scheduling. After ``params.max_trials``
    failures the trivial separator is returned with ``fallback`` set.
    """
    if not hypergraph.is_uniform(params.r):
        raise ValueError(f"Random separators need an {params.r}-uniform hypergraph.")
    m = hypergraph.m
    bound = params.size_bound(m)
    balanced, counts = is_balanced_separator(hypergraph, ())
    if balanced:
        return SeparatorResult((), counts, TRIVIAL, size_bound_used=bound)
    if m <= 1:
        return trivial_separator(hypergraph, bound)

    for start in range(0, params.max_trials, jobs):
        trials = range(start, min(start + jobs, params.max_trials))
        outcomes = ordered_map(
            lambda trial: _sample(hypergraph, params, seed, trial), trials, jobs
        )
        for trial, edges in zip(trials, outcomes):
            if edges is None:
                logger.debug("Trial %d rejected.", trial)
                continue
            balanced, counts = is_balanced_separator(hypergraph, edges)
            assert balanced, "sampled separator must be balanced"
            return SeparatorResult(
                edges, counts, RANDOM, trials_used=trial + 1, size_bound_used=bound
            )

    logger.warning(
        "No sample accepted in %d trials; using the trivial separator.",
        params.max_trials,
    )
    return trivial_separator(hypergraph, bound, trials_used=params.max_trials)


def exhaustive_separator(hypergraph, size_cap):
    """
    Smallest balanced separator with at most ``size_cap`` edges, or ``None``.

    Candidates are tried by increasing size and, within a size, in
    lexicographic order of edge indices; the first hit is returned.
    """
    indices = list(hypergraph.edge_indices())
    for size in range(0, min(size_cap, hypergraph.m) + 1):
        for edges in combinations(indices, size):
            balanced, counts = is_balanced_separator(hypergraph, edges)
            if balanced:
                return SeparatorResult(
                    edges, counts, EXHAUSTIVE, size_bound_used=size_cap
                )
    return None


def vertex_cut_separator(hypergraph, size_bound):
    """
    First vertex cut ``E(S, V - S)`` that is balanced and within ``size_bound``.

    Vertex sets are enumerated by increasing size, then lexicographically.
    Returns ``None`` when no cut qualifies.
    """
    seen = set()
    vertices = list(hypergraph.vertices)
    for size in range(0, hypergraph.n + 1):
        for chosen in combinations(vertices, size):
            crossing = edge_partition(hypergraph, chosen)[2]
            if len(crossing) > size_bound or crossing in seen:
                continue
            seen.add(crossing)
            edges = tuple(sorted(crossing))
            balanced, counts = is_balanced_separator(hypergraph, edges)
            if balanced:
                return SeparatorResult(
                    edges, counts, VERTEX_CUT, size_bound_used=size_bound
                )
    return None


# Registered methods share the signature (hypergraph, *, seed, max_trials, jobs).


def sampled_method(hypergraph, *, seed, max_trials, jobs):
    r = max(2, hypergraph.max_edge_size())
    k = max(1, max_degree(hypergraph))
    padded, _ = uniformize(hypergraph, r, k)
    params = separator_params(padded, r=r, k=k, max_trials=max_trials)
    result = random_separator(padded, params, seed=seed, jobs=jobs)
    # Padding only merges components, so the counts can only shrink here.
    _, counts = is_balanced_separator(hypergraph, result.edges)
    return replace(result, component_edge_counts=counts)


def exhaustive_method(hypergraph, *, seed, max_trials, jobs):
    return exhaustive_separator(hypergraph, hypergraph.m)


def vertex_cut_method(hypergraph, *, seed, max_trials, jobs):
    bound = hypergraph.m // 2
    result = vertex_cut_separator(hypergraph, bound)
    if result is None:
        logger.warning("No balanced cut within %d edges.", bound)
        return trivial_separator(hypergraph, bound)
    return result


def find_separator(hypergraph, method=None, *, seed=None, max_trials=None, jobs=None):
    """
    Find a balanced separator with a registered method.

    ``"auto"`` picks exhaustive search for small hypergraphs and sampling
    otherwise.
    """
    method = get_setting("SEPARATOR_METHOD", method)
    if method == "auto":
        small = hypergraph.m <= get_config()["AUTO_EXHAUSTIVE_MAX_EDGES"]
        method = EXHAUSTIVE if small else RANDOM
    try:
        function = get_separator_methods()[method]
    except KeyError:
        raise ImproperlyConfigured(f"Unknown separator method {method!r}.")
    result = function(
        hypergraph,
        seed=get_setting("SEED", seed),
        max_trials=get_setting("MAX_TRIALS", max_trials),
        jobs=get_setting("JOBS", jobs),
    )
    logger.info(
        "Separator of size %d for %d edges (%s).",
        result.size,
        hypergraph.m,
        result.method,
    )
    return result
