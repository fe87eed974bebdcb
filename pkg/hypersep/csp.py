"""
Constraint satisfaction problems over the domain ``{0, ..., d - 1}``.

Constraints are explicit tables of allowed tuples. The solver branches on the
variables of a balanced separator of the constraint hypergraph, so each
restricted instance falls apart into components over at most half of the
variables, which are then solved exhaustively or recursively.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from math import ceil

from hypersep.cnf import Cnf, falsified_literal
from hypersep.exceptions import BudgetExceeded
from hypersep.hypergraph import Hypergraph, connected_components, remove_edges
from hypersep.separator import find_separator
from hypersep.settings import get_setting
from hypersep.utils import ordered_map

logger = logging.getLogger(__name__)

DECIDE = "decide"
COUNT = "count"
MAX = "max"
MODES = (DECIDE, COUNT, MAX)


@dataclass(frozen=True)
class Constraint:
    scope: tuple
    allowed: frozenset

    def __post_init__(self):
        scope = tuple(self.scope)
        if len(set(scope)) != len(scope):
            raise ValueError(f"Constraint scope {scope} repeats a variable.")
        allowed = frozenset(tuple(values) for values in self.allowed)
        for values in allowed:
            if len(values) != len(scope):
                raise ValueError(
                    f"Tuple {values} does not match the scope {scope} in length."
                )
        object.__setattr__(self, "scope", scope)
        object.__setattr__(self, "allowed", allowed)

    @property
    def arity(self):
        return len(self.scope)

    def is_satisfied(self, assignment):
        return tuple(assignment[x] for x in self.scope) in self.allowed

    def is_falsified(self, assignment):
        """True iff the whole scope is assigned and the values are forbidden."""
        return all(x in assignment for x in self.scope) and not self.is_satisfied(
            assignment
        )


@dataclass(frozen=True)
class CSP:
    """
    ``num_vars`` bounds the variable ids; ``variables`` lists those still in
    play (all of ``1..num_vars`` unless given). ``settled_true`` and
    ``settled_false`` count constraints whose whole scope was fixed by a
    restriction.
    """

    num_vars: int
    domain: int
    constraints: tuple
    variables: frozenset = None
    settled_true: int = 0
    settled_false: int = 0

    def __post_init__(self):
        if self.domain < 2:
            raise ValueError(f"Domain size must be at least 2, got {self.domain}.")
        if self.variables is None:
            variables = frozenset(range(1, self.num_vars + 1))
        else:
            variables = frozenset(self.variables)
        constraints = tuple(self.constraints)
        for index, constraint in enumerate(constraints, start=1):
            for x in constraint.scope:
                if x not in variables:
                    raise ValueError(f"Constraint {index} uses unknown variable {x}.")
            for values in constraint.allowed:
                if any(not 0 <= value < self.domain for value in values):
                    raise ValueError(
                        f"Constraint {index} allows {values} outside the domain."
                    )
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "constraints", constraints)

    def satisfies(self, assignment):
        return not self.settled_false and all(
            constraint.is_satisfied(assignment) for constraint in self.constraints
        )

    def satisfied_count(self, assignment):
        return self.settled_true + sum(
            1 for constraint in self.constraints if constraint.is_satisfied(assignment)
        )


@dataclass
class SolveAnswer:
    mode: str
    satisfiable: bool = None
    count: int = None
    max_satisfied: int = None
    witness: dict = None
    branches: int = 0
    separator: object = None
    branch_variables: tuple = field(default_factory=tuple)


@dataclass(frozen=True)
class ConstraintHypergraph:
    """Constraints as vertices, one edge per occurring variable."""

    hypergraph: Hypergraph
    edge_variables: tuple
    free_variables: frozenset

    def variables_of(self, edge_indices):
        return tuple(sorted(self.edge_variables[i - 1] for i in edge_indices))


def variable_frequencies(csp):
    frequency = dict.fromkeys(csp.variables, 0)
    for constraint in csp.constraints:
        for x in constraint.scope:
            frequency[x] += 1
    return frequency


def average_frequency(csp):
    if not csp.variables:
        return 0.0
    return sum(variable_frequencies(csp).values()) / len(csp.variables)


def constraint_hypergraph(csp):
    occurrences = {}
    for index, constraint in enumerate(csp.constraints, start=1):
        for x in constraint.scope:
            occurrences.setdefault(x, set()).add(index)
    edge_variables = tuple(sorted(occurrences))
    hypergraph = Hypergraph(
        len(csp.constraints), tuple(occurrences[x] for x in edge_variables)
    )
    return ConstraintHypergraph(
        hypergraph, edge_variables, csp.variables - frozenset(edge_variables)
    )


def restrict(csp, assignment):
    """
    Fix the variables in ``assignment`` and simplify every touched constraint.

    Constraints left without free variables are settled: dropped and counted
    as satisfied or violated.
    """
    for x, value in assignment.items():
        if not 0 <= value < csp.domain:
            raise ValueError(f"Value {value} for variable {x} is outside the domain.")
    if not assignment:
        return csp
    constraints = []
    settled_true, settled_false = csp.settled_true, csp.settled_false
    for constraint in csp.constraints:
        fixed = [i for i, x in enumerate(constraint.scope) if x in assignment]
        if not fixed:
            constraints.append(constraint)
            continue
        open_positions = [
            i for i, x in enumerate(constraint.scope) if x not in assignment
        ]
        wanted = [(i, assignment[constraint.scope[i]]) for i in fixed]
        allowed = {
            tuple(values[i] for i in open_positions)
            for values in constraint.allowed
            if all(values[i] == value for i, value in wanted)
        }
        if open_positions:
            scope = tuple(constraint.scope[i] for i in open_positions)
            constraints.append(Constraint(scope, frozenset(allowed)))
        elif allowed:
            settled_true += 1
        else:
            settled_false += 1
    return CSP(
        csp.num_vars,
        csp.domain,
        tuple(constraints),
        csp.variables - frozenset(assignment),
        settled_true,
        settled_false,
    )


def decompose(csp):
    """
    Split ``csp`` along the components of its constraint hypergraph.

    Returns the parts, ordered by their lowest constraint, and the number of
    variables that occur in no constraint. Constraints without variables form
    parts of their own. Settled counters stay with the caller.
    """
    structure = constraint_hypergraph(csp)
    decomposition = connected_components(structure.hypergraph)
    groups = [
        (sorted(component.vertices), structure.variables_of(component.edges))
        for component in decomposition.components
    ]
    groups.extend(([vertex], ()) for vertex in decomposition.isolated_vertices)
    groups.sort(key=lambda group: group[0][0])
    parts = tuple(
        CSP(
            csp.num_vars,
            csp.domain,
            tuple(csp.constraints[i - 1] for i in indices),
            frozenset(variables),
        )
        for indices, variables in groups
    )
    return parts, len(structure.free_variables)


def brute_force(csp, mode=DECIDE, budget=None):
    """
    Answer ``mode`` by enumerating every assignment in lexicographic order of
    the sorted variables. The decide and max witnesses are the first found.
    """
    if mode not in MODES:
        raise ValueError(f"Unknown mode {mode!r}.")
    budget = get_setting("BRUTE_FORCE_BUDGET", budget)
    variables = sorted(csp.variables)
    if csp.domain ** len(variables) > budget:
        raise BudgetExceeded(
            f"{csp.domain}^{len(variables)} assignments exceed the budget of {budget}."
        )
    position = {x: i for i, x in enumerate(variables)}
    tables = [
        (tuple(position[x] for x in constraint.scope), constraint.allowed)
        for constraint in csp.constraints
    ]
    answer = SolveAnswer(mode)
    if mode == DECIDE:
        answer.satisfiable = False
    elif mode == COUNT:
        answer.count = 0
    else:
        answer.max_satisfied = -1

    for values in product(range(csp.domain), repeat=len(variables)):
        if mode == MAX:
            satisfied = csp.settled_true + sum(
                1
                for positions, allowed in tables
                if tuple(values[i] for i in positions) in allowed
            )
            if satisfied > answer.max_satisfied:
                answer.max_satisfied = satisfied
                answer.witness = dict(zip(variables, values))
            continue
        if csp.settled_false:
            break
        if all(
            tuple(values[i] for i in positions) in allowed
            for positions, allowed in tables
        ):
            if mode == DECIDE:
                answer.satisfiable = True
                answer.witness = dict(zip(variables, values))
                break
            answer.count += 1
    return answer


def high_frequency_preprocess(csp, r_avg):
    """
    Variables occurring at least ``ceil(2 * r_avg)`` times, and the frequency
    bound left for the rest. By averaging at most half the variables qualify.
    """
    threshold = max(1, ceil(2 * r_avg))
    frequency = variable_frequencies(csp)
    chosen = frozenset(x for x, count in frequency.items() if count >= threshold)
    return chosen, threshold - 1


@dataclass(frozen=True)
class SolveOptions:
    recursive: bool = False
    separator: str = None
    seed: int = None
    leaf_budget: int = None
    preprocess: bool = False
    jobs: int = None
    budget: int = None
    max_trials: int = None

    def resolved(self):
        return SolveOptions(
            recursive=self.recursive,
            separator=get_setting("SEPARATOR_METHOD", self.separator),
            seed=get_setting("SEED", self.seed),
            leaf_budget=get_setting("LEAF_BUDGET", self.leaf_budget),
            preprocess=self.preprocess,
            jobs=get_setting("JOBS", self.jobs),
            budget=get_setting("BRUTE_FORCE_BUDGET", self.budget),
            max_trials=get_setting("MAX_TRIALS", self.max_trials),
        )


def solve(csp, mode=DECIDE, **options):
    """
    Decide, count or maximize ``csp`` by separator branching.

    Keyword options are those of :class:`SolveOptions`; unset ones come from
    the configuration. The answer always equals :func:`brute_force`'s.
    """
    if mode not in MODES:
        raise ValueError(f"Unknown mode {mode!r}.")
    return _solve(csp, mode, SolveOptions(**options).resolved())


def branching_variables(csp, options):
    """The variables whose assignments :func:`solve` enumerates, and the
    separator that produced them."""
    structure = constraint_hypergraph(csp)
    hypergraph = structure.hypergraph
    prefix = frozenset()
    kept = tuple(hypergraph.edge_indices())
    if options.preprocess:
        prefix, _ = high_frequency_preprocess(csp, average_frequency(csp))
        dropped = [
            i for i, x in enumerate(structure.edge_variables, start=1) if x in prefix
        ]
        hypergraph, kept = remove_edges(hypergraph, dropped)
    separator = find_separator(
        hypergraph,
        options.separator,
        seed=options.seed,
        max_trials=options.max_trials,
        jobs=options.jobs,
    )
    separator_variables = structure.variables_of(kept[i - 1] for i in separator.edges)
    chosen = prefix | frozenset(separator_variables)
    return tuple(sorted(chosen)), separator


def _solve(csp, mode, options):
    variables, separator = branching_variables(csp, options)
    assignments = (
        dict(zip(variables, values))
        for values in product(range(csp.domain), repeat=len(variables))
    )
    answer = SolveAnswer(mode, separator=separator, branch_variables=variables)
    logger.debug(
        "Branching on %d of %d variables.", len(variables), len(csp.variables)
    )

    if mode == DECIDE:
        answer.satisfiable = False
        for rho in assignments:
            answer.branches += 1
            witness = _decide_branch(csp, rho, options)
            if witness is not None:
                answer.satisfiable = True
                answer.witness = witness
                break
        return answer

    outcomes = ordered_map(
        lambda rho: _branch(csp, mode, rho, options), list(assignments), options.jobs
    )
    answer.branches = len(outcomes)
    if mode == COUNT:
        answer.count = sum(outcomes)
    else:
        # max() keeps the first of equal values, i.e. the earliest branch.
        answer.max_satisfied, answer.witness = max(outcomes, key=lambda o: o[0])
    return answer


def _subsolve(part, mode, options):
    if options.recursive and len(part.variables) > options.leaf_budget:
        return _solve(part, mode, options)
    return brute_force(part, mode, options.budget)


def _free_variables(restricted, parts):
    covered = frozenset().union(*(part.variables for part in parts))
    return sorted(restricted.variables - covered)


def _decide_branch(csp, rho, options):
    restricted = restrict(csp, rho)
    if restricted.settled_false:
        return None
    parts, _ = decompose(restricted)
    witness = dict(rho)
    for part in parts:
        answer = _subsolve(part, DECIDE, options)
        if not answer.satisfiable:
            return None
        witness.update(answer.witness)
    witness.update(dict.fromkeys(_free_variables(restricted, parts), 0))
    return witness


def _branch(csp, mode, rho, options):
    restricted = restrict(csp, rho)
    if mode == COUNT:
        if restricted.settled_false:
            return 0
        parts, free = decompose(restricted)
        total = csp.domain**free
        for part in parts:
            total *= _subsolve(part, COUNT, options).count
            if not total:
                break
        return total

    parts, _ = decompose(restricted)
    satisfied = restricted.settled_true
    witness = dict(rho)
    for part in parts:
        answer = _subsolve(part, MAX, options)
        satisfied += answer.max_satisfied
        witness.update(answer.witness)
    witness.update(dict.fromkeys(_free_variables(restricted, parts), 0))
    return satisfied, witness


def cnf_encode(csp):
    """
    Encode a Boolean CSP as CNF: one clause per forbidden tuple, falsified by
    exactly that tuple. Clauses follow constraint order, then lexicographic
    tuple order; ``provenance`` names each clause's constraint.
    """
    if csp.domain != 2:
        raise ValueError(f"CNF encoding needs domain size 2, got {csp.domain}.")
    clauses, provenance = [], []
    for index, constraint in enumerate(csp.constraints, start=1):
        for values in product((0, 1), repeat=constraint.arity):
            if values in constraint.allowed:
                continue
            clauses.append(
                tuple(
                    falsified_literal(x, value)
                    for x, value in zip(constraint.scope, values)
                )
            )
            provenance.append(index)
    return Cnf(csp.num_vars, tuple(clauses), tuple(provenance))
