"""
Tseitin formulas: one variable per edge, and for every vertex the parity of
its incident edges must equal the vertex's charge.
"""

from dataclasses import dataclass, field
from functools import reduce
from itertools import product
from operator import xor

from hypersep.csp import CSP, Constraint, cnf_encode


@dataclass(frozen=True)
class ChargeLabeling:
    """Charges of vertices ``1..n``, stored as ``values[v - 1]``."""

    values: tuple
    parity: int = field(init=False)

    def __post_init__(self):
        values = tuple(int(bit) for bit in self.values)
        if any(bit not in (0, 1) for bit in values):
            raise ValueError("Charges must be 0 or 1.")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "parity", reduce(xor, values, 0))

    @classmethod
    def from_mapping(cls, n, charges):
        """Vertices missing from ``charges`` get charge 0."""
        for vertex in charges:
            if not 1 <= vertex <= n:
                raise ValueError(f"Charge given for unknown vertex {vertex}.")
        return cls(tuple(charges.get(v, 0) for v in range(1, n + 1)))

    @classmethod
    def odd(cls, n):
        """Charge 1 on the lowest vertex, 0 elsewhere."""
        if n < 1:
            raise ValueError("An odd charge needs at least one vertex.")
        return cls((1,) + (0,) * (n - 1))

    def __getitem__(self, vertex):
        return self.values[vertex - 1]

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class TseitinInstance:
    hypergraph: object
    charges: ChargeLabeling

    def __post_init__(self):
        if len(self.charges) != self.hypergraph.n:
            raise ValueError(
                f"{len(self.charges)} charges given for {self.hypergraph.n} vertices."
            )


def is_odd_charge(charges):
    return charges.parity == 1


def update_charge(charges, edge, bit):
    """Flip the charge of every vertex of ``edge`` when ``bit`` is 1."""
    if not bit:
        return charges
    values = list(charges.values)
    for vertex in edge:
        values[vertex - 1] ^= 1
    return ChargeLabeling(tuple(values))


def parity_tuples(arity, parity):
    return frozenset(
        values
        for values in product((0, 1), repeat=arity)
        if sum(values) % 2 == parity
    )


def tseitin_csp(instance):
    """
    One constraint per vertex, over its incident edges in index order.

    A vertex without edges becomes a constant constraint: satisfied when its
    charge is 0, violated when it is 1.
    """
    hypergraph = instance.hypergraph
    incidence = hypergraph.incidence()
    constraints = tuple(
        Constraint(
            tuple(incidence[v]), parity_tuples(len(incidence[v]), instance.charges[v])
        )
        for v in hypergraph.vertices
    )
    return CSP(hypergraph.m, 2, constraints)


def tseitin_cnf(instance):
    """
    The CNF of :func:`tseitin_csp`; ``provenance`` gives each clause's vertex.

    A charged vertex without edges contributes the empty clause.
    """
    return cnf_encode(tseitin_csp(instance))
