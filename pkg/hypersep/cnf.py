from dataclasses import dataclass


@dataclass(frozen=True)
class Cnf:
    """
    A CNF over variables ``1..num_vars`` with DIMACS-signed literals.

    ``provenance`` optionally names, for every clause, the constraint or vertex
    it was generated from (1-based, aligned with ``clauses``).
    """

    num_vars: int
    clauses: tuple
    provenance: tuple = None

    def __post_init__(self):
        clauses = tuple(tuple(clause) for clause in self.clauses)
        for index, clause in enumerate(clauses, start=1):
            for literal in clause:
                if literal == 0 or abs(literal) > self.num_vars:
                    raise ValueError(f"Clause {index} has invalid literal {literal}.")
        object.__setattr__(self, "clauses", clauses)
        if self.provenance is not None:
            provenance = tuple(self.provenance)
            if len(provenance) != len(clauses):
                raise ValueError("Provenance must name one source per clause.")
            object.__setattr__(self, "provenance", provenance)

    def clause(self, index):
        return self.clauses[index - 1]

    def is_satisfied(self, assignment):
        """``assignment`` maps variables to 0/1 and must cover every variable."""
        return all(
            any(literal_value(literal, assignment) for literal in clause)
            for clause in self.clauses
        )


def literal_value(literal, assignment):
    value = assignment[abs(literal)]
    return bool(value) if literal > 0 else not value


def is_falsified(clause, assignment):
    """True iff every literal of ``clause`` is assigned and false."""
    return all(
        abs(literal) in assignment and not literal_value(literal, assignment)
        for literal in clause
    )


def falsified_literal(variable, value):
    """The literal over ``variable`` that ``value`` makes false."""
    return -variable if value else variable
