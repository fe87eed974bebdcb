"""
Readers and writers for the line-based text formats.

Every reader takes a text stream and raises
:class:`~hypersep.exceptions.ParseError` with the offending line number;
every writer produces text its reader maps back to an equal value.
"""

import csv

from hypersep.cnf import Cnf
from hypersep.csp import CSP, Constraint
from hypersep.exceptions import ParseError
from hypersep.hypergraph import Hypergraph
from hypersep.refutation.resolution import AXIOM, RESOLVE, ResolutionTrace, Step
from hypersep.refutation.trees import DecisionTree, Leaf, Query
from hypersep.tseitin import ChargeLabeling

# Comment labels that attach the following clauses to a constraint or vertex.
PROVENANCE_LABELS = ("vertex", "constraint")

REPORT_FIELDS = (
    "n",
    "k",
    "r",
    "m",
    "max_degree",
    "min_sep",
    "theory_bound",
    "ratio",
    "seed",
)


def _records(stream):
    """Yield ``(line number, tokens)`` of lines other than blanks and comments."""
    for lineno, line in enumerate(stream, start=1):
        tokens = line.split()
        if tokens and tokens[0] != "c":
            yield lineno, tokens


def _int(token, lineno):
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno)


def _ints(tokens, lineno):
    return [_int(token, lineno) for token in tokens]


def _header(records, kind, fields):
    try:
        lineno, tokens = next(records)
    except StopIteration:
        raise ParseError(f"missing 'p {kind}' header")
    if tokens[:2] != ["p", kind] or len(tokens) != 2 + fields:
        raise ParseError(f"expected 'p {kind}' and {fields} integers", lineno)
    values = _ints(tokens[2:], lineno)
    if any(value < 0 for value in values):
        raise ParseError("header values must be non-negative", lineno)
    return lineno, values


def _next(records, what, previous):
    try:
        return next(records)
    except StopIteration:
        raise ParseError(f"unexpected end of input, expected {what}", previous)


def _expect_end(records, what):
    for lineno, _ in records:
        raise ParseError(f"unexpected content after the {what}", lineno)


def read_hypergraph(stream):
    records = _records(stream)
    lineno, (n, m) = _header(records, "hg", 2)
    edges = []
    for index in range(1, m + 1):
        lineno, tokens = _next(records, f"edge {index}", lineno)
        vertices = _ints(tokens, lineno)
        if any(b <= a for a, b in zip(vertices, vertices[1:])):
            raise ParseError(f"edge {index} is not strictly increasing", lineno)
        if any(not 1 <= v <= n for v in vertices):
            raise ParseError(f"edge {index} has a vertex outside [1, {n}]", lineno)
        edges.append(vertices)
    _expect_end(records, f"{m} edges")
    return Hypergraph(n, tuple(edges))


def write_hypergraph(hypergraph, stream):
    stream.write(f"p hg {hypergraph.n} {hypergraph.m}\n")
    for edge in hypergraph.edges:
        stream.write(" ".join(map(str, sorted(edge))) + "\n")


def read_csp(stream):
    """
    Read a ``.csp`` file. A constraint of arity 0 has no tuple lines; its
    count (0 or 1) says whether the empty tuple is allowed.
    """
    records = _records(stream)
    lineno, (num_vars, domain, count) = _header(records, "csp", 3)
    if domain < 2:
        raise ParseError("domain size must be at least 2", lineno)
    constraints = []
    for index in range(1, count + 1):
        lineno, tokens = _next(records, f"constraint {index}", lineno)
        values = _ints(tokens, lineno)
        if not values or len(values) != values[0] + 2:
            raise ParseError(
                f"constraint {index} needs '<arity> <variables> <tuple count>'", lineno
            )
        arity, scope, tuples = values[0], tuple(values[1:-1]), values[-1]
        if len(set(scope)) != arity or any(not 1 <= x <= num_vars for x in scope):
            raise ParseError(f"constraint {index} has an invalid scope", lineno)
        if arity == 0:
            if tuples > 1:
                raise ParseError("arity 0 allows at most 1 tuple", lineno)
            constraints.append(Constraint((), frozenset([()] * tuples)))
            continue
        allowed = []
        for _ in range(tuples):
            lineno, tokens = _next(records, f"a tuple of constraint {index}", lineno)
            row = tuple(_ints(tokens, lineno))
            if len(row) != arity or any(not 0 <= v < domain for v in row):
                raise ParseError(f"invalid tuple for constraint {index}", lineno)
            allowed.append(row)
        constraints.append(Constraint(scope, frozenset(allowed)))
    _expect_end(records, f"{count} constraints")
    return CSP(num_vars, domain, tuple(constraints))


def write_csp(csp, stream):
    stream.write(f"p csp {csp.num_vars} {csp.domain} {len(csp.constraints)}\n")
    for constraint in csp.constraints:
        header = [constraint.arity, *constraint.scope, len(constraint.allowed)]
        stream.write(" ".join(map(str, header)) + "\n")
        if constraint.arity:
            for row in sorted(constraint.allowed):
                stream.write(" ".join(map(str, row)) + "\n")


def read_cnf(stream):
    """
    Read DIMACS CNF. Clauses may span lines and end at ``0``; comments of the
    form ``c vertex <v>`` or ``c constraint <j>`` set the provenance of the
    clauses that follow. Provenance is kept only when every clause has one.
    """
    header = None
    clauses, provenance = [], []
    source = None
    current = []
    lineno = 0
    for lineno, line in enumerate(stream, start=1):
        tokens = line.split()
        if not tokens:
            continue
        if tokens[0] == "c":
            if len(tokens) == 3 and tokens[1] in PROVENANCE_LABELS:
                source = _int(tokens[2], lineno)
            continue
        if tokens[0] == "p":
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise ParseError("expected 'p cnf <vars> <clauses>'", lineno)
            header = tuple(_ints(tokens[2:], lineno))
            continue
        if header is None:
            raise ParseError("clause before the 'p cnf' header", lineno)
        for literal in _ints(tokens, lineno):
            if literal == 0:
                clauses.append(tuple(current))
                provenance.append(source)
                current = []
            elif abs(literal) > header[0]:
                raise ParseError(f"literal {literal} is out of range", lineno)
            else:
                current.append(literal)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("last clause is not terminated by 0", lineno)
    if len(clauses) != header[1]:
        raise ParseError(
            f"header announces {header[1]} clauses, found {len(clauses)}", lineno
        )
    if not provenance or None in provenance:
        provenance = None
    return Cnf(header[0], tuple(clauses), provenance)


def write_cnf(cnf, stream, label="constraint"):
    """Write DIMACS; with provenance, each run of clauses from one source is
    preceded by ``c <label> <source>``."""
    stream.write(f"p cnf {cnf.num_vars} {len(cnf.clauses)}\n")
    previous = None
    for position, clause in enumerate(cnf.clauses):
        if cnf.provenance is not None and cnf.provenance[position] != previous:
            previous = cnf.provenance[position]
            stream.write(f"c {label} {previous}\n")
        stream.write(" ".join(map(str, (*clause, 0))) + "\n")


def read_dtree(stream):
    records = _records(stream)
    lineno, (domain,) = _header(records, "dt", 1)
    if domain < 2:
        raise ParseError("a decision tree needs at least 2 children per node", lineno)
    root = None
    open_nodes = []  # [variable, children so far]
    for lineno, tokens in records:
        if root is not None:
            raise ParseError("content after the complete tree", lineno)
        if len(tokens) != 2 or tokens[0] not in ("n", "l"):
            raise ParseError("expected 'n <variable>' or 'l <index>'", lineno)
        value = _int(tokens[1], lineno)
        if value < 1:
            raise ParseError("variables and leaf indices start at 1", lineno)
        if tokens[0] == "n":
            open_nodes.append([value, []])
            continue
        node = Leaf(value)
        while open_nodes:
            open_nodes[-1][1].append(node)
            if len(open_nodes[-1][1]) < domain:
                break
            variable, children = open_nodes.pop()
            node = Query(variable, tuple(children))
        else:
            root = node
    if root is None:
        raise ParseError("incomplete decision tree", lineno)
    return DecisionTree(domain, root)


def write_dtree(tree, stream):
    stream.write(f"p dt {tree.domain}\n")
    for _, node in tree.paths():
        if isinstance(node, Query):
            stream.write(f"n {node.variable}\n")
        else:
            stream.write(f"l {node.index}\n")


def read_trace(stream):
    steps = []
    for lineno, tokens in _records(stream):
        values = tokens[:1] + tokens[2:]
        if len(tokens) < 3 or tokens[1] not in (AXIOM, RESOLVE):
            raise ParseError("expected '<id> a ... 0' or '<id> r ... 0'", lineno)
        numbers = _ints(values, lineno)
        if numbers[-1] != 0 or 0 in numbers[1:-1]:
            raise ParseError("a step must end with a single 0", lineno)
        step_id, rest = numbers[0], numbers[1:-1]
        if tokens[1] == AXIOM:
            steps.append(Step(step_id, AXIOM, tuple(rest)))
            continue
        if len(rest) < 3:
            raise ParseError("resolution needs two antecedents and a pivot", lineno)
        first, second, pivot, *literals = rest
        steps.append(Step(step_id, RESOLVE, tuple(literals), (first, second), pivot))
    return ResolutionTrace(tuple(steps))


def write_trace(trace, stream):
    for step in trace.steps:
        if step.kind == AXIOM:
            fields = (step.id, AXIOM, *step.clause, 0)
        else:
            fields = (step.id, RESOLVE, *step.antecedents, step.pivot, *step.clause, 0)
        stream.write(" ".join(map(str, fields)) + "\n")


def read_charges(stream, n):
    """Read ``<vertex> <bit>`` lines; unlisted vertices have charge 0."""
    charges = {}
    for lineno, tokens in _records(stream):
        if len(tokens) != 2:
            raise ParseError("expected '<vertex> <bit>'", lineno)
        vertex, bit = _ints(tokens, lineno)
        if not 1 <= vertex <= n:
            raise ParseError(f"vertex {vertex} outside [1, {n}]", lineno)
        if bit not in (0, 1):
            raise ParseError(f"charge {bit} is not 0 or 1", lineno)
        if vertex in charges:
            raise ParseError(f"vertex {vertex} is charged twice", lineno)
        charges[vertex] = bit
    return ChargeLabeling.from_mapping(n, charges)


def write_charges(charges, stream):
    for vertex, bit in enumerate(charges.values, start=1):
        stream.write(f"{vertex} {bit}\n")


def write_report(report, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(REPORT_FIELDS)
    for row in report.rows:
        writer.writerow(
            [
                row.n,
                row.k,
                row.r,
                row.m,
                row.max_degree,
                row.min_sep,
                f"{row.theory_bound:.6f}",
                f"{row.ratio:.6f}",
                row.seed,
            ]
        )
