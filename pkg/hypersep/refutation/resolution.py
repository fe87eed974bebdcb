"""
Tree-like resolution traces, built from decision trees and checked
independently of how they were built.
"""

from dataclasses import dataclass

from hypersep.refutation.trees import CheckResult, Leaf, check_dtree

AXIOM = "a"
RESOLVE = "r"


def normalize(literals):
    return tuple(sorted(set(literals), key=lambda literal: (abs(literal), literal < 0)))


@dataclass(frozen=True)
class Step:
    id: int
    kind: str
    clause: tuple
    antecedents: tuple = ()
    pivot: int = None


@dataclass(frozen=True)
class ResolutionTrace:
    steps: tuple

    @property
    def size(self):
        return len(self.steps)

    @property
    def width(self):
        return max((len(step.clause) for step in self.steps), default=0)


@dataclass
class _Derivation:
    clause: tuple
    parents: tuple = ()
    pivot: int = None


def dtree_to_resolution(cnf, tree):
    """
    Turn a binary decision tree for ``cnf`` into a tree-like refutation.

    Leaves become axioms and each query resolves its children's clauses on the
    queried variable. A child clause without that variable is passed up
    unchanged and its sibling subtree is never visited.
    """
    if tree.domain != 2:
        raise ValueError("Only binary decision trees convert to resolution.")
    checked = check_dtree(cnf, tree)
    if not checked:
        raise ValueError(f"Invalid decision tree: {checked.message}")

    def derive(node):
        if isinstance(node, Leaf):
            return _Derivation(normalize(cnf.clause(node.index)))
        x = node.variable
        negative = derive(node.children[0])
        if x not in negative.clause:
            return negative
        positive = derive(node.children[1])
        if -x not in positive.clause:
            return positive
        resolvent = (set(negative.clause) - {x}) | (set(positive.clause) - {-x})
        return _Derivation(normalize(resolvent), (negative, positive), x)

    steps = []
    stack = [(derive(tree.root), False)]
    ids = {}
    while stack:
        derivation, expanded = stack.pop()
        if derivation.parents and not expanded:
            stack.append((derivation, True))
            stack.extend((parent, False) for parent in reversed(derivation.parents))
            continue
        step_id = len(steps) + 1
        ids[id(derivation)] = step_id
        if derivation.parents:
            antecedents = tuple(ids[id(parent)] for parent in derivation.parents)
            steps.append(
                Step(step_id, RESOLVE, derivation.clause, antecedents, derivation.pivot)
            )
        else:
            steps.append(Step(step_id, AXIOM, derivation.clause))
    return ResolutionTrace(tuple(steps))


def check_resolution(cnf, trace):
    """
    Verify ``trace`` as a tree-like refutation of ``cnf``: consecutive ids from
    1, axioms taken from ``cnf``, exact resolvents, every step used at most
    once as an antecedent, and an empty final clause.
    """
    if not trace.steps:
        return CheckResult(False, None, "trace is empty")
    axioms = {frozenset(clause) for clause in cnf.clauses}
    clauses = {}
    used = set()
    previous = 0
    for step in trace.steps:
        if step.id != previous + 1:
            return CheckResult(False, step.id, f"step id {step.id} follows {previous}")
        previous = step.id
        clause = frozenset(step.clause)
        if len(clause) != len(step.clause):
            return CheckResult(False, step.id, "clause repeats a literal")
        if step.kind == AXIOM:
            if clause not in axioms:
                return CheckResult(False, step.id, "axiom is not a clause of the CNF")
        elif step.kind == RESOLVE:
            if len(step.antecedents) != 2:
                return CheckResult(False, step.id, "resolution needs two antecedents")
            for antecedent in step.antecedents:
                if antecedent not in clauses:
                    return CheckResult(
                        False, step.id, f"antecedent {antecedent} is not earlier"
                    )
                if antecedent in used:
                    return CheckResult(
                        False, step.id, f"antecedent {antecedent} is used twice"
                    )
            if step.antecedents[0] == step.antecedents[1]:
                return CheckResult(False, step.id, "antecedents coincide")
            first, second = (clauses[a] for a in step.antecedents)
            pivot = step.pivot
            if pivot is None or pivot <= 0:
                return CheckResult(False, step.id, "pivot must be a positive variable")
            clashes = pivot in first and -pivot in second
            if not (clashes or -pivot in first and pivot in second):
                return CheckResult(
                    False, step.id, f"pivot {pivot} does not clash in the antecedents"
                )
            resolvent = (first | second) - {pivot, -pivot}
            if any(-literal in resolvent for literal in resolvent):
                return CheckResult(False, step.id, "resolvent is a tautology")
            if clause != resolvent:
                return CheckResult(False, step.id, "clause is not the resolvent")
            used.update(step.antecedents)
        else:
            return CheckResult(False, step.id, f"unknown step kind {step.kind!r}")
        clauses[step.id] = clause
    if trace.steps[-1].clause:
        return CheckResult(False, trace.steps[-1].id, "final clause is not empty")
    return CheckResult(True)
