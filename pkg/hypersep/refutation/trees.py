from dataclasses import dataclass

from hypersep.cnf import Cnf, is_falsified


@dataclass(frozen=True)
class Leaf:
    """Names the 1-based clause (or constraint) falsified on the way here."""

    index: int


@dataclass(frozen=True)
class Query:
    """Queries ``variable``; ``children[b]`` continues with ``variable = b``."""

    variable: int
    children: tuple


@dataclass(frozen=True)
class DecisionTree:
    domain: int
    root: object

    def paths(self):
        """Yield ``(path, node)`` pairs in preorder; ``path`` lists
        ``(variable, value)`` choices from the root."""
        stack = [((), self.root)]
        while stack:
            path, node = stack.pop()
            yield path, node
            if isinstance(node, Query):
                for value in reversed(range(len(node.children))):
                    step = (node.variable, value)
                    stack.append((path + (step,), node.children[value]))

    def leaf_count(self):
        return sum(1 for _, node in self.paths() if isinstance(node, Leaf))

    def depth(self):
        return max(len(path) for path, _ in self.paths())


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    location: object = None
    message: str = ""

    def __bool__(self):
        return self.ok


def format_path(path):
    if not path:
        return "root"
    return " ".join(f"x{variable}={value}" for variable, value in path)


def check_dtree(source, tree):
    """
    Check that no path queries a variable twice and that every leaf's clause
    (for a :class:`~hypersep.cnf.Cnf`) or constraint (for a
    :class:`~hypersep.csp.CSP`) is falsified by its path.

    Raises :class:`ValueError` for a malformed tree; violations are reported
    in the returned :class:`CheckResult`.
    """
    is_cnf = isinstance(source, Cnf)
    num_vars = source.num_vars
    domain = 2 if is_cnf else source.domain
    items = source.clauses if is_cnf else source.constraints
    if tree.domain != domain:
        raise ValueError(f"Tree has domain {tree.domain}, source has {domain}.")

    for path, node in tree.paths():
        if isinstance(node, Query):
            if len(node.children) != domain:
                raise ValueError(
                    f"Node at {format_path(path)} has {len(node.children)} children."
                )
            if not 1 <= node.variable <= num_vars:
                raise ValueError(
                    f"Node at {format_path(path)} queries x{node.variable}."
                )
            if any(variable == node.variable for variable, _ in path):
                return CheckResult(
                    False,
                    path,
                    f"x{node.variable} queried twice at {format_path(path)}",
                )
            continue
        if not isinstance(node, Leaf):
            raise ValueError(f"Unexpected node {node!r} at {format_path(path)}.")
        if not 1 <= node.index <= len(items):
            raise ValueError(f"Leaf at {format_path(path)} names item {node.index}.")
        assignment = dict(path)
        item = items[node.index - 1]
        falsified = (
            is_falsified(item, assignment) if is_cnf else item.is_falsified(assignment)
        )
        if not falsified:
            return CheckResult(
                False,
                path,
                f"leaf at {format_path(path)} does not falsify item {node.index}",
            )
    return CheckResult(True)
