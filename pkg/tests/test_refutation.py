import random
import unittest
from math import ceil

from hypersep.cnf import Cnf
from hypersep.csp import (
    CSP,
    DECIDE,
    Constraint,
    brute_force,
    cnf_encode,
    constraint_hypergraph,
)
from hypersep.exceptions import SatisfiableInstance
from hypersep.hypergraph import Hypergraph, max_degree
from hypersep.refutation import (
    AXIOM,
    RESOLVE,
    DecisionTree,
    Leaf,
    Query,
    ResolutionTrace,
    Step,
    check_dtree,
    check_resolution,
    dtree_to_resolution,
    refute_csp2,
    refute_tseitin,
    tseitin_leaf_exponent,
)
from hypersep.separator import epsilon_r, separator_params
from hypersep.tseitin import (
    ChargeLabeling,
    TseitinInstance,
    tseitin_cnf,
    tseitin_csp,
)

from .base import (
    complete_graph,
    cube_graph,
    cycle_graph,
    disjoint_union,
    not_equal_csp,
    path_graph,
    random_connected_graph,
    random_csp,
    triangle,
)

CONTRADICTION = Cnf(1, ((1,), (-1,)))
SPLIT = DecisionTree(2, Query(1, (Leaf(1), Leaf(2))))


def assert_sound(test, cnf, refutation):
    test.assertTrue(check_dtree(cnf, refutation.tree))
    test.assertTrue(check_resolution(cnf, refutation.trace))
    stats = refutation.stats
    test.assertEqual(stats.leaves, refutation.tree.leaf_count())
    test.assertEqual(stats.depth, refutation.tree.depth())
    test.assertEqual(stats.proof_size, refutation.trace.size)
    test.assertLessEqual(stats.proof_size, 2 * stats.leaves - 1)
    test.assertEqual(refutation.trace.steps[-1].clause, ())


class CheckDtreeTestCase(unittest.TestCase):
    def test_valid(self):
        result = check_dtree(CONTRADICTION, SPLIT)
        self.assertTrue(result)
        self.assertEqual(SPLIT.leaf_count(), 2)
        self.assertEqual(SPLIT.depth(), 1)

    def test_leaf_not_falsified(self):
        tree = DecisionTree(2, Query(1, (Leaf(2), Leaf(1))))
        result = check_dtree(CONTRADICTION, tree)
        self.assertFalse(result)
        self.assertEqual(result.location, ((1, 0),))
        self.assertIn("x1=0", result.message)

    def test_repeated_variable(self):
        tree = DecisionTree(2, Query(1, (Query(1, (Leaf(1), Leaf(2))), Leaf(2))))
        result = check_dtree(CONTRADICTION, tree)
        self.assertFalse(result)
        self.assertEqual(result.location, ((1, 0),))

    def test_malformed(self):
        trees = [
            DecisionTree(3, Query(1, (Leaf(1), Leaf(2), Leaf(2)))),
            DecisionTree(2, Query(1, (Leaf(1), Leaf(2), Leaf(2)))),
            DecisionTree(2, Query(2, (Leaf(1), Leaf(2)))),
            DecisionTree(2, Query(1, (Leaf(1), Leaf(3)))),
            DecisionTree(2, Query(1, (Leaf(1), "leaf"))),
        ]
        for tree in trees:
            with self.assertRaises(ValueError):
                check_dtree(CONTRADICTION, tree)

    def test_csp_source(self):
        csp = CSP(2, 3, (Constraint((1, 2), {(0, 1)}),))
        tree = DecisionTree(
            3,
            Query(
                1,
                (
                    Query(2, (Leaf(1), Query(1, (Leaf(1),) * 3), Leaf(1))),
                    Leaf(1),
                    Leaf(1),
                ),
            ),
        )
        self.assertFalse(check_dtree(csp, tree))
        tree = DecisionTree(
            3,
            Query(1, (Query(2, (Leaf(1), Leaf(1), Leaf(1))), Leaf(1), Leaf(1))),
        )
        result = check_dtree(csp, tree)
        self.assertFalse(result)
        self.assertEqual(result.location, ((1, 0), (2, 1)))
        self.assertEqual(len(list(tree.paths())), 7)


class DtreeToResolutionTestCase(unittest.TestCase):
    def test_contradiction(self):
        trace = dtree_to_resolution(CONTRADICTION, SPLIT)
        self.assertEqual(
            trace.steps,
            (
                Step(1, AXIOM, (1,)),
                Step(2, AXIOM, (-1,)),
                Step(3, RESOLVE, (), (1, 2), 1),
            ),
        )
        self.assertEqual((trace.size, trace.width), (3, 1))
        self.assertTrue(check_resolution(CONTRADICTION, trace))

    def test_child_without_pivot_is_passed_up(self):
        cnf = Cnf(2, ((2,), (-2,)))
        inner = Query(2, (Leaf(1), Leaf(2)))
        tree = DecisionTree(2, Query(1, (inner, inner)))
        trace = dtree_to_resolution(cnf, tree)
        self.assertEqual(trace.size, 3)
        self.assertEqual(trace.steps[-1], Step(3, RESOLVE, (), (1, 2), 2))

    def test_unused_sibling_is_skipped(self):
        cnf = Cnf(2, ((1,), (-1,), (2,)))
        tree = DecisionTree(2, Query(2, (Leaf(3), Query(1, (Leaf(1), Leaf(2))))))
        trace = dtree_to_resolution(cnf, tree)
        self.assertEqual([step.clause for step in trace.steps], [(1,), (-1,), ()])

    def test_larger_clauses(self):
        cnf = tseitin_cnf(TseitinInstance(triangle(), ChargeLabeling.odd(3)))

        def build(path, remaining):
            for index, clause in enumerate(cnf.clauses, start=1):
                if all(path.get(abs(lit)) == (0 if lit > 0 else 1) for lit in clause):
                    return Leaf(index)
            x = remaining[0]
            return Query(
                x, tuple(build({**path, x: v}, remaining[1:]) for v in (0, 1))
            )

        tree = DecisionTree(2, build({}, (1, 2, 3)))
        self.assertTrue(check_dtree(cnf, tree))
        trace = dtree_to_resolution(cnf, tree)
        self.assertTrue(check_resolution(cnf, trace))
        self.assertLessEqual(trace.size, 2 * tree.leaf_count() - 1)
        self.assertLessEqual(trace.width, 2)

    def test_rejects_invalid_trees(self):
        with self.assertRaises(ValueError):
            swapped = DecisionTree(2, Query(1, (Leaf(2), Leaf(1))))
            dtree_to_resolution(CONTRADICTION, swapped)
        with self.assertRaises(ValueError):
            dtree_to_resolution(
                CSP(1, 3, ()), DecisionTree(3, Query(1, (Leaf(1),) * 3))
            )


class CheckResolutionTestCase(unittest.TestCase):
    def setUp(self):
        self.steps = list(dtree_to_resolution(CONTRADICTION, SPLIT).steps)

    def check(self, steps, cnf=CONTRADICTION):
        return check_resolution(cnf, ResolutionTrace(tuple(steps)))

    def test_valid(self):
        self.assertTrue(self.check(self.steps))

    def test_empty(self):
        self.assertFalse(self.check([]))

    def test_ids(self):
        self.steps[0], self.steps[1] = self.steps[1], self.steps[0]
        result = self.check(self.steps)
        self.assertFalse(result)
        self.assertEqual(result.location, 2)

    def test_unknown_axiom(self):
        cnf = Cnf(2, ((1,), (-1,)))
        result = self.check([Step(1, AXIOM, (2,))] + self.steps[1:], cnf)
        self.assertFalse(result)
        self.assertEqual(result.location, 1)

    def test_repeated_literal(self):
        self.assertFalse(self.check([Step(1, AXIOM, (1, 1))] + self.steps[1:]))

    def test_final_clause(self):
        result = self.check(self.steps[:2])
        self.assertFalse(result)
        self.assertIn("not empty", result.message)

    def test_antecedents(self):
        cases = [
            Step(3, RESOLVE, (), (1,), 1),
            Step(3, RESOLVE, (), (1, 4), 1),
            Step(3, RESOLVE, (), (1, 1), 1),
            Step(3, RESOLVE, (), (1, 2), 2),
            Step(3, RESOLVE, (), (1, 2), -1),
            Step(3, RESOLVE, (1,), (1, 2), 1),
            Step(3, "x", (), (1, 2), 1),
        ]
        for step in cases:
            result = self.check(self.steps[:2] + [step])
            self.assertFalse(result, step)
            self.assertEqual(result.location, 3)

    def test_antecedent_used_twice(self):
        steps = self.steps + [Step(4, RESOLVE, (), (1, 2), 1)]
        result = self.check(steps)
        self.assertFalse(result)
        self.assertIn("used twice", result.message)

    def test_tautology(self):
        cnf = Cnf(2, ((1, 2), (-1, -2)))
        steps = [
            Step(1, AXIOM, (1, 2)),
            Step(2, AXIOM, (-1, -2)),
            Step(3, RESOLVE, (2, -2), (1, 2), 1),
        ]
        result = self.check(steps, cnf)
        self.assertFalse(result)
        self.assertIn("tautology", result.message)


class RefuteCsp2TestCase(unittest.TestCase):
    def test_small_unsatisfiable_instances(self):
        graphs = [
            triangle(),
            complete_graph(4),
            disjoint_union(triangle(), triangle()),
            disjoint_union(path_graph(3), cycle_graph(5)),
        ]
        for graph in graphs:
            csp = not_equal_csp(graph, 2)
            refutation = refute_csp2(csp, seed=1)
            assert_sound(self, cnf_encode(csp), refutation)
            self.assertEqual(len(refutation.stats.separators_used), 1)

    def test_satisfiable(self):
        csp = not_equal_csp(path_graph(4), 2)
        with self.assertRaises(SatisfiableInstance) as context:
            refute_csp2(csp)
        self.assertTrue(csp.satisfies(context.exception.witness))
        self.assertEqual(set(context.exception.witness), {1, 2, 3, 4})

    def test_constant_constraint(self):
        csp = CSP(1, 2, (Constraint((), frozenset()),))
        refutation = refute_csp2(csp)
        self.assertEqual(refutation.tree.root, Leaf(1))
        self.assertEqual(refutation.trace.steps, (Step(1, AXIOM, ()),))
        self.assertEqual(refutation.stats.leaves, 1)

    def test_needs_boolean_domain(self):
        with self.assertRaises(ValueError):
            refute_csp2(not_equal_csp(triangle(), 3))

    def test_random_instances(self):
        rng = random.Random(61)
        refuted = 0
        for _ in range(500):
            csp = random_csp(rng, rng.randint(1, 8), 2, rng.randint(1, 10), 3, 3)
            satisfiable = brute_force(csp, DECIDE).satisfiable
            seed = rng.randrange(100)
            for method in ("random", "exhaustive", "vertex-cut"):
                if satisfiable:
                    with self.assertRaises(SatisfiableInstance) as context:
                        refute_csp2(csp, method, seed=seed, max_trials=50)
                    self.assertTrue(csp.satisfies(context.exception.witness))
                    continue
                refutation = refute_csp2(csp, method, seed=seed, max_trials=50)
                assert_sound(self, cnf_encode(csp), refutation)
                [(_, separator_size)] = refutation.stats.separators_used
                self.assertLessEqual(
                    refutation.stats.depth, separator_size + ceil(csp.num_vars / 2)
                )
                refuted += 1
        self.assertGreater(refuted, 0)

    def test_odd_tseitin_on_k4(self):
        graph = complete_graph(4)
        csp = tseitin_csp(TseitinInstance(graph, ChargeLabeling.odd(4)))
        params = separator_params(constraint_hypergraph(csp).hypergraph)
        self.assertEqual(params.r, 2)
        for method in ("random", "exhaustive", "vertex-cut"):
            refutation = refute_csp2(csp, method, seed=3)
            assert_sound(self, cnf_encode(csp), refutation)
            self.assertLessEqual(
                refutation.stats.depth, (1 - epsilon_r(2)) * 6 + 3 * params.slack
            )
            self.assertLessEqual(refutation.stats.depth, 6)

    def test_stats_record(self):
        refutation = refute_csp2(not_equal_csp(triangle(), 2))
        record = refutation.stats.as_record()
        self.assertEqual(
            list(record),
            [
                "leaves",
                "depth",
                "proof_size",
                "proof_width",
                "separators",
                "relaxations",
            ],
        )
        self.assertEqual(record["relaxations"], 0)
        self.assertRegex(record["separators"], r"^3/\d+$")


class RefuteTseitinTestCase(unittest.TestCase):
    def refute(self, graph, base_case_edges=None, charges=None):
        charges = charges or ChargeLabeling.odd(graph.n)
        refutation = refute_tseitin(graph, charges, base_case_edges)
        cnf = tseitin_cnf(TseitinInstance(graph, charges))
        assert_sound(self, cnf, refutation)
        return refutation

    def test_single_edge(self):
        refutation = self.refute(path_graph(2))
        self.assertEqual(refutation.tree, DecisionTree(2, Query(1, (Leaf(1), Leaf(2)))))
        self.assertEqual(refutation.stats.leaves, 2)
        self.assertEqual(refutation.trace.size, 3)

    def test_triangle(self):
        for base_case_edges in (None, 0):
            refutation = self.refute(triangle(), base_case_edges)
            self.assertLessEqual(refutation.stats.depth, 3)
            self.assertLessEqual(refutation.stats.leaves, 8)

    def test_cube_uses_cuts(self):
        refutation = self.refute(cube_graph(), base_case_edges=0)
        stats = refutation.stats
        self.assertTrue(stats.separators_used)
        for edges, size in stats.separators_used:
            self.assertLessEqual(size, edges)
        exponent = tseitin_leaf_exponent(12, 3)
        self.assertLessEqual(stats.leaves, 2**exponent)

    def assert_same_queries(self, one, other):
        if not (isinstance(one, Query) and isinstance(other, Query)):
            return
        self.assertEqual(one.variable, other.variable)
        for left, right in zip(one.children, other.children):
            self.assert_same_queries(left, right)

    def test_charge_position_does_not_matter(self):
        reference = self.refute(cube_graph(), base_case_edges=0).tree.root
        for vertex in range(1, 9):
            charges = ChargeLabeling.from_mapping(8, {vertex: 1})
            refutation = self.refute(cube_graph(), base_case_edges=0, charges=charges)
            self.assert_same_queries(reference, refutation.tree.root)

    def test_random_connected_graphs(self):
        rng = random.Random(67)
        for _ in range(40):
            n = rng.randint(2, 10)
            graph = random_connected_graph(rng, n, 3, rng.randint(0, 8))
            charges = ChargeLabeling.odd(n)
            if rng.random() < 0.5:
                values = [rng.randint(0, 1) for _ in range(n)]
                values[0] ^= sum(values) % 2 ^ 1
                charges = ChargeLabeling(tuple(values))
            base_case_edges = rng.choice((None, 0))
            refutation = self.refute(graph, base_case_edges, charges)
            k = max_degree(graph)
            self.assertLessEqual(refutation.stats.depth, graph.m)
            exponent = tseitin_leaf_exponent(graph.m, k)
            self.assertLessEqual(refutation.stats.leaves, 2**exponent)

    def test_even_charge(self):
        with self.assertRaises(SatisfiableInstance):
            refute_tseitin(triangle(), ChargeLabeling((1, 1, 0)))

    def test_rejects_non_graphs(self):
        with self.assertRaises(ValueError):
            refute_tseitin(Hypergraph(3, ({1, 2, 3},)), ChargeLabeling.odd(3))
        with self.assertRaises(ValueError):
            refute_tseitin(Hypergraph(2, ({1, 2}, {1, 2})), ChargeLabeling.odd(2))

    def test_leaf_exponent(self):
        self.assertEqual(tseitin_leaf_exponent(0, 3), 0)
        self.assertGreater(tseitin_leaf_exponent(100, 3), tseitin_leaf_exponent(50, 3))
        self.assertEqual(
            tseitin_leaf_exponent(16, 2, m=16), tseitin_leaf_exponent(16, 2)
        )
