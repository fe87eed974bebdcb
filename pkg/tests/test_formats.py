import io
import unittest

from hypersep.cnf import Cnf
from hypersep.csp import CSP, Constraint
from hypersep.exceptions import ParseError
from hypersep.experiments import ExperimentReport, ExperimentRow
from hypersep.formats import (
    read_charges,
    read_cnf,
    read_csp,
    read_dtree,
    read_hypergraph,
    read_trace,
    write_charges,
    write_cnf,
    write_csp,
    write_dtree,
    write_hypergraph,
    write_report,
    write_trace,
)
from hypersep.hypergraph import Hypergraph
from hypersep.refutation import (
    AXIOM,
    RESOLVE,
    DecisionTree,
    Leaf,
    Query,
    ResolutionTrace,
    Step,
)
from hypersep.tseitin import ChargeLabeling

from .base import not_equal_csp, path_graph, triangle


def read(reader, text, *args):
    return reader(io.StringIO(text), *args)


def write(writer, value, **kwargs):
    stream = io.StringIO()
    writer(value, stream, **kwargs)
    return stream.getvalue()


class FormatTestCase(unittest.TestCase):
    def assertParseError(self, reader, text, line, *args):
        with self.assertRaises(ParseError) as context:
            read(reader, text, *args)
        self.assertEqual(context.exception.line, line)


class HypergraphFormatTestCase(FormatTestCase):
    def test_write(self):
        self.assertEqual(
            write(write_hypergraph, path_graph(4)), "p hg 4 3\n1 2\n2 3\n3 4\n"
        )

    def test_read(self):
        text = "c a comment\n\np hg 5 2\n1 3 5\nc between edges\n2 4\n"
        self.assertEqual(
            read(read_hypergraph, text), Hypergraph(5, ({1, 3, 5}, {2, 4}))
        )
        self.assertEqual(read(read_hypergraph, "p hg 0 0\n"), Hypergraph(0, ()))

    def test_round_trip(self):
        hypergraph = Hypergraph(6, ({1, 2, 3}, {3, 6}, {4}, {1, 2, 3}))
        text = write(write_hypergraph, hypergraph)
        self.assertEqual(read(read_hypergraph, text), hypergraph)

    def test_errors(self):
        self.assertParseError(read_hypergraph, "", None)
        self.assertParseError(read_hypergraph, "p cnf 3 1\n", 1)
        self.assertParseError(read_hypergraph, "p hg 3\n", 1)
        self.assertParseError(read_hypergraph, "p hg 3 -1\n", 1)
        self.assertParseError(read_hypergraph, "p hg 3 1\n2 1\n", 2)
        self.assertParseError(read_hypergraph, "p hg 3 1\n1 1\n", 2)
        self.assertParseError(read_hypergraph, "p hg 3 1\n1 4\n", 2)
        self.assertParseError(read_hypergraph, "p hg 3 1\n1 x\n", 2)
        self.assertParseError(read_hypergraph, "p hg 3 2\n1 2\n", 2)
        self.assertParseError(read_hypergraph, "p hg 3 1\n1 2\n\n2 3\n", 4)


class CspFormatTestCase(FormatTestCase):
    def test_write(self):
        text = write(write_csp, not_equal_csp(triangle(), 2))
        self.assertEqual(
            text,
            "p csp 3 2 3\n2 1 2 2\n0 1\n1 0\n2 2 3 2\n0 1\n1 0\n2 1 3 2\n0 1\n1 0\n",
        )

    def test_round_trip(self):
        csp = CSP(
            3,
            3,
            (
                Constraint((3, 1), {(2, 0), (0, 1)}),
                Constraint((), {()}),
                Constraint((), ()),
                Constraint((2,), ()),
            ),
        )
        self.assertEqual(read(read_csp, write(write_csp, csp)), csp)

    def test_errors(self):
        self.assertParseError(read_csp, "p csp 2 1 0\n", 1)
        self.assertParseError(read_csp, "p csp 2 2 1\n2 1 1 0\n", 2)
        self.assertParseError(read_csp, "p csp 2 2 1\n2 1 3 0\n", 2)
        self.assertParseError(read_csp, "p csp 2 2 1\n2 1 2\n", 2)
        self.assertParseError(read_csp, "p csp 2 2 1\n0 2\n", 2)
        self.assertParseError(read_csp, "p csp 2 2 1\n1 1 1\n2\n", 3)
        self.assertParseError(read_csp, "p csp 2 2 1\n2 1 2 1\n0\n", 3)
        self.assertParseError(read_csp, "p csp 2 2 1\n2 1 2 2\n0 1\n", 3)


class CnfFormatTestCase(FormatTestCase):
    def test_read(self):
        text = "c header comment\np cnf 3 3\n1 -2\n0 3 0\nc\n-1\n-3 0\n"
        cnf = read(read_cnf, text)
        self.assertEqual(cnf, Cnf(3, ((1, -2), (3,), (-1, -3))))
        self.assertIsNone(cnf.provenance)

    def test_provenance(self):
        text = "p cnf 2 3\nc vertex 1\n1 2 0\n-1 0\nc vertex 2\n-2 0\n"
        cnf = read(read_cnf, text)
        self.assertEqual(cnf.provenance, (1, 1, 2))
        self.assertEqual(write(write_cnf, cnf, label="vertex"), text)
        partial = "p cnf 2 2\n1 0\nc constraint 4\n2 0\n"
        self.assertIsNone(read(read_cnf, partial).provenance)

    def test_write_without_provenance(self):
        cnf = Cnf(2, ((1, -2), ()))
        self.assertEqual(write(write_cnf, cnf), "p cnf 2 2\n1 -2 0\n0\n")
        self.assertEqual(read(read_cnf, write(write_cnf, cnf)), cnf)

    def test_errors(self):
        self.assertParseError(read_cnf, "", None)
        self.assertParseError(read_cnf, "1 0\np cnf 1 1\n", 1)
        self.assertParseError(read_cnf, "p cnf 1 1\np cnf 1 1\n", 2)
        self.assertParseError(read_cnf, "p dnf 1 1\n", 1)
        self.assertParseError(read_cnf, "p cnf 1 1\n2 0\n", 2)
        self.assertParseError(read_cnf, "p cnf 1 1\n1\n", 2)
        self.assertParseError(read_cnf, "p cnf 1 2\n1 0\n", 2)


class DtreeFormatTestCase(FormatTestCase):
    def test_round_trip(self):
        tree = DecisionTree(
            2, Query(2, (Leaf(3), Query(1, (Leaf(1), Leaf(2)))))
        )
        text = write(write_dtree, tree)
        self.assertEqual(text, "p dt 2\nn 2\nl 3\nn 1\nl 1\nl 2\n")
        self.assertEqual(read(read_dtree, text), tree)

    def test_single_leaf(self):
        self.assertEqual(read(read_dtree, "p dt 3\nl 4\n"), DecisionTree(3, Leaf(4)))

    def test_ternary(self):
        tree = read(read_dtree, "p dt 3\nn 1\nl 1\nn 2\nl 1\nl 2\nl 3\nl 2\n")
        self.assertEqual(
            tree.root,
            Query(1, (Leaf(1), Query(2, (Leaf(1), Leaf(2), Leaf(3))), Leaf(2))),
        )

    def test_errors(self):
        self.assertParseError(read_dtree, "p dt 1\nl 1\n", 1)
        self.assertParseError(read_dtree, "p dt 2\nn 1\nl 1\n", 3)
        self.assertParseError(read_dtree, "p dt 2\nl 1\nl 2\n", 3)
        self.assertParseError(read_dtree, "p dt 2\nx 1\n", 2)
        self.assertParseError(read_dtree, "p dt 2\nn 0\n", 2)
        self.assertParseError(read_dtree, "p dt 2\n", 1)


class TraceFormatTestCase(FormatTestCase):
    TRACE = ResolutionTrace(
        (
            Step(1, AXIOM, (1,)),
            Step(2, AXIOM, (-1, 2)),
            Step(3, RESOLVE, (2,), (1, 2), 1),
            Step(4, AXIOM, (-2,)),
            Step(5, RESOLVE, (), (3, 4), 2),
        )
    )

    def test_write(self):
        self.assertEqual(
            write(write_trace, self.TRACE),
            "1 a 1 0\n2 a -1 2 0\n3 r 1 2 1 2 0\n4 a -2 0\n5 r 3 4 2 0\n",
        )

    def test_round_trip(self):
        text = write(write_trace, self.TRACE)
        self.assertEqual(read(read_trace, "c proof\n" + text), self.TRACE)
        self.assertEqual(read(read_trace, "1 a 0\n").steps, (Step(1, AXIOM, ()),))

    def test_errors(self):
        self.assertParseError(read_trace, "1 a 1\n", 1)
        self.assertParseError(read_trace, "1 a 0 1 0\n", 1)
        self.assertParseError(read_trace, "1 a 1 0\n2 x 1 0\n", 2)
        self.assertParseError(read_trace, "1 a 1 0\n2 r 1 0\n", 2)
        self.assertParseError(read_trace, "1 a\n", 1)


class ChargesFormatTestCase(FormatTestCase):
    def test_read(self):
        charges = read(read_charges, "c charges\n1 1\n3 0\n", 3)
        self.assertEqual(charges, ChargeLabeling((1, 0, 0)))

    def test_round_trip(self):
        charges = ChargeLabeling((0, 1, 1, 1))
        text = write(write_charges, charges)
        self.assertEqual(text, "1 0\n2 1\n3 1\n4 1\n")
        self.assertEqual(read(read_charges, text, 4), charges)

    def test_errors(self):
        self.assertParseError(read_charges, "4 1\n", 1, 3)
        self.assertParseError(read_charges, "1 2\n", 1, 3)
        self.assertParseError(read_charges, "1 1\n1 0\n", 2, 3)
        self.assertParseError(read_charges, "1\n", 1, 3)


class ReportFormatTestCase(unittest.TestCase):
    def test_write(self):
        row = ExperimentRow(
            n=10,
            k=2,
            r=2,
            m=9,
            max_degree=3,
            min_sep=2,
            theory_bound=3.727922,
            ratio=2 / 9,
            seed=4,
        )
        text = write(write_report, ExperimentReport((row,)))
        self.assertEqual(
            text,
            "n,k,r,m,max_degree,min_sep,theory_bound,ratio,seed\n"
            "10,2,2,9,3,2,3.727922,0.222222,4\n",
        )
        self.assertEqual(
            write(write_report, ExperimentReport()),
            "n,k,r,m,max_degree,min_sep,theory_bound,ratio,seed\n",
        )
