from hypersep.csp import cnf_encode
from hypersep.formats import read_csp, write_cnf, write_dtree, write_trace
from hypersep.management.commands._base import HypersepCommand
from hypersep.management.commands.tseitin import add_charge_arguments, load_instance
from hypersep.refutation import refute_csp2, refute_tseitin
from hypersep.tseitin import tseitin_cnf


class Command(HypersepCommand):
    help = (
        "Refute an unsatisfiable Tseitin formula (.hg plus charges) or Boolean "
        "CSP (.csp), writing the decision tree and resolution proof."
    )

    def add_arguments(self, parser):
        parser.add_argument("kind", choices=["tseitin", "csp2"])
        super().add_arguments(parser)
        self.add_separator_arguments(parser)
        add_charge_arguments(parser)
        parser.add_argument("--dtree", help="Write the decision tree (.dt) here.")
        parser.add_argument("--proof", help="Write the resolution trace (.res) here.")
        parser.add_argument("--cnf", help="Write the refuted CNF here.")
        parser.add_argument(
            "--base-case-edges",
            type=float,
            help="Tseitin only: query edges in order below this many edges.",
        )

    def handle(self, *args, **options):
        if options["kind"] == "tseitin":
            instance = load_instance(self, options)
            refutation = refute_tseitin(
                instance.hypergraph,
                instance.charges,
                base_case_edges=options["base_case_edges"],
            )
            cnf, label = tseitin_cnf(instance), "vertex"
        else:
            csp = self.read(read_csp, options["input"])
            refutation = refute_csp2(
                csp,
                options["method"],
                seed=options["seed"],
                max_trials=options["max_trials"],
                jobs=options["jobs"],
            )
            cnf, label = cnf_encode(csp), "constraint"

        if options["cnf"]:
            self.write(write_cnf, cnf, options["cnf"], label=label)
        if options["dtree"]:
            self.write(write_dtree, refutation.tree, options["dtree"])
        if options["proof"]:
            self.write(write_trace, refutation.trace, options["proof"])
        self.answer("UNSAT")
        self.stats(refutation.stats.as_record())
