from django.core.management.base import CommandError

from hypersep.formats import read_charges, read_hypergraph, write_cnf, write_csp
from hypersep.management.commands._base import EXIT_PARSE_ERROR, HypersepCommand
from hypersep.tseitin import ChargeLabeling, TseitinInstance, tseitin_cnf, tseitin_csp


def add_charge_arguments(parser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--charges", help="Charge file with '<vertex> <bit>' lines.")
    group.add_argument(
        "--odd", action="store_true", help="Charge 1 on vertex 1, 0 elsewhere."
    )


def load_instance(command, options):
    hypergraph = command.read(read_hypergraph, options["input"])
    if options["odd"]:
        charges = ChargeLabeling.odd(hypergraph.n)
    elif options["charges"]:
        charges = command.read(read_charges, options["charges"], hypergraph.n)
    else:
        raise CommandError(
            "Give either --charges or --odd.", returncode=EXIT_PARSE_ERROR
        )
    return TseitinInstance(hypergraph, charges)


class Command(HypersepCommand):
    help = "Generate the Tseitin formula of a hypergraph as CNF and/or CSP."

    def add_arguments(self, parser):
        parser.add_argument("action", choices=["gen"])
        super().add_arguments(parser)
        add_charge_arguments(parser)
        parser.add_argument("--csp-output", help="Also write the .csp form here.")

    def handle(self, *args, **options):
        instance = load_instance(self, options)
        if options["csp_output"]:
            self.write(write_csp, tseitin_csp(instance), options["csp_output"])
        cnf = tseitin_cnf(instance)
        self.write(write_cnf, cnf, options["output"], label="vertex")
        if options["output"] not in (None, "-"):
            self.stats(
                {
                    "vertices": instance.hypergraph.n,
                    "edges": instance.hypergraph.m,
                    "clauses": len(cnf.clauses),
                    "parity": instance.charges.parity,
                }
            )
