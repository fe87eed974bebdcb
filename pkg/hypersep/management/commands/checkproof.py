from django.core.management.base import CommandError

from hypersep.formats import read_cnf, read_csp, read_dtree, read_trace
from hypersep.management.commands._base import (
    EXIT_CHECK_FAILED,
    EXIT_PARSE_ERROR,
    HypersepCommand,
)
from hypersep.refutation import check_dtree, check_resolution


class Command(HypersepCommand):
    help = "Check a decision tree or resolution trace against its formula."

    def add_arguments(self, parser):
        parser.add_argument("kind", choices=["dtree", "res"])
        super().add_arguments(parser)
        source = parser.add_mutually_exclusive_group()
        source.add_argument("--cnf", help="DIMACS CNF the artifact refutes.")
        source.add_argument("--csp", help="CSP whose constraints a .dt names.")

    def handle(self, *args, **options):
        if options["csp"]:
            if options["kind"] == "res":
                raise CommandError(
                    "Resolution traces are checked against --cnf.",
                    returncode=EXIT_PARSE_ERROR,
                )
            source = self.read(read_csp, options["csp"])
        elif options["cnf"]:
            source = self.read(read_cnf, options["cnf"])
        else:
            raise CommandError(
                "One of --cnf or --csp is required.", returncode=EXIT_PARSE_ERROR
            )

        if options["kind"] == "dtree":
            result = check_dtree(source, self.read(read_dtree, options["input"]))
        else:
            result = check_resolution(source, self.read(read_trace, options["input"]))

        if result:
            self.answer("VALID")
            return
        self.answer("INVALID")
        self.stdout.write(f"VIOLATION: {result.location} {result.message}")
        raise CommandError(result.message, returncode=EXIT_CHECK_FAILED)
