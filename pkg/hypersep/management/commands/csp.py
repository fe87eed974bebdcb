from hypersep.csp import COUNT, DECIDE, MAX, solve
from hypersep.formats import read_csp
from hypersep.management.commands._base import (
    EXIT_SAT,
    EXIT_UNSAT,
    HypersepCommand,
    format_assignment,
)

MODES = {"solve": DECIDE, "count": COUNT, "max": MAX}


class Command(HypersepCommand):
    help = "Decide, count or maximize a constraint satisfaction problem (.csp)."

    def add_arguments(self, parser):
        parser.add_argument("mode", choices=sorted(MODES))
        super().add_arguments(parser)
        self.add_separator_arguments(parser)
        parser.add_argument(
            "--recursive",
            action="store_true",
            help="Solve large components by separator branching as well.",
        )
        parser.add_argument(
            "--witness", action="store_true", help="Print a witness assignment."
        )
        parser.add_argument(
            "--preprocess",
            action="store_true",
            help="Also branch on variables of above-average frequency.",
        )
        parser.add_argument("--leaf-budget", type=int)
        parser.add_argument("--budget", type=int, help="Brute-force assignment cap.")

    def handle(self, *args, **options):
        csp = self.read(read_csp, options["input"])
        mode = MODES[options["mode"]]
        answer = solve(
            csp,
            mode,
            recursive=options["recursive"],
            separator=options["method"],
            seed=options["seed"],
            leaf_budget=options["leaf_budget"],
            preprocess=options["preprocess"],
            jobs=options["jobs"],
            budget=options["budget"],
            max_trials=options["max_trials"],
        )
        if mode == DECIDE:
            self.answer("SAT" if answer.satisfiable else "UNSAT")
            self.exit_status = EXIT_SAT if answer.satisfiable else EXIT_UNSAT
        elif mode == COUNT:
            self.answer(answer.count)
        else:
            self.answer(answer.max_satisfied)
        if options["witness"] and answer.witness is not None:
            self.stdout.write(f"WITNESS: {format_assignment(answer.witness)}")
        self.stats(
            {
                "variables": len(csp.variables),
                "constraints": len(csp.constraints),
                "branch_variables": len(answer.branch_variables),
                "branches": answer.branches,
                "separator": answer.separator.size,
                "method": answer.separator.method,
            }
        )
