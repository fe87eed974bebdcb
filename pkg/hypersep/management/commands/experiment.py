from hypersep.experiments import sweep_cells, tightness_experiment
from hypersep.formats import write_report
from hypersep.management.commands._base import HypersepCommand


class Command(HypersepCommand):
    help = (
        "Measure minimum balanced separators of random uniform hypergraphs "
        "and write a CSV report."
    )

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--n", type=int, nargs="*", default=[], dest="ns")
        parser.add_argument("--k", type=int, nargs="*", default=[], dest="ks")
        parser.add_argument("--r", type=int, nargs="*", default=[2], dest="rs")
        parser.add_argument("--instances", type=int, default=20)
        parser.add_argument("--regularity-samples", type=int, default=200)

    def handle(self, *args, **options):
        report = tightness_experiment(
            sweep_cells(options["ns"], options["ks"], options["rs"]),
            options["instances"],
            seed=options["seed"],
            jobs=options["jobs"],
            regularity_samples=options["regularity_samples"],
        )
        self.write(write_report, report, options["output"])
        if options["output"] in (None, "-"):
            return
        self.answer(len(report.rows))
        for cell in report.cells:
            self.stats(
                {
                    "n": cell.n,
                    "k": cell.k,
                    "r": cell.r,
                    "instances": cell.instances,
                    "mean_m": f"{cell.mean_m:.3f}",
                    "mean_ratio": f"{cell.mean_ratio:.6f}",
                    "min_ratio": f"{cell.min_ratio:.6f}",
                    "regularity": f"{cell.regularity:.3f}",
                }
            )
