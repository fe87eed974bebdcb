from django.core.management.base import CommandError

from hypersep.formats import read_hypergraph
from hypersep.hypergraph import max_degree, uniformize
from hypersep.management.commands._base import EXIT_NOT_FOUND, HypersepCommand
from hypersep.separator import exhaustive_separator, find_separator, separator_params


class Command(HypersepCommand):
    help = "Find a balanced separator of a hypergraph (.hg)."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        self.add_separator_arguments(parser)
        parser.add_argument(
            "--cap",
            type=int,
            help="Exhaustive search only: largest separator size to try.",
        )

    def handle(self, *args, **options):
        hypergraph = self.read(read_hypergraph, options["input"])
        if options["cap"] is not None:
            result = exhaustive_separator(hypergraph, options["cap"])
            if result is None:
                raise CommandError(
                    f"No balanced separator with at most {options['cap']} edges.",
                    returncode=EXIT_NOT_FOUND,
                )
        else:
            result = find_separator(
                hypergraph,
                options["method"],
                seed=options["seed"],
                max_trials=options["max_trials"],
                jobs=options["jobs"],
            )

        r = max(2, hypergraph.max_edge_size())
        k = max(1, max_degree(hypergraph))
        padded, _ = uniformize(hypergraph, r, k)
        params = separator_params(padded, r=r, k=k)

        self.answer(result.size)
        self.stdout.write("SEPARATOR: " + " ".join(map(str, result.edges)))
        self.stdout.write(
            "COMPONENTS: " + " ".join(map(str, result.component_edge_counts))
        )
        self.stats(
            {
                "m": hypergraph.m,
                "size": result.size,
                "bound": f"{params.size_bound(hypergraph.m):.6f}",
                "method": result.method,
                "trials": result.trials_used,
                "fallback": int(result.fallback),
            }
        )
        if options["output"] not in (None, "-"):
            with open(options["output"], "w", encoding="utf-8") as stream:
                stream.write(" ".join(map(str, result.edges)) + "\n")
