import logging
import sys

from django.core.exceptions import ImproperlyConfigured
from django.core.management.base import BaseCommand, CommandError

from hypersep.exceptions import BudgetExceeded, ParseError, SatisfiableInstance

EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_NOT_FOUND = 3
EXIT_BUDGET = 4
EXIT_SATISFIABLE = 5
EXIT_SAT = 10
EXIT_UNSAT = 20

VERBOSITY_LEVELS = {
    0: logging.ERROR,
    1: logging.WARNING,
    2: logging.INFO,
    3: logging.DEBUG,
}


def format_assignment(assignment):
    return " ".join(f"{x}={value}" for x, value in sorted(assignment.items()))


def format_record(record):
    return " ".join(f"{key}={value}" for key, value in record.items())


class HypersepCommand(BaseCommand):
    """
    Shared flags, output records and exit statuses.

    Subclasses set ``self.exit_status`` for answers that carry a status
    (SAT/UNSAT); failures raise :class:`CommandError` with the status as
    ``returncode``.
    """

    exit_status = 0

    def add_arguments(self, parser):
        parser.add_argument("--input", help="Input file, '-' for stdin.")
        parser.add_argument("--output", help="Output file, '-' for stdout.")
        parser.add_argument(
            "--seed", type=int, help="Random seed (HYPERSEP_CONFIG['SEED'])."
        )
        parser.add_argument(
            "--jobs", type=int, help="Worker threads (HYPERSEP_CONFIG['JOBS'])."
        )

    def add_separator_arguments(self, parser):
        parser.add_argument(
            "--method",
            help="Separator method: auto, random, exhaustive, vertex-cut or any "
            "key of HYPERSEP_CONFIG['SEPARATOR_METHODS'].",
        )
        parser.add_argument("--max-trials", type=int, help="Sampling trials.")

    def execute(self, *args, **options):
        self.exit_status = 0
        logging.getLogger("hypersep").setLevel(
            VERBOSITY_LEVELS.get(options.get("verbosity", 1), logging.DEBUG)
        )
        try:
            return super().execute(*args, **options)
        except ParseError as e:
            raise CommandError(f"Parse error: {e}", returncode=EXIT_PARSE_ERROR)
        except (ValueError, OSError, ImproperlyConfigured) as e:
            raise CommandError(f"Invalid input: {e}", returncode=EXIT_PARSE_ERROR)
        except BudgetExceeded as e:
            raise CommandError(f"Budget exceeded: {e}", returncode=EXIT_BUDGET)
        except SatisfiableInstance as e:
            if e.witness is not None:
                self.stdout.write(f"WITNESS: {format_assignment(e.witness)}")
            raise CommandError(f"Satisfiable: {e}", returncode=EXIT_SATISFIABLE)

    def run_from_argv(self, argv):
        super().run_from_argv(argv)
        if self.exit_status:
            sys.exit(self.exit_status)

    def read(self, reader, path, *args):
        if path is None:
            raise CommandError("--input is required.", returncode=EXIT_PARSE_ERROR)
        if path == "-":
            return reader(sys.stdin, *args)
        with open(path, encoding="utf-8") as stream:
            return reader(stream, *args)

    def write(self, writer, value, path, **kwargs):
        if path is None or path == "-":
            writer(value, self.stdout, **kwargs)
            return
        with open(path, "w", encoding="utf-8", newline="\n") as stream:
            writer(value, stream, **kwargs)

    def answer(self, text):
        self.stdout.write(f"ANSWER: {text}")

    def stats(self, record):
        self.stdout.write(f"STATS: {format_record(record)}")
