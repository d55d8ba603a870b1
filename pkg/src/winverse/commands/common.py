import argparse

from winverse.core.wgeninv import WeightedProblem
from winverse.io.matrix_file import read_matrix
from winverse.io.report import CliConfig, render_report
from winverse.utils.errors import DispatchError


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser that raises DispatchError instead of exiting."""

    def error(self, message):
        raise DispatchError(f"{self.prog}: {message}")


def make_parser(prog, description):
    parser = ArgumentParser(prog=f"winverse {prog}", description=description)
    parser.add_argument("--config", default=None, help="YAML file overriding the packaged defaults")
    parser.add_argument("--tol-eq", type=float, default=None, help="Equality threshold eq_atol")
    parser.add_argument("--tol-rank", type=float, default=None, help="Relative rank cutoff rank_rtol")
    parser.add_argument("--format", dest="output_format", choices=("json", "table"), default=None,
                        help="Output format")
    parser.add_argument("--precision", type=int, default=None, help="Significant digits of table output")
    return parser


def add_problem_args(parser, weight_required=False, with_m=True):
    parser.add_argument("--a", required=True, help="Matrix file holding A")
    parser.add_argument("--w", required=weight_required, default=None, help="Matrix file holding the weight W")
    if with_m:
        parser.add_argument("--m", type=int, default=None, help="Positive integer m")


def resolve_config(args):
    """CliConfig from the parsed flags; invalid settings are usage errors."""
    try:
        return CliConfig.resolve(
            config_path=args.config, tol_eq=args.tol_eq, tol_rank=args.tol_rank,
            output_format=args.output_format, precision=args.precision,
            workers=getattr(args, 'workers', None),
        )
    except (ValueError, TypeError) as e:
        raise DispatchError(str(e))


def load_problem(args, config, m=None):
    """WeightedProblem from ``--a``, ``--w`` and ``m``."""
    A = read_matrix(args.a)
    W = read_matrix(args.w)
    return WeightedProblem(A, W, 1 if m is None else m, config.tol)


def emit(sections, config):
    print(render_report(sections, config.output_format, config.precision))
