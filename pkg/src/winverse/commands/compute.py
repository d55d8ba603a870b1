from winverse.commands.common import add_problem_args, emit, make_parser, resolve_config
from winverse.core.inverses import INVERSE_KINDS, M_KINDS, WEIGHTED, inverse_report, validate_kind
from winverse.io.matrix_file import read_matrix
from winverse.utils.errors import DispatchError


def main(argv=None):
    parser = make_parser("compute", "Compute a generalized inverse")
    parser.add_argument("kind", choices=INVERSE_KINDS, help="Inverse kind")
    add_problem_args(parser)
    parser.add_argument("--verbose", action="store_true", help="Also print the defining-equation residuals")
    args = parser.parse_args(argv)
    config = resolve_config(args)

    try:
        validate_kind(args.kind, args.w if args.kind in WEIGHTED else None, args.m)
    except ValueError as e:
        raise DispatchError(str(e))

    A = read_matrix(args.a)
    W = read_matrix(args.w) if args.kind in WEIGHTED else None
    m = args.m if args.kind in M_KINDS else None
    report = inverse_report(args.kind, A, W, m, config.tol)

    sections = {args.kind: report.inverse}
    if args.verbose:
        sections['residuals'] = report.residuals
    emit(sections, config)
    return 0


if __name__ == '__main__':
    raise SystemExit(main())
