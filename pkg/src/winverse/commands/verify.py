from winverse.commands.common import add_problem_args, emit, load_problem, make_parser, resolve_config
from winverse.core import verify
from winverse.io.matrix_file import read_matrix
from winverse.utils.errors import DispatchError

SYSTEM_CHOICES = verify.SYSTEMS + ('all', 'square')


def main(argv=None):
    parser = make_parser("verify", "Check a candidate X against a characterizing system")
    parser.add_argument("system", choices=SYSTEM_CHOICES,
                        help="thm31, thm32, thm33, thm34, outer, all, or square (W = I)")
    add_problem_args(parser)
    parser.add_argument("--x", required=True, help="Matrix file holding the candidate X")
    args = parser.parse_args(argv)
    config = resolve_config(args)
    if args.m is None:
        raise DispatchError("verify needs --m.")

    if args.system == 'square':
        reports = {'square': verify.check_square_corollary(read_matrix(args.a), args.m,
                                                           read_matrix(args.x), config.tol)}
    else:
        if args.w is None:
            raise DispatchError(f"System {args.system!r} needs --w.")
        P = load_problem(args, config, args.m)
        X = read_matrix(args.x)
        reports = verify.run_all(P, X) if args.system == 'all' else {args.system: verify.check(args.system, P, X)}

    sections = {}
    for system_id, report in reports.items():
        sections[f"{system_id} satisfied"] = report.satisfied
        sections[f"{system_id} residuals"] = dict(report.residuals)
    emit(sections, config)
    return 0 if all(report.satisfied for report in reports.values()) else 1


if __name__ == '__main__':
    raise SystemExit(main())
