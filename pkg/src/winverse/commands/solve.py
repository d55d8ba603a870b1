from winverse.commands.common import add_problem_args, emit, load_problem, make_parser, resolve_config
from winverse.core.solve import EQUATIONS, solve
from winverse.io.matrix_file import read_matrix, read_vector
from winverse.utils.errors import DispatchError


def main(argv=None):
    parser = make_parser("solve", "General solution of a linear equation built on the W-weighted m-weak core inverse")
    parser.add_argument("equation", choices=EQUATIONS, help="Equation to solve")
    add_problem_args(parser, weight_required=True)
    parser.add_argument("--b", required=True, help="Right-hand side: vector b, or matrix B for left-power")
    parser.add_argument("--y", default=None, help="Free parameter: vector y, or matrix Y for left-power")
    args = parser.parse_args(argv)
    config = resolve_config(args)
    if args.m is None:
        raise DispatchError("solve needs --m.")

    P = load_problem(args, config, args.m)
    if args.equation == 'left-power':
        rhs = read_matrix(args.b)
        parameter = read_matrix(args.y) if args.y else None
    else:
        rhs = read_vector(args.b)
        parameter = read_vector(args.y) if args.y else None
    result = solve(args.equation, P, rhs, parameter)

    sections = {'particular': result.particular, 'residual': result.residual,
                'unique in R((AW)^k)': result.in_range}
    if parameter is not None:
        sections['solution'] = result.solution
    if args.equation == 'left-power':
        sections['XW(AW)^(k+1)'] = result.solution @ P.W @ P.aw_power(P.k + 1)
    emit(sections, config)
    return 0


if __name__ == '__main__':
    raise SystemExit(main())
