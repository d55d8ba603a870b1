from winverse.commands.common import add_problem_args, emit, make_parser, resolve_config
from winverse.core.decomp import core_ep_decompose, weighted_pair_decompose
from winverse.core.matcore import ctranspose, identity, max_norm
from winverse.io.matrix_file import read_matrix


def square_sections(A, tol):
    f = core_ep_decompose(A, tol)
    return {
        't': f.t,
        'index': f.k,
        'U': f.U,
        'T': f.T,
        'S': f.S,
        'N': f.N,
        'residuals': {
            'A - U[[T,S],[0,N]]U*': max_norm(f.reconstruct() - A),
            'U*U - I': max_norm(ctranspose(f.U) @ f.U - identity(f.n)),
        },
    }


def pair_sections(A, W, tol):
    f = weighted_pair_decompose(A, W, tol)
    return {
        't': f.t,
        'index(AW)': f.index_aw,
        'index(WA)': f.index_wa,
        'U': f.U, 'V': f.V,
        'A1': f.A1, 'A2': f.A2, 'A3': f.A3,
        'W1': f.W1, 'W2': f.W2, 'W3': f.W3,
        'residuals': {
            'A - U[[A1,A2],[0,A3]]V*': max_norm(f.reconstruct_A() - A),
            'W - V[[W1,W2],[0,W3]]U*': max_norm(f.reconstruct_W() - W),
        },
    }


def main(argv=None):
    parser = make_parser("decompose", "Core-EP decomposition of A, or the pair decomposition of (A, W)")
    add_problem_args(parser, with_m=False)
    args = parser.parse_args(argv)
    config = resolve_config(args)

    A = read_matrix(args.a)
    if args.w is None:
        sections = square_sections(A, config.tol)
    else:
        sections = pair_sections(A, read_matrix(args.w), config.tol)
    emit(sections, config)
    return 0


if __name__ == '__main__':
    raise SystemExit(main())
