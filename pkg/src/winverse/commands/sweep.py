import sys
from dataclasses import asdict

import numpy as np
import pandas as pd

from winverse.commands.common import make_parser, resolve_config
from winverse.core import verify, wgeninv
from winverse.core.matcore import Tolerance, max_norm
from winverse.utils.parallel import parallel_executor
from winverse.utils.random_problems import PROBLEM_KINDS, ProblemSpec, random_corpus, random_problem

AGREEMENT_TOL = 1e-8


def check_problem(job):
    """
    Representation spread, certificates and identities of one random problem.

    Args:
        job (tuple): ``(spec fields as dict, rank_rtol, eq_atol)``.

    Returns:
        dict: One result row.
    """
    fields, rank_rtol, eq_atol = job
    spec = ProblemSpec(**fields)
    tol = Tolerance(rank_rtol=rank_rtol, eq_atol=eq_atol)
    P = random_problem(spec, tol)
    X = wgeninv.w_m_weak_core(P)

    reports = verify.run_all(P, X)
    rng = np.random.default_rng(spec.seed + 1)
    E = rng.standard_normal(X.shape) + 1j * rng.standard_normal(X.shape)
    perturbed = X + 1e-3 * max(1.0, max_norm(X)) * E / max_norm(E)
    rejected = not all(r.satisfied for r in verify.run_all(P, perturbed).values())

    spread = verify.representation_spread(P)
    identities = max(verify.theorem_identities(P).values())
    return {
        'seed': spec.seed, 'kind': spec.kind, 'p': P.p, 'n': P.n, 'm': P.m, 'k': P.k,
        'index_aw': P.index_aw, 'index_wa': P.index_wa,
        'deficient_weight': spec.deficient_weight,
        'representation_spread': spread,
        'identity_residual': identities,
        'certified': all(r.satisfied for r in reports.values()),
        'perturbation_rejected': rejected,
        'passed': spread <= AGREEMENT_TOL and identities <= AGREEMENT_TOL
                  and all(r.satisfied for r in reports.values()),
    }


def main(argv=None):
    parser = make_parser("sweep", "Cross-check representations and certificates on random problems")
    parser.add_argument("--n", type=int, default=100, help="Number of random problems")
    parser.add_argument("--seed", type=int, default=0, help="Seed of the corpus")
    parser.add_argument("--max-dim", type=int, default=6, help="Largest p and n")
    parser.add_argument("--kind", choices=PROBLEM_KINDS + ("mixed",), default="mixed",
                        help="How problems are generated")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes")
    parser.add_argument("--out", default=None, help="CSV file for the per-problem results")
    parser.add_argument("--no-bar", action="store_true", help="Hide the progress bar")
    args = parser.parse_args(argv)
    config = resolve_config(args)

    specs = random_corpus(args.n, args.seed, args.max_dim, args.kind)
    jobs = [(asdict(spec), config.rank_rtol, config.eq_atol) for spec in specs]
    rows, failed = parallel_executor(check_problem, jobs, max_workers=config.workers,
                                     bar=not args.no_bar, desc="sweep")
    frame = pd.DataFrame([row for row in rows if row is not None])
    if args.out:
        frame.to_csv(args.out, index=False)

    passed = int(frame['passed'].sum()) if len(frame) else 0
    rejected = float(frame['perturbation_rejected'].mean()) if len(frame) else 0.0
    print(f"{passed}/{len(specs)} problems passed; {len(failed)} raised; "
          f"perturbations rejected in {100 * rejected:.1f}% of cases")
    if len(frame):
        print(f"max representation spread {frame['representation_spread'].max():.3e}, "
              f"max identity residual {frame['identity_residual'].max():.3e}")
    if failed:
        print(f"Failed seeds: {[specs[i].seed for i in failed]}", file=sys.stderr)
    return 0 if passed == len(specs) else 1


if __name__ == '__main__':
    raise SystemExit(main())
