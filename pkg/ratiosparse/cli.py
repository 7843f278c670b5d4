"""Console script for ratiosparse."""
import argparse
import csv
import logging
import sys

import numpy as np

from . import __version__
from .bench import (ExperimentConfig, SolverKind, run_experiment,
                    run_ratio_vs_F, toy_landscape, write_summary,
                    write_trials)
from .exceptions import (ConfigError, ParameterError, RatioSparseError,
                         UnsupportedSizeError)
from .imaging import (GradSolverConfig, measure, radial_mask, shepp_logan,
                      solve_grad, solve_tv)
from .instances import (Instance, MatrixKind, SensingMatrix, gen_dct,
                        gen_gaussian, gen_sparse_signal)
from .io import (read_array, read_config, write_array, write_csv_array,
                 write_iteration_log, write_pbm, write_pgm)
from .math import relative_error
from .solvers import Init, SolverConfig, solve
from .theory import (check_nsp, check_snsp, coherence, kernel_ratio_bound,
                     l0_oracle, verify_local_min)

logger = logging.getLogger(__name__)

EXIT_CONFIG_ERROR = 2
EXIT_UNSUPPORTED_SIZE = 3

SIGNAL_LOG_COLUMNS = {"objective": "objective",
                      "feasibility": "feasibility",
                      "res_y": "res_y",
                      "res_z": "res_z"}
IMAGE_LOG_COLUMNS = {"objective": "objective",
                     "data_residual": "feasibility",
                     "rel_change": "rel_change"}


def int_list(value):
    try:
        return [int(v) for v in value.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a list of integers, "
                                         f"got {value!r}") from None


def float_list(value):
    try:
        return [float(v) for v in value.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a list of numbers, "
                                         f"got {value!r}") from None


def interval(value):
    bounds = float_list(value)
    if len(bounds) != 2:
        raise argparse.ArgumentTypeError(f"expected `c,d`, got {value!r}")
    return tuple(bounds)


def str2bool(value):
    value = value.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {value!r}")


def _add_solver_arguments(parser):
    parser.add_argument("--rho1", type=float, default=100.)
    parser.add_argument("--rho2", type=float, default=100.)
    parser.add_argument("--eps", type=float, default=1e-8,
                        help="tolerance on the relative change of x")
    parser.add_argument("--max-iter", type=int,
                        help="iteration cap (default: 10 n)")


def build_parser():

    parser = argparse.ArgumentParser(
        prog="ratiosparse",
        description="Sparse recovery by L1/L2 minimization.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    parser.add_argument("--config",
                        help="flat key=value file of defaults for the "
                             "subcommand; flags take precedence")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")

    subparsers = parser.add_subparsers(dest="command", required=True)
    commands = {}

    # gen
    p = subparsers.add_parser("gen", help="generate a random instance")
    p.add_argument("--kind", choices=["dct", "gaussian"], default="dct")
    p.add_argument("-m", type=int, default=64)
    p.add_argument("-n", type=int, default=1024)
    p.add_argument("--param", type=float, default=5.,
                   help="F for dct, r for gaussian")
    p.add_argument("-s", "--sparsity", type=int, default=2)
    p.add_argument("--min-sep", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="instance",
                   help="prefix of the output files")
    p.set_defaults(func=cmd_gen)
    commands["gen"] = p

    # solve
    p = subparsers.add_parser("solve", help="L1/L2 minimization")
    p.add_argument("--matrix", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--truth", help="ground truth, to report the error")
    _add_solver_arguments(p)
    p.add_argument("--box", type=interval, help="interval `c,d`")
    p.add_argument("--init", choices=[init.value for init in Init],
                   default=Init.L1_BASIS_PURSUIT.value)
    p.add_argument("--x0", help="starting point for `--init explicit`")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="solution")
    p.set_defaults(func=cmd_solve)
    commands["solve"] = p

    # mri
    p = subparsers.add_parser("mri", help="phantom reconstruction from "
                                          "radial Fourier samples")
    p.add_argument("--size", type=int, default=128)
    p.add_argument("--lines", type=int, default=8)
    p.add_argument("--solver", choices=["ratio", "tv"], default="ratio")
    p.add_argument("--lambd", type=float, default=1e3)
    p.add_argument("--rho1", type=float, default=1.)
    p.add_argument("--rho2", type=float, default=1.)
    p.add_argument("--rho3", type=float, default=1.)
    p.add_argument("--eps", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=5000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mask-out", help="write the mask as PBM")
    p.add_argument("--out", default="reconstruction")
    p.set_defaults(func=cmd_mri)
    commands["mri"] = p

    # theory
    p = subparsers.add_parser("theory", help="recovery condition checks")
    p.add_argument("verb", choices=["coherence", "nsp", "snsp",
                                    "ratio-bound", "l0", "localmin"])
    p.add_argument("--matrix", required=True)
    p.add_argument("-s", "--sparsity", type=int, default=1)
    p.add_argument("--rhs", help="right-hand side, for `l0`")
    p.add_argument("--x", help="feasible point, for `localmin`")
    p.add_argument("--starts", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV output (default: stdout)")
    p.set_defaults(func=cmd_theory)
    commands["theory"] = p

    # bench
    p = subparsers.add_parser("bench", help="success-rate sweep")
    p.add_argument("--kind", choices=["dct", "gaussian"], default="dct")
    p.add_argument("--param", type=float, default=5.,
                   help="F for dct, r for gaussian")
    p.add_argument("-m", type=int, default=64)
    p.add_argument("-n", type=int, default=1024)
    p.add_argument("--sparsity", type=int_list,
                   default=list(range(2, 31, 2)))
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--solver", choices=[kind.value for kind in SolverKind],
                   default=SolverKind.L1L2_BOX.value)
    p.add_argument("--box", type=interval, default=(-1., 1.))
    p.add_argument("--min-sep", type=int)
    _add_solver_arguments(p)
    p.add_argument("--workers", type=int,
                   help="worker processes (default: all CPUs)")
    p.add_argument("--timing", action="store_true",
                   help="record wall-clock seconds per trial")
    p.add_argument("--out-trials", default="trials.csv")
    p.add_argument("--out-summary", default="summary.csv")
    p.set_defaults(func=cmd_bench)
    commands["bench"] = p

    # toy
    p = subparsers.add_parser("toy", help="toy objective landscape")
    p.add_argument("--t-min", type=float, default=-5.)
    p.add_argument("--t-max", type=float, default=15.)
    p.add_argument("--steps", type=int, default=2001)
    p.add_argument("--out", default="toy.csv")
    p.set_defaults(func=cmd_toy)
    commands["toy"] = p

    # ratio-vs-f
    p = subparsers.add_parser("ratio-vs-f",
                              help="kernel ratio bound against F")
    p.add_argument("--F", type=float_list,
                   default=[float(F) for F in range(1, 21)])
    p.add_argument("--realizations", type=int, default=50)
    p.add_argument("-m", type=int, default=64)
    p.add_argument("-n", type=int, default=1024)
    p.add_argument("--starts", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int)
    p.add_argument("--out", default="ratio_vs_F.csv")
    p.set_defaults(func=cmd_ratio_vs_F)
    commands["ratio-vs-f"] = p

    return parser, commands


def apply_config(subparser, path):
    """Install the values of a config file as the subcommand's defaults."""
    values = read_config(path)
    actions = {action.dest: action for action in subparser._actions}
    defaults = {}
    for key, value in values.items():
        if key not in actions or key in ("help", "func"):
            raise ConfigError(f"{path}: unknown option {key!r}")
        if isinstance(actions[key], argparse._StoreTrueAction):
            value = str2bool(value)
        defaults[key] = value
    # string defaults are converted by the argument's `type`
    subparser.set_defaults(**defaults)


def _solver_config(args, **kwargs):
    return SolverConfig(rho1=args.rho1, rho2=args.rho2, eps=args.eps,
                        max_iter=args.max_iter, **kwargs)


def cmd_gen(args):

    if args.kind == "dct":
        matrix = gen_dct(args.m, args.n, args.param, seed=args.seed)
    else:
        matrix = gen_gaussian(args.m, args.n, args.param, seed=args.seed)
    truth = gen_sparse_signal(args.n, args.sparsity, min_sep=args.min_sep,
                              seed=args.seed + 10**6)
    instance = Instance.from_truth(matrix, truth)

    for suffix, a in (("A", instance.A), ("x", truth.values),
                      ("b", instance.b)):
        write_array(f"{args.out}_{suffix}.bin", a)
        write_csv_array(f"{args.out}_{suffix}.csv", a)

    logger.info(f"[Instance written: {args.out}_{{A,x,b}}] "
                f"shape: {matrix.shape}, support: {truth.support.tolist()}")


def cmd_solve(args):

    matrix = SensingMatrix(read_array(args.matrix))
    instance = Instance(matrix=matrix, rhs=read_array(args.rhs))

    init = Init(args.init)
    x0 = read_array(args.x0) if args.x0 is not None else None
    config = _solver_config(args, box=args.box, init=init, x0=x0,
                            seed=args.seed)

    report = solve(instance, config)

    write_array(f"{args.out}.bin", report.x)
    write_csv_array(f"{args.out}.csv", report.x)
    write_iteration_log(f"{args.out}_log.csv", report, SIGNAL_LOG_COLUMNS)

    if args.truth is not None:
        error = relative_error(report.x, read_array(args.truth))
        logger.info(f"[Relative error: {error:.3E}]")


def cmd_mri(args):

    u = shepp_logan(args.size)
    mask = radial_mask(args.size, args.size, args.lines)
    f = measure(u, mask)
    config = GradSolverConfig(lambd=args.lambd, rho1=args.rho1,
                              rho2=args.rho2, rho3=args.rho3, eps=args.eps,
                              max_iter=args.max_iter, seed=args.seed)

    solver_fn = solve_grad if args.solver == "ratio" else solve_tv
    report = solver_fn(f, mask, config)

    write_pgm(f"{args.out}.pgm", report.x)
    write_array(f"{args.out}.bin", report.x)
    write_iteration_log(f"{args.out}_log.csv", report, IMAGE_LOG_COLUMNS)
    if args.mask_out is not None:
        write_pbm(args.mask_out, mask.keep)

    logger.info(f"[Relative error: {relative_error(report.x, u):.3E}] "
                f"sampled: {100. * mask.fraction:.2f}%")


def _verdict_row(check, verdict):
    support = "" if verdict.support is None \
        else " ".join(map(str, verdict.support))
    witness = "" if verdict.witness is None \
        else " ".join(f"{v:.17g}" for v in verdict.witness)
    return [check, int(verdict.holds), f"{verdict.margin:.17g}", support,
            witness]


def cmd_theory(args):

    A = read_array(args.matrix)
    header = ["check", "holds", "margin", "support", "witness_vector"]

    if args.verb == "coherence":
        header, row = ["check", "value"], ["coherence", f"{coherence(A):.17g}"]
    elif args.verb == "nsp":
        row = _verdict_row("nsp", check_nsp(A, args.sparsity))
    elif args.verb == "snsp":
        row = _verdict_row("snsp", check_snsp(A, args.sparsity))
    elif args.verb == "ratio-bound":
        bound = kernel_ratio_bound(A, num_starts=args.starts, seed=args.seed)
        header, row = ["check", "value"], ["ratio-bound", f"{bound:.17g}"]
    elif args.verb == "l0":
        if args.rhs is None:
            raise ParameterError("`l0` needs `--rhs`!")
        instance = Instance(matrix=SensingMatrix(A), rhs=read_array(args.rhs))
        s, x = l0_oracle(instance)
        header = ["check", "sparsity", "support", "solution"]
        row = ["l0", s, " ".join(map(str, np.flatnonzero(x))),
               " ".join(f"{v:.17g}" for v in x)]
    else:
        if args.x is None:
            raise ParameterError("`localmin` needs `--x`!")
        verdict = verify_local_min(A, read_array(args.x), seed=args.seed)
        row = _verdict_row("localmin", verdict)

    if args.out is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerows([header, row])
    else:
        with open(args.out, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerows([header, row])


def cmd_bench(args):

    kind = MatrixKind.OVERSAMPLED_DCT if args.kind == "dct" \
        else MatrixKind.CORRELATED_GAUSSIAN
    config = ExperimentConfig(matrix_kind=kind, matrix_param=args.param,
                              m=args.m, n=args.n,
                              sparsity_grid=tuple(args.sparsity),
                              trials=args.trials, base_seed=args.seed,
                              solver=SolverKind(args.solver), box=args.box,
                              min_sep=args.min_sep,
                              solver_params=_solver_config(args),
                              record_timing=args.timing)

    record = run_experiment(config, workers=args.workers,
                            progress=not args.quiet)
    write_trials(record, args.out_trials)
    write_summary(record, args.out_summary)


def cmd_toy(args):

    frame, argmin = toy_landscape(args.t_min, args.t_max, args.steps)
    frame.to_csv(args.out, index=False, float_format="%.17g")
    logger.info(f"[Toy landscape: argmin L1 t={argmin['l1']:g}, "
                f"argmin L1/L2 t={argmin['l1_over_l2']:g}]")


def cmd_ratio_vs_F(args):

    frame = run_ratio_vs_F(args.F, realizations=args.realizations, m=args.m,
                           n=args.n, base_seed=args.seed,
                           num_starts=args.starts, workers=args.workers,
                           progress=not args.quiet)
    frame.to_csv(args.out, index=False, float_format="%.17g")


def main(argv=None):
    """Console script for ratiosparse."""
    parser, commands = build_parser()
    args = parser.parse_args(argv)

    level = logging.DEBUG if args.verbose else \
        logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level,
                        format="%(asctime)s %(name)s %(levelname)s: "
                               "%(message)s")

    try:
        if args.config is not None:
            apply_config(commands[args.command], args.config)
            args = parser.parse_args(argv)
        args.func(args)
    except (ConfigError, ParameterError) as e:
        logger.error(e)
        return EXIT_CONFIG_ERROR
    except UnsupportedSizeError as e:
        logger.error(e)
        return EXIT_UNSUPPORTED_SIZE
    except RatioSparseError as e:
        logger.error(e)
        return 1

    return 0


if __name__ == "__main__":
    sys.exit(main())  # pragma: no cover
