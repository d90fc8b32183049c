"""Command-line interface: ``lp-extremal <command> [options]``.

Exit status is 0 on success, 2 on invalid input, 1 on internal failure or
a failed ``certify`` criterion.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from pathlib import Path

from . import __version__
from .certify import CRITERIA, run_all
from .chebyshev import (
    SimplexWeights,
    SolverConfig,
    ambient_radius,
    equidistant_core,
    relative_radius,
)
from .errors import ConvergenceWarning, InputError
from .extremal import (
    Infeasible,
    chain_conditions,
    classify_ratio,
    extract_simplex,
    heavy_indices,
    jung_constant,
    separated_subset,
)
from .gallery import indicator_family, rademacher_family, random_family
from .io import SCHEMA_VERSION, dumps, load_pointset, load_weights, pointset_document, report_to_csv
from .space import diameter
from .williams_wells import ww_sides

log = logging.getLogger("lp_extremal")


def _floats(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _solver_config(args) -> SolverConfig:
    cfg = SolverConfig()
    if getattr(args, "config", None):
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read solver config {args.config}: {exc}") from None
        cfg = SolverConfig.from_mapping(data)
    return cfg.updated(tolerance=args.tolerance, active_tol=args.active_tol,
                       max_iters=args.max_iters, step=args.step, seed=args.seed,
                       class_tol=getattr(args, "class_tol", None))


def _load(args):
    return load_pointset(args.file, p=args.p, measures=args.measures)


def _base(command, space=None, **fields):
    report = {"schema": SCHEMA_VERSION, "command": command}
    if space is not None:
        report.update(p=space.p, alpha=space.alpha)
    report.update(fields)
    return report


def _solution_fields(sol):
    return {
        "radius": sol.radius,
        "center": sol.center,
        "weights": None if sol.weights is None else sol.weights.values,
        "iterations": sol.iterations,
        "gap_estimate": sol.gap_estimate,
        "converged": sol.converged,
    }


def cmd_radius(args):
    space, A = _load(args)
    cfg = _solver_config(args)
    solve = ambient_radius if args.ambient else relative_radius
    sol = solve(space, A, cfg)
    return _base("radius", space, n=len(A), seed=cfg.seed, diameter=diameter(space, A),
                 kind="ambient" if args.ambient else "relative", **_solution_fields(sol))


def cmd_core(args):
    space, A = _load(args)
    cfg = _solver_config(args)
    full = relative_radius(space, A, cfg)
    res = equidistant_core(space, A, cfg)
    return _base("core", space, n=len(A), seed=cfg.seed, original_radius=full.radius,
                 core_indices=res.indices, rounds=res.rounds, flagged=res.flagged,
                 **_solution_fields(res.solution))


def cmd_ww_check(args):
    space, A = _load(args)
    w = SimplexWeights.coerce(load_weights(args.weights) if args.weights else None, len(A))
    lhs, rhs = ww_sides(space, A, w)
    gap = rhs - lhs
    return _base("ww-check", space, n=len(A), weights=w.values, lhs=lhs, rhs=rhs, gap=gap,
                 holds=bool(gap >= -1e-9 * max(1.0, rhs)))


def cmd_jung(args):
    if args.p is None:
        raise InputError("jung needs --p")
    return _base("jung", p=args.p, jung=jung_constant(args.p))


def cmd_classify(args):
    space, A = _load(args)
    cfg = _solver_config(args)
    d = diameter(space, A)
    if len(A) < 2 or d == 0:
        raise InputError("classify needs at least two distinct points")
    sol = relative_radius(space, A, cfg)
    ratio = sol.radius / d
    cls = classify_ratio(ratio, space.p, cfg.class_tol)
    js = jung_constant(space.p)
    return _base("classify", space, seed=cfg.seed, radius=sol.radius, diameter=d, ratio=ratio,
                 jung=js, margin=cls.margin, classification=cls.kind.value,
                 class_tol=cls.tol, gulevich_margin=js * d - sol.radius,
                 converged=sol.converged, gap_estimate=sol.gap_estimate)


def _heavy_count(space, A, cfg):
    """Heavy indices of the equidistant core after scaling to ``r(A) = 1``."""
    r = relative_radius(space, A, cfg).radius
    if r == 0:
        return 0
    X = A.coords / r
    core = equidistant_core(space, X, cfg)
    w = core.solution.weights
    return len(heavy_indices(space, core.core, w, min(core.solution.radius, 1.0)).S)


def cmd_simplex(args):
    space, A = _load(args)
    if args.m is None or args.epsilon is None:
        raise InputError("simplex needs --m and --epsilon")
    d = diameter(space, A)
    res = extract_simplex(space, A, args.m, args.epsilon)
    feasible = not isinstance(res, Infeasible)
    report = _base("simplex", space, diameter=d, m=args.m, epsilon=args.epsilon,
                   threshold=(d - args.epsilon) ** space.alpha, feasible=feasible,
                   witness_indices=res.indices if feasible else None,
                   min_edge=res.min_edge if feasible else None,
                   greedy=res.greedy if feasible else None)
    if args.n is not None:
        # Asymptotic sufficient conditions at truncation level --n; diagnostics only.
        heavy = _heavy_count(space, A, _solver_config(args))
        report["heavy_count"] = heavy
        report["conditions"] = chain_conditions(args.n, heavy, args.m, space.alpha,
                                                d, args.epsilon)
    return report


def cmd_separated(args):
    space, A = _load(args)
    if args.delta is None:
        raise InputError("separated needs --delta")
    idx = separated_subset(space, A, args.delta)
    return _base("separated", space, diameter=diameter(space, A), delta=args.delta,
                 witness_indices=idx, count=len(idx))


def cmd_gallery(args):
    fam = args.family
    if args.n is None:
        raise InputError("gallery needs --n")
    if fam == "random":
        space, A = random_family(args.seed or 0, args.n, args.cells,
                                 2.0 if args.p is None else args.p)
    elif args.p is None:
        raise InputError(f"gallery --family {fam} needs --p")
    elif fam == "indicator":
        space, A = indicator_family(args.n, args.p)
    else:
        space, A = rademacher_family(args.n, args.p, args.k)
    extra = {"family": fam, "n": args.n}
    if fam == "random":
        extra["seed"] = args.seed or 0
    return pointset_document(space, A, **extra)


def cmd_certify(args):
    ids = args.only or sorted(CRITERIA)
    bad = [i for i in ids if i not in CRITERIA]
    if bad:
        raise InputError(f"unknown criteria {bad}")
    seed = args.seed or 0
    results = run_all(seed=seed, ids=ids, threads=args.threads)
    for r in results:
        print(r.line(), file=sys.stderr)
        for c in r.checks:
            mark = "ok " if c.passed else "BAD"
            print(f"    {mark} {c.name}: {c.detail}", file=sys.stderr)
    report = _base("certify", seed=seed, passed=all(r.passed for r in results),
                   criteria=[r.as_dict() for r in results])
    args._exit = 0 if report["passed"] else 1
    return report


COMMANDS = {
    "radius": (cmd_radius, "relative (or --ambient) Chebyshev radius and center"),
    "core": (cmd_core, "equidistant core subset"),
    "ww-check": (cmd_ww_check, "evaluate both sides of the Williams-Wells inequality"),
    "jung": (cmd_jung, "Jung constant of L_p"),
    "classify": (cmd_classify, "extremality ratio and classification"),
    "simplex": (cmd_simplex, "extract m+1 points with edges >= d - epsilon"),
    "separated": (cmd_separated, "greedy maximal delta-separated subset"),
    "gallery": (cmd_gallery, "generate a structured or random point set"),
    "certify": (cmd_certify, "run the acceptance criteria"),
}

NEEDS_FILE = {"radius", "core", "ww-check", "classify", "simplex", "separated"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=float, help="norm exponent (overrides the file)")
    common.add_argument("--measures", type=_floats, help="comma-separated cell measures")
    common.add_argument("--n", type=int)
    common.add_argument("--k", type=int, help="dyadic resolution (rademacher family)")
    common.add_argument("--m", type=int)
    common.add_argument("--epsilon", type=float)
    common.add_argument("--delta", type=float)
    common.add_argument("--tolerance", type=float)
    common.add_argument("--active-tol", type=float)
    common.add_argument("--class-tol", type=float)
    common.add_argument("--max-iters", type=int)
    common.add_argument("--step", type=float)
    common.add_argument("--seed", type=int)
    common.add_argument("--config", help="JSON file with solver options")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="lp-extremal", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_)
        if name in NEEDS_FILE:
            sp.add_argument("file", help="point set (.json or .csv)")
        if name == "radius":
            sp.add_argument("--ambient", action="store_true",
                            help="unconstrained center instead of the convex hull")
        if name == "ww-check":
            sp.add_argument("--weights", help="weights file (default uniform)")
        if name == "gallery":
            sp.add_argument("--family", choices=("indicator", "rademacher", "random"),
                            required=True)
            sp.add_argument("--cells", type=int, default=4, help="cells for --family random")
        if name == "certify":
            sp.add_argument("--only", type=lambda s: [int(x) for x in s.split(",")],
                            help="comma-separated criterion ids")
            sp.add_argument("--threads", type=int, default=None,
                            help="parallel criteria (default LP_EXTREMAL_THREADS or 1)")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    func = COMMANDS[args.command][0]
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always", ConvergenceWarning)
            warnings.showwarning = lambda msg, *a, **k: log.warning("%s", msg)
            report = func(args)
        text = report_to_csv(report) if args.format == "csv" else dumps(report) + "\n"
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - reported as internal failure
        log.exception("internal failure: %s", exc)
        return 1
    return getattr(args, "_exit", 0)


def main():
    sys.exit(run())
