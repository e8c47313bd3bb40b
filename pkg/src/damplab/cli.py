"""Command-line interface.

    damplab evolve --state m2 --p0 0.5 --channel ad --param 0.5 --side left --n 2
    damplab sweep  --out curves.csv
    damplab verify --seeds 1000

Exit codes: 0 success, 2 validation/parameter error, 3 invariant failure,
4 I/O error. CSV output uses '.' decimals, 17 significant digits, LF line
endings and a mandatory header row, so identical arguments reproduce the
file byte for byte.
"""

import argparse
import json
import sys

import numpy as np

from . import channels, coherence, states, verify
from .errors import ConsistencyError, DamplabError, ParamOutOfRangeError
from .kernels import BACKEND
from .tolerances import oracle_tol

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INVARIANT = 3
EXIT_IO = 4

SWEEP_HEADER = "family,gamma,p0,n,coherence"
EVOLVE_CSV_HEADER = (
    "state_id,p0,gamma,n,side,c_in,c_iterative,c_analytic,c_limit,factorization_residual,frozen"
)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_lines(path, lines):
    text = "\n".join(lines) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _resolve_state(args):
    return states.resolve(args.state, p0=args.p0, theta0=args.theta0, theta1=args.theta1)


def _evolve_rows(args, rho, spec, report):
    """SweepRow records, one per trajectory step; asserts the row invariant."""
    tol = oracle_tol()
    rows = [EVOLVE_CSV_HEADER]
    p0_field = _fmt(args.p0) if args.state in ("m1", "m2", "m3", "incoco", "coinco") else ""
    c_limit = "" if report.c_limit is None else _fmt(report.c_limit)
    for n, c_iter in report.trajectory:
        c_analytic = fact = ""
        if spec.kind == "ad":
            c_ana = coherence.analytic_coherence_ad(rho, spec.param, spec.side, n)
            if abs(c_ana - c_iter) > tol:
                raise ConsistencyError(
                    f"analytic/iterative coherence disagree at n={n}: "
                    f"|{c_ana} - {c_iter}| > {tol}"
                )
            c_analytic = _fmt(c_ana)
            if spec.side == "both":
                step = channels.ChannelSpec("ad", spec.param, "left", n)
                c_l = coherence.l1_coherence(channels.apply_n(rho, step))
                step = channels.ChannelSpec("ad", spec.param, "right", n)
                c_r = coherence.l1_coherence(channels.apply_n(rho, step))
                fact = _fmt(abs(c_iter - c_l * c_r))
        rows.append(
            ",".join(
                [
                    args.state,
                    p0_field,
                    _fmt(spec.param),
                    str(n),
                    spec.side,
                    _fmt(report.c_in),
                    _fmt(c_iter),
                    c_analytic,
                    c_limit,
                    fact,
                    "true" if report.frozen else "false",
                ]
            )
        )
    return rows


def _format_table(args, spec, report):
    lines = [
        f"state: {args.state}   channel: {spec.kind}(param={spec.param:g}) "
        f"side={spec.side}   backend={BACKEND}",
        f"{'n':>4}  {'coherence':<22}",
    ]
    for n, c in report.trajectory:
        lines.append(f"{n:>4}  {c:<22.15f}")
    if report.c_analytic is not None:
        lines.append(f"closed-form value at n={spec.n}: {report.c_analytic:.15f}")
    if report.c_limit is not None:
        lines.append(f"limit n->inf: {report.c_limit:.15f}")
    lines.append(f"frozen: {str(report.frozen).lower()} ({report.reason})")
    return lines


def cmd_evolve(args) -> int:
    rho = _resolve_state(args)
    spec = channels.ChannelSpec(kind=args.channel, param=args.param, side=args.side, n=args.n)
    report = coherence.evolve_report(rho, spec)
    if args.format == "json":
        _write_lines(args.out, [json.dumps(report.to_dict())])
    elif args.format == "csv":
        _write_lines(args.out, _evolve_rows(args, rho, spec, report))
    else:
        _write_lines(args.out, _format_table(args, spec, report))
    return EXIT_OK


def sweep_rows(gammas, n, p0_steps):
    """The coherence-vs-p0 curves for the m2/m3 families: list of CSV lines."""
    rows = [SWEEP_HEADER]
    p0_grid = np.linspace(0.0, 1.0, p0_steps)
    for family, build in (("m2", states.m2), ("m3", states.m3)):
        for gamma in gammas:
            spec = channels.ChannelSpec("ad", gamma, "left", n)
            for p0 in p0_grid:
                rho = build(float(p0))
                c = coherence.l1_coherence(channels.apply_n(rho, spec))
                c_ana = coherence.analytic_coherence_ad(rho, gamma, "left", n)
                if abs(c - c_ana) > oracle_tol():
                    raise ConsistencyError(
                        f"sweep row ({family}, gamma={gamma}, p0={p0}) failed the "
                        f"analytic cross-check: |{c} - {c_ana}|"
                    )
                rows.append(
                    ",".join([family, _fmt(gamma), _fmt(p0), str(n), _fmt(c)])
                )
    return rows


def cmd_sweep(args) -> int:
    gammas = [float(g) for g in args.gammas.split(",") if g]
    for g in gammas:
        if not 0.0 <= g <= 1.0:
            raise ParamOutOfRangeError(f"gamma must lie in [0, 1], got {g}")
    if args.p0_steps < 2:
        raise ParamOutOfRangeError("--p0-steps must be at least 2")
    _write_lines(args.out, sweep_rows(gammas, args.n, args.p0_steps))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_all(seeds=args.seeds, base_seed=args.seed)
    report = verify.format_report(results)
    _write_lines(args.out, report.splitlines())
    if all(r.ok for r in results):
        return EXIT_OK
    failed = ", ".join(r.name for r in results if not r.ok)
    print(f"failed invariants: {failed}", file=sys.stderr)
    return EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="damplab",
        description="Two-qubit damping-channel evolution and l1-coherence analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("evolve", help="evolve one state and report its coherence trajectory")
    ev.add_argument("--state", required=True,
                    help="m1|m2|m3|bell|incoco|coinco|file:<path> (JSON matrix format)")
    ev.add_argument("--p0", type=float, default=0.5, help="mixing weight for the block families")
    ev.add_argument("--theta0", type=float, default=0.0, help="incoco/coinco: phase of part 0")
    ev.add_argument("--theta1", type=float, default=0.0, help="incoco/coinco: phase of part 1")
    ev.add_argument("--channel", choices=channels.KINDS, default="ad")
    ev.add_argument("--param", type=float, default=0.5, help="gamma (ad) or lambda (pd)")
    ev.add_argument("--side", choices=channels.SIDES, default="left")
    ev.add_argument("--n", type=int, default=10, help="number of channel repetitions")
    ev.add_argument("--format", choices=("json", "table", "csv"), default="table")
    ev.add_argument("--out", default=None, help="output path (default stdout)")
    ev.set_defaults(func=cmd_evolve)

    sw = sub.add_parser("sweep", help="emit the m2/m3 coherence-vs-p0 curves as CSV")
    sw.add_argument("--gammas", default="0.2,0.5,0.8", help="comma-separated damping strengths")
    sw.add_argument("--n", type=int, default=2, help="channel repetitions per point")
    sw.add_argument("--p0-steps", dest="p0_steps", type=int, default=101,
                    help="uniform p0 grid size over [0, 1]")
    sw.add_argument("--out", default=None, help="output path (default stdout)")
    sw.set_defaults(func=cmd_sweep)

    vf = sub.add_parser("verify", help="run the randomized invariant battery")
    vf.add_argument("--seeds", type=int, default=200, help="random states per check")
    vf.add_argument("--seed", type=int, default=0, help="base seed")
    vf.add_argument("--out", default=None, help="write the residual table here")
    vf.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except DamplabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
