"""Command-line front end.

Exit codes: 0 success, 1 computation or domain failure, 2 usage error.
Numbers are printed in nats with 17 significant digits; CSV output uses
``\\n`` line endings and a dot decimal separator regardless of locale.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import Optional, Sequence

from . import mixture, oracle
from .errors import GeometryError
from .mixture import CauchyMixtureFamily
from .verification import TEST_FAMILIES, verify_family


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def family_arg(text: str) -> CauchyMixtureFamily:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"family must be l0,s0,l1,s1 (got {text!r})")
    if len(values) != 4:
        raise argparse.ArgumentTypeError(f"family must have four numbers (got {text!r})")
    try:
        return CauchyMixtureFamily.from_tuple(values)
    except GeometryError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def theta_arg(text: str) -> float:
    try:
        t = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0.0 < t < 1.0:
        raise argparse.ArgumentTypeError(f"theta must lie in (0, 1), got {text}")
    return t


def grid_arg(text: str) -> list:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be start:stop:steps")
    try:
        start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}")
    if steps < 2:
        raise argparse.ArgumentTypeError("grid needs at least 2 steps")
    if not (0.0 < start < 1.0 and 0.0 < stop < 1.0):
        raise argparse.ArgumentTypeError("grid endpoints must lie in (0, 1)")
    return [start + (stop - start) * k / (steps - 1) for k in range(steps)]


def positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def seed_arg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= n < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return n


def positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cauchymix",
        description="Closed-form geometry of mixtures of two prescribed Cauchy densities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    family_help = "components as l0,s0,l1,s1 (default 0,1,1,1)"

    p = sub.add_parser("entropy", help="differential entropy h[m_theta]")
    p.add_argument("--family", type=family_arg, default=mixture.CANONICAL, help=family_help)
    p.add_argument("--theta", type=theta_arg, required=True)

    for name, text in (("kl", "KL(m_theta1 : m_theta2)"),
                       ("js", "Jensen-Shannon divergence"),
                       ("jeffreys", "Jeffreys divergence")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--family", type=family_arg, default=mixture.CANONICAL, help=family_help)
        p.add_argument("--theta1", type=theta_arg, required=True)
        p.add_argument("--theta2", type=theta_arg, required=True)

    p = sub.add_parser("table", help="CSV table of F, eta, F'', h and F* over a theta grid")
    p.add_argument("--family", type=family_arg, default=mixture.CANONICAL, help=family_help)
    p.add_argument("--grid", type=grid_arg, default=grid_arg("0.01:0.99:99"))
    p.add_argument("--out", help="output path (default: standard output)")

    p = sub.add_parser("verify", help="run the consistency battery")
    p.add_argument("--family", type=family_arg, action="append",
                   help="repeatable; default runs the three reference families")
    p.add_argument("--tol", type=positive_float, default=1e-7,
                   help="tolerance for closed form vs quadrature (default 1e-7)")
    p.add_argument("--seed", type=seed_arg, help="also run Monte Carlo checks with this seed")
    p.add_argument("--mc-samples", type=positive_int, default=1_000_000)

    p = sub.add_parser("oracle-compare",
                       help="CSV of closed-form vs quadrature (and Monte Carlo) KL over a grid")
    p.add_argument("--family", type=family_arg, default=mixture.CANONICAL, help=family_help)
    p.add_argument("--grid", type=grid_arg, default=grid_arg("0.1:0.9:9"))
    p.add_argument("--theta2", type=theta_arg, default=0.5,
                   help="reference mixture m_theta2 (default 0.5)")
    p.add_argument("--tol", type=positive_float, default=1e-10,
                   help="quadrature refinement tolerance (default 1e-10)")
    p.add_argument("--seed", type=seed_arg, help="add Monte Carlo columns with this seed")
    p.add_argument("--mc-samples", type=positive_int, default=1_000_000)
    p.add_argument("--out", help="output path (default: standard output)")
    return parser


def _write_csv(rows, out: Optional[str]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    data = buf.getvalue()
    if out:
        with open(out, "w", encoding="ascii", newline="") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data)


def cmd_table(args) -> int:
    fam = args.family
    rows = [["theta", "F", "eta", "metric", "entropy", "dual_potential"]]
    for t in args.grid:
        rows.append([
            fmt(t),
            fmt(mixture.negentropy(fam, t)),
            fmt(mixture.negentropy_grad(fam, t)),
            fmt(mixture.metric(fam, t)),
            fmt(mixture.mixture_entropy(fam, t)),
            fmt(mixture.dual_value_in_theta(fam, t)),
        ])
    _write_csv(rows, args.out)
    return 0


def cmd_divergence(args) -> int:
    fn = {
        "kl": mixture.kl_between_mixtures,
        "js": mixture.js_between_mixtures,
        "jeffreys": mixture.jeffreys_between_mixtures,
    }[args.command]
    print(fmt(fn(args.family, args.theta1, args.theta2)))
    return 0


def cmd_entropy(args) -> int:
    print(fmt(mixture.mixture_entropy(args.family, args.theta)))
    return 0


def cmd_verify(args) -> int:
    families = args.family or list(TEST_FAMILIES)
    failures = 0
    for fam in families:
        for check in verify_family(fam, oracle_tol=args.tol, mc_samples=args.mc_samples, seed=args.seed):
            print(check.line())
            failures += not check.passed
    total = "all checks passed" if failures == 0 else f"{failures} check(s) failed"
    print(total)
    return 0 if failures == 0 else 1


def cmd_oracle_compare(args) -> int:
    fam = args.family
    spec = oracle.spec_for(fam.comp0, fam.comp1, abs_tol=args.tol)
    ref = oracle.mixture_density(fam.comp0, fam.comp1, args.theta2)
    header = ["theta1", "theta2", "closed_form", "quadrature", "quadrature_gap"]
    if args.seed is not None:
        header += ["monte_carlo", "mc_stderr", "mc_gap"]
    rows = [header]
    for t in args.grid:
        closed = mixture.kl_between_mixtures(fam, t, args.theta2)
        quad = oracle.numeric_kl(oracle.mixture_density(fam.comp0, fam.comp1, t), ref, spec)
        row = [fmt(t), fmt(args.theta2), fmt(closed), fmt(quad), fmt(abs(closed - quad))]
        if args.seed is not None:
            est = oracle.mc_kl(fam, t, ref, oracle.McSpec(args.mc_samples, args.seed))
            row += [fmt(est.value), fmt(est.stderr), fmt(abs(closed - est.value))]
        rows.append(row)
    _write_csv(rows, args.out)
    return 0


COMMANDS = {
    "entropy": cmd_entropy,
    "kl": cmd_divergence,
    "js": cmd_divergence,
    "jeffreys": cmd_divergence,
    "table": cmd_table,
    "verify": cmd_verify,
    "oracle-compare": cmd_oracle_compare,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (GeometryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
