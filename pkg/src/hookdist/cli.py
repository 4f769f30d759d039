"""Command-line front end: ``hookdist <command> ...``.

Exit codes: 0 success, 1 failed verification, 2 usage or validation error.
Data goes to stdout (or ``--output``); progress goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

import mpmath

from . import asymptotics as asy
from . import stats, verify
from .genfun import build_genfun, evaluate_sc, hook_distribution
from .partitions import enumerate_partitions, enumerate_self_conjugate

log = logging.getLogger("hookdist")


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {value}")
    return value


def _positive_rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"T0 must be positive: {text}")
    return value


def _nvals(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("every n in --nvals must be a positive integer")
    return values


def _default_threads() -> int:
    env = os.environ.get("HOOKDIST_THREADS")
    if env:
        try:
            return _positive_int(env)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"HOOKDIST_THREADS: {exc}")
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", type=Path, help="write atomically to this file")
    common.add_argument("--threads", type=_positive_int, default=None,
                        help="worker processes (default: $HOOKDIST_THREADS or CPU count)")
    common.add_argument("--precision", type=_positive_int, default=30,
                        help="significant digits for high-precision numerics")
    common.add_argument("-q", "--quiet", action="store_true", help="no progress on stderr")

    p = argparse.ArgumentParser(prog="hookdist", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="list partitions of n")
    e.add_argument("n", type=_nonneg_int)
    e.add_argument("--self-conjugate", action="store_true")

    d = sub.add_parser("dist", parents=[common], help="exact distribution sc_t(n, m)")
    d.add_argument("-t", "--hook-length", type=_positive_int, required=True)
    d.add_argument("-n", "--size", type=_nonneg_int, required=True)

    t1 = sub.add_parser("table1", parents=[common], help="measured vs asymptotic mean, t=2")
    t1.add_argument("--nvals", type=_nvals, default=[100, 500, 1000, 5000])
    t1.add_argument("--rounding", choices=sorted(stats.ROUNDING_RULES), default="half-up")

    f2 = sub.add_parser("figure2", parents=[common], help="renormalized coefficient plot data")
    f2.add_argument("-t", "--hook-length", type=_positive_int, default=2)
    f2.add_argument("-n", "--size", type=_nonneg_int, required=True)

    a = sub.add_parser("asymptotics", parents=[common], help="mu, sigma^2, b_t, alpha")
    a.add_argument("-t", "--hook-length", type=_positive_int, required=True)
    a.add_argument("-n", "--size", type=_positive_int, required=True)
    a.add_argument("--T0", type=_positive_rational, default=Fraction(1))

    c = sub.add_parser("cauchy", parents=[common], help="Cauchy-integral cross-check")
    c.add_argument("-t", "--hook-length", type=_positive_int, required=True)
    c.add_argument("-n", "--size", type=_positive_int, required=True)
    c.add_argument("--T0", type=_positive_rational, default=Fraction(1))
    c.add_argument("--samples", type=_positive_int, default=None,
                   help="quadrature nodes M (default: max(4096, 8n))")

    v = sub.add_parser("verify", parents=[common], help="run self-check suites")
    v.add_argument("--suite", choices=("oracle", "identities", "asymptotics", "all"),
                   default="all")
    return p


# -- commands ---------------------------------------------------------------


def cmd_enumerate(args) -> tuple[str, int]:
    parts = enumerate_self_conjugate(args.n) if args.self_conjugate else enumerate_partitions(args.n)
    if args.format == "json":
        return json.dumps([list(p) for p in parts]) + "\n", 0
    return "".join(f"{p}\n" for p in parts), 0


def _decimal(x: Fraction, digits: int) -> str:
    with mpmath.workdps(digits + 5):
        return mpmath.nstr(mpmath.mpf(x.numerator) / x.denominator, digits)


def cmd_dist(args) -> tuple[str, int]:
    t, n = args.hook_length, args.size
    log.info("building F_%d(T; q) up to q^%d", t, n)
    dist = hook_distribution(build_genfun(t, n), n)
    if dist.total == 0:
        mean = variance = None
    else:
        mean, variance = dist.mean(), dist.variance()
    summary = f"total={dist.total}"
    if mean is not None:
        summary += f" mean={_decimal(mean, args.precision)} variance={_decimal(variance, args.precision)}"
    if args.format == "json":
        doc = {
            "t": t,
            "n": n,
            "total": str(dist.total),
            "mean": None if mean is None else str(mean),
            "variance": None if variance is None else str(variance),
            "coeffs": [[m, str(c)] for m, c in enumerate(dist.counts) if c],
        }
        return json.dumps(doc) + "\n", 0
    log.info("%s", summary)
    rows = [(m, c) for m, c in enumerate(dist.counts) if c]
    return stats.write_csv(("m", "count"), rows), 0


def cmd_table1(args) -> tuple[str, int]:
    log.info("computing t=2 means via jets up to n=%d", max(args.nvals))
    rows = stats.table1(args.nvals, rounding=stats.ROUNDING_RULES[args.rounding])
    header = ("n", "mu_measured", "mu_asymptotic", "ratio")
    if args.format == "json":
        return json.dumps([dict(zip(header, (r[0], *map(str, r[1:])))) for r in rows]) + "\n", 0
    return stats.write_csv(header, [(r[0], *map(str, r[1:])) for r in rows]), 0


def cmd_figure2(args) -> tuple[str, int]:
    t, n = args.hook_length, args.size
    log.info("building F_%d(T; q) up to q^%d", t, n)
    dist = hook_distribution(build_genfun(t, n), n)
    if dist.total == 0 or dist.variance() == 0:
        raise UsageError(f"degenerate distribution at t={t}, n={n}: zero variance")
    rows = stats.figure2_data(t, n, dist)
    if args.format == "json":
        return json.dumps([{"m": m, "x": x, "y": y} for m, x, y in rows]) + "\n", 0
    return stats.write_csv(("m", "x", "y"), [(m, repr(x), repr(y)) for m, x, y in rows]), 0


def cmd_asymptotics(args) -> tuple[str, int]:
    t, n, T = args.hook_length, args.size, float(args.T0)
    mu, sigma2 = asy.mean_variance(t, n)
    values = {
        "t": t,
        "n": n,
        "T0": str(args.T0),
        "mu": mu,
        "sigma2": sigma2,
        "b_t": asy.b_t(t, T),
        "alpha": asy.saddle_alpha(t, T, n),
        "sc_asymptotic": asy.sc_asymptotic(t, T, n),
        "n_min": asy.n_min(t),
    }
    if args.format == "json":
        return json.dumps(values) + "\n", 0
    return stats.write_csv(("quantity", "value"), [(k, v if isinstance(v, str) else repr(v)) for k, v in values.items()]), 0


def cmd_cauchy(args) -> tuple[str, int]:
    t, n, T = args.hook_length, args.size, args.T0
    samples = args.samples or max(4096, 8 * n)
    if samples < 8 * n:
        raise UsageError(f"--samples must be at least 8n = {8 * n}")
    log.info("quadrature with M=%d nodes on %d worker(s)", samples, args.threads)
    est = asy.cauchy_estimate(t, T, n, samples, dps=max(30, args.precision), workers=args.threads)
    exact = evaluate_sc(build_genfun(t, n), n, T)
    rel = abs(est / float(exact) - 1)
    values = {"t": t, "n": n, "T0": str(T), "samples": samples,
              "estimate": est, "exact": str(exact), "relative_error": rel}
    if args.format == "json":
        return json.dumps(values) + "\n", 0
    return stats.write_csv(("quantity", "value"), [(k, v if isinstance(v, str) else repr(v)) for k, v in values.items()]), 0


def cmd_verify(args) -> tuple[str, int]:
    checks = verify.run(args.suite, workers=args.threads)
    failed = [c for c in checks if not c.passed]
    if args.format == "json":
        text = json.dumps([c.__dict__ for c in checks]) + "\n"
    else:
        text = "".join(c.line() + "\n" for c in checks)
        text += f"{len(checks) - len(failed)}/{len(checks)} checks passed\n"
    return text, 1 if failed else 0


COMMANDS = {
    "enumerate": cmd_enumerate,
    "dist": cmd_dist,
    "table1": cmd_table1,
    "figure2": cmd_figure2,
    "asymptotics": cmd_asymptotics,
    "cauchy": cmd_cauchy,
    "verify": cmd_verify,
}


def _write_atomic(path: Path, text: str) -> None:
    path = path.resolve()
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="hookdist: %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.threads is None:
            args.threads = _default_threads()
        text, code = COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"hookdist {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        _write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
