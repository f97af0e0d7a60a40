"""Command-line entry point ``addrep``.

Exit codes: 0 when every report passed or is informational/not-applicable,
1 when any report failed, 2 for usage, configuration or input errors.
"""

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .constructions import (
    build_instance,
    double_sequence,
    greedy_sidon_upto,
    instance_summary,
    powers_of_two,
)
from .errors import AddrepError, ConfigError
from .harness import (
    bundle_json,
    identity28_report,
    ineq33_report,
    lemma1_report,
    lemma5_report,
    lemma6_theorem2_report,
    overall_exit_code,
    run_experiment,
)
from .partial_sums import sum_profile_for, write_sums_csv
from .repfuncs import rep_profiles, write_profile_csv
from .sequences import read_sequence, write_sequence

VERIFY_CHECKS = ("identity28", "ineq33", "lemma1", "lemma5", "lemma6", "theorem2")
HARNESS_CHECKS = ("theorem1", "corollaries", "hypothesis", "lemma5", "lemma6_theorem2",
                  "identity28", "ineq33", "lemma1", "all")


def parse_grid(text, integer=False):
    """``start:stop:step`` (stop inclusive) or a comma-separated list."""
    conv = int if integer else float
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError
            start, stop, step = (conv(p) for p in parts)
            if step <= 0:
                raise ValueError
            out = []
            i = 0
            while True:
                v = start + i * step
                if v > stop + (0 if integer else 1e-9 * abs(step)):
                    break
                out.append(round(v, 12) if not integer else v)
                i += 1
        else:
            out = [conv(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise ConfigError(f"bad grid {text!r}; use start:stop:step or a comma list") from None
    if not out:
        raise ConfigError(f"grid {text!r} is empty")
    return out


def _emit(payload, path):
    text = bundle_json(payload)
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _bundle(kind, reports, extra=None):
    dicts = [r.to_dict() for r in reports]
    out = {"tool": "addrep", "version": __version__, "command": kind, "reports": dicts}
    if extra:
        out.update(extra)
    return out


def cmd_compute(args):
    A = read_sequence(args.seq)
    prof = rep_profiles(A, args.n)
    write_profile_csv(prof, args.out)
    if args.sums:
        K = (args.n - 1) // 2
        write_sums_csv(sum_profile_for(A, K), args.sums, upto=K)
    return 0


def cmd_verify(args):
    check = args.check
    if check == "lemma1":
        grid = parse_grid(args.grid) if args.grid else [round(0.01 * i, 2) for i in range(1, 100)]
        reports = lemma1_report(grid)
    else:
        if not args.seq:
            raise ConfigError(f"verify {check} needs --seq")
        A = read_sequence(args.seq)
        if check == "identity28":
            D = args.degree if args.degree is not None else min(A.bound, 4096)
            reports = [identity28_report(A, D)]
        elif check == "lemma5":
            grid = parse_grid(args.grid, integer=True) if args.grid else [40, 100, 400]
            reports = lemma5_report(A, grid)
        else:
            grid = parse_grid(args.grid) if args.grid else [20.0 * i for i in range(1, 11)]
            if check == "ineq33":
                reports = ineq33_report(A, grid)
            else:
                reports = lemma6_theorem2_report(A, grid, c=args.c)
                wanted = ("lemma6",) if check == "lemma6" else ("theorem2", "theorem2_calibration")
                reports = [r for r in reports if r.check_id in wanted]
    _emit(_bundle(f"verify {check}", reports), args.json)
    return overall_exit_code(reports)


def cmd_construct(args):
    if args.b == "pow2":
        B = powers_of_two(args.cap)
    else:
        # greedy Sidon terms start at 1; doubling makes them even and keeps the Sidon property
        B = double_sequence(greedy_sidon_upto(args.cap // 2))
    if B.bound < args.nmax:
        B = B.as_complete(args.nmax)
    inst = build_instance(B, args.nmax)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name in ("B", "A", "Y", "X"):
        write_sequence(getattr(inst, name), out / f"{name}.txt")
    summary = instance_summary(inst)
    summary["B_source"] = args.b
    summary["cap"] = args.cap
    (out / "summary.json").write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n")
    return 1 if summary["violations"] else 0


def cmd_harness(args):
    config = {
        "family": args.family,
        "N": args.n,
        "checks": [args.check],
        "eps": args.eps,
        "threads": args.threads,
    }
    if args.seq:
        config["path"] = args.seq
    if args.calibrate:
        config["calibrate"] = True
    elif args.c1 is not None:
        config["c1"] = args.c1
    bundle = run_experiment(config, outdir=args.outdir)
    _emit(bundle, args.json)
    return overall_exit_code(bundle["reports"])


def build_parser():
    p = argparse.ArgumentParser(prog="addrep", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"addrep {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="write R1, R2, R3 of a sequence file as CSV")
    c.add_argument("--seq", required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--out", required=True)
    c.add_argument("--sums", help="also write k,S,S_plus for k <= (n-1)/2")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="check one identity or inequality on a sequence")
    v.add_argument("check", choices=VERIFY_CHECKS)
    v.add_argument("--seq")
    g = v.add_mutually_exclusive_group()
    g.add_argument("--degree", type=int)
    g.add_argument("--grid", help="start:stop:step (inclusive) or comma list")
    v.add_argument("--c", type=float, help="fixed constant for theorem2 (default: calibrate)")
    v.add_argument("--json")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("construct", help="build the dense-monotonicity instance")
    k.add_argument("kind", choices=("sarkozy",))
    k.add_argument("--b", choices=("pow2", "greedy"), default="pow2")
    k.add_argument("--cap", type=int, required=True)
    k.add_argument("--nmax", type=int, required=True)
    k.add_argument("--outdir", required=True)
    k.set_defaults(func=cmd_construct)

    h = sub.add_parser("harness", help="run report checks on a builtin family or a file")
    h.add_argument("check", choices=HARNESS_CHECKS)
    h.add_argument("--family", default="full")
    h.add_argument("--n", type=int, required=True)
    cg = h.add_mutually_exclusive_group()
    cg.add_argument("--c1", type=float)
    cg.add_argument("--calibrate", action="store_true")
    h.add_argument("--seq", help="sequence file for --family file")
    h.add_argument("--eps", type=float, default=1.0)
    h.add_argument("--threads", type=int, default=1)
    h.add_argument("--outdir", help="also write report.json, reports.csv, sums.csv here")
    h.add_argument("--json")
    h.set_defaults(func=cmd_harness)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AddrepError as exc:
        print(f"addrep: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"addrep: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
