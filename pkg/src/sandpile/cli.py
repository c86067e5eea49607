"""Command-line entry point: ``sandpile {step,run,fixpoints,explore,verify}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import ConfigParseError, Configuration, config_to_json, format_config, parse_config
from .dynamics import Rule, psspm_step, trajectory
from .explorer import CapExceeded, ModelKind, bfs_reachable, diagram_stats, fixed_points_of, to_dot, to_json
from .fixpoints import ChainBroken, enumerate_fixpoints
from .verify import CHECKS, run_checks

UNSAFE_CAP = 10**6


def _record(c: Configuration) -> dict:
    return {"config": format_config(c), **config_to_json(c)}


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _caps(args) -> dict:
    if args.unsafe_cap:
        return {"psspm": UNSAFE_CAP, "sspm": UNSAFE_CAP}
    return {}


def _grains(value: str) -> int:
    n = int(value)
    if not 0 <= n <= UNSAFE_CAP:
        raise argparse.ArgumentTypeError(f"n must lie in [0, {UNSAFE_CAP}]")
    return n


def cmd_step(args) -> int:
    c = parse_config(args.config)
    out = psspm_step(c, Rule(args.choice))
    _emit(args, format_config(out), _record(out))
    return 0


def cmd_run(args) -> int:
    c = parse_config(args.config)
    try:
        steps = trajectory(c, args.word)
    except ValueError as exc:
        raise ConfigParseError(str(exc)) from exc
    if args.trace:
        for k, s in enumerate(steps):
            print(json.dumps({"step": k, **_record(s)}, sort_keys=True))
        return 0
    _emit(args, format_config(steps[-1]), _record(steps[-1]))
    return 0


def cmd_fixpoints(args) -> int:
    caps = _caps(args)
    model = ModelKind(args.model)
    if args.method is None:
        args.method = "successor" if model is ModelKind.PSSPM else "bfs"
    if args.method == "successor" and model is ModelKind.SSPM:
        print("error: --method successor only applies to --model psspm", file=sys.stderr)
        return 2
    if args.method == "successor":
        points = enumerate_fixpoints(args.n).points
    else:
        points = fixed_points_of(bfs_reachable(args.n, model, n_cap=caps.get(model.value)))

    if args.check:
        if model is ModelKind.SSPM:
            print("error: --check compares successor and bfs on psspm", file=sys.stderr)
            return 2
        chain = enumerate_fixpoints(args.n).points
        oracle = fixed_points_of(bfs_reachable(args.n, model, n_cap=caps.get(model.value)))
        agree = chain == oracle
        payload = {
            "n": args.n,
            "agree": agree,
            "successor": [format_config(p) for p in chain],
            "bfs": [format_config(p) for p in oracle],
        }
        msg = (
            f"OK: {len(chain)} fixed points, methods agree"
            if agree
            else f"MISMATCH: successor gives {len(chain)}, bfs gives {len(oracle)}"
        )
        _emit(args, msg, payload)
        return 0 if agree else 1

    payload = {
        "n": args.n,
        "model": model.value,
        "count": len(points),
        "rightmost": config_to_json(points[0]),
        "leftmost": config_to_json(points[-1]),
        "points": [config_to_json(p) for p in points],
    }
    _emit(args, "\n".join(format_config(p) for p in points), payload)
    return 0


def cmd_explore(args) -> int:
    caps = _caps(args)
    model = ModelKind(args.model)
    d = bfs_reachable(args.n, model, n_cap=caps.get(model.value))
    if args.dot:
        Path(args.dot).write_text(to_dot(d))
    if args.json:
        Path(args.json).write_text(json.dumps(to_json(d), indent=1) + "\n")
    stats = diagram_stats(d)
    text = "\n".join(f"{k}: {v}" for k, v in stats.as_dict().items())
    _emit(args, text, {"n": args.n, "model": model.value, **stats.as_dict()})
    return 0


def cmd_verify(args) -> int:
    checks = [c.strip() for c in args.checks.split(",") if c.strip()] if args.checks else None
    try:
        records = run_checks(args.n_max, checks, _caps(args))
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    ok = all(r.passed for r in records)
    report = {"n_max": args.n_max, "pass": ok, "records": [r.to_json() for r in records]}
    if args.report:
        Path(args.report).write_text(json.dumps(report, indent=1, sort_keys=True) + "\n")
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        for r in records:
            status = "PASS" if r.passed else "FAIL"
            extra = f"  {json.dumps(r.witness, ensure_ascii=False)}" if r.witness is not None else ""
            print(f"{status} {r.check_name} n={r.n}{extra}")
        print(f"{'all checks passed' if ok else 'some checks FAILED'} ({len(records)} records)")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sandpile", description="Symmetric sand pile models, sequential and parallel.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument(
        "--unsafe-cap", action="store_true", help="lift the default grain caps on exhaustive exploration"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("step", help="one parallel step")
    p.add_argument("--config", required=True, help='e.g. "1,_3" (underscore marks column 0)')
    p.add_argument("--choice", choices=("L", "R"), default="L")
    p.set_defaults(func=cmd_step)

    p = sub.add_parser("run", help="apply a word over {L,R} one parallel step per letter")
    p.add_argument("--config", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--trace", action="store_true", help="print every configuration as a JSON line")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("fixpoints", help="list reachable fixed points in lexicographic order")
    p.add_argument("--n", type=_grains, required=True)
    p.add_argument("--method", choices=("successor", "bfs"), help="default: successor for psspm, bfs for sspm")
    p.add_argument("--model", choices=("psspm", "sspm"), default="psspm")
    p.add_argument("--check", action="store_true", help="run both methods and compare")
    p.set_defaults(func=cmd_fixpoints)

    p = sub.add_parser("explore", help="build the transition diagram")
    p.add_argument("--n", type=_grains, required=True)
    p.add_argument("--model", choices=("psspm", "sspm"), default="psspm")
    p.add_argument("--dot", help="write Graphviz DOT to this path")
    p.add_argument("--json", help="write the diagram as JSON to this path")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("verify", help="brute-force verification harness")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--checks", help=f"comma-separated subset of: {', '.join(sorted(CHECKS))}")
    p.add_argument("--report", help="also write the JSON report to this path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CapExceeded, ChainBroken) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
