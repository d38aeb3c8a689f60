"""Command-line entry point: ``oplaw verify | replay | list``.

Exit codes: 0 when every check passes, 1 when at least one verification
fails, 2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .harness import SUITES, TrialConfig, replay, run_suite
from .linalg import ConvergenceError, InvalidInput

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oplaw", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", action="append", metavar="ID",
                   help="suite id, repeatable, or 'all' (default: all)")
    v.add_argument("--dim", action="append", type=int, help="matrix dimension, repeatable")
    v.add_argument("--count", action="append", type=int,
                   help="number of operators / nodes, repeatable")
    v.add_argument("--trials", type=int, help="trials per grid cell")
    v.add_argument("--seed", type=int, help="unsigned 64-bit seed")
    v.add_argument("--tol", type=float, help="tolerance (default 1e-10)")
    v.add_argument("--p", action="append", type=float, dest="p_grid",
                   help="Schatten exponent for cor33, repeatable")
    v.add_argument("--config", metavar="FILE", help="JSON file with the same fields")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")

    r = sub.add_parser("replay", help="re-run a serialized instance (or a report's failures)")
    r.add_argument("file")
    r.add_argument("--tol", type=float, help="override the recorded tolerance")
    r.add_argument("--format", choices=("text", "json"), default="text")

    sub.add_parser("list", help="list suite ids")
    return p


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


_CONFIG_FIELDS = {
    "suites": "suite", "dims": "dim", "counts": "count", "trials": "trials",
    "seed": "seed", "tol": "tol", "p_grid": "p_grid",
}


def build_config(args) -> TrialConfig:
    """Defaults, then ``--config`` file values, then explicit flags."""
    values = {}
    if args.config:
        data = _load_json(args.config)
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = set(data) - set(_CONFIG_FIELDS)
        if unknown:
            raise UsageError(f"unknown config field(s): {', '.join(sorted(unknown))}")
        values.update(data)
    for key, flag in _CONFIG_FIELDS.items():
        val = getattr(args, flag)
        if val is not None:
            values[key] = val
    suites = values.get("suites")
    if isinstance(suites, str):
        suites = [suites]
    if suites is None or "all" in suites:
        values.pop("suites", None)
    else:
        values["suites"] = list(dict.fromkeys(suites))
    try:
        return TrialConfig(**values).validate()
    except TypeError as exc:
        raise UsageError(str(exc)) from exc


def format_text(report: dict) -> str:
    cfg = report["config"]
    lines = [
        f"oplaw verify  seed={cfg['seed']} trials/cell={cfg['trials']} tol={cfg['tol']:g} "
        f"dims={cfg['dims']} counts={cfg['counts']}",
    ]
    for s in report["suites"]:
        status = "PASS" if s["passed"] else "FAIL"
        lines.append(
            f"{status}  {s['suite']:<14} trials={s['trials']:<6} checks={s['checks']:<7} "
            f"failures={s['failures']:<4} worst={s['worst']:.3e}"
        )
    verdict = "all suites passed" if report["passed"] else f"{report['failures']} failing trial(s)"
    lines.append(f"{verdict} in {report['wall_ms'] / 1000:.1f}s")
    return "\n".join(lines)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_verify(args) -> int:
    config = build_config(args)
    report = run_suite(config)
    text = json.dumps(report, indent=2) if args.format == "json" else format_text(report)
    _emit(text, args.out)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_replay(args) -> int:
    data = _load_json(args.file)
    if isinstance(data, dict) and "suites" in data:
        records = [f for s in data["suites"] for f in s.get("failing_instances", [])]
    elif isinstance(data, list):
        records = data
    else:
        records = [data]
    results = []
    for rec in records:
        if not isinstance(rec, dict):
            raise UsageError("replay records must be JSON objects")
        ev = replay(rec, args.tol)
        results.append({
            "suite": rec["suite"],
            "seed_info": rec.get("seed_info", {}),
            "passed": ev.passed,
            "checks": [{"name": c.name, "value": c.value, "passed": c.passed} for c in ev.checks],
        })
    if args.format == "json":
        print(json.dumps(results, indent=2))
    else:
        for res in results:
            print(f"{'PASS' if res['passed'] else 'FAIL'}  {res['suite']}")
            for c in res["checks"]:
                print(f"    {'ok ' if c['passed'] else 'BAD'} {c['name']:<20} {c['value']:.3e}")
        if not results:
            print("no instances to replay")
    return EXIT_OK if all(r["passed"] for r in results) else EXIT_FAIL


def cmd_list(args) -> int:
    width = max(len(k) for k in SUITES)
    for sid, suite in SUITES.items():
        print(f"{sid:<{width}}  {suite.anchor}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"verify": cmd_verify, "replay": cmd_replay, "list": cmd_list}[args.command]
    try:
        return handler(args)
    except (UsageError, InvalidInput) as exc:
        print(f"oplaw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"oplaw: eigensolver failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
