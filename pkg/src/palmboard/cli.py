"""Command-line entry points.

Subcommands:
  serve          host a live websocket session
  replay         run a touch trace to a final document
  validate       check a trace file for format/stream violations
  simulate-exp1  seeded Monte Carlo of menu accuracy per item count
  fit-exp1       fit the noise model to observed accuracy rates
  gaze analyze   movement metric + fixations for one gaze trace
  gaze compare   paired t-test over two directories of subject traces
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import json
import sys
from pathlib import Path

from .document import Document, DocumentFormatError
from .gestures import EngineConfig
from .gaze import (
    detect_fixations, gaze_movement_rate, load_gaze_trace, paired_t_test,
    total_gaze_movement, DISPERSION_DEG, MIN_DURATION_MS,
)
from .noise_model import NoiseModel, analytic_success, fit_noise_params, \
    simulate_exp1
from .session import ReplayError, replay
from .touch import load_trace, scan_trace


def _load_config(path: str | None) -> EngineConfig:
    if path is None:
        return EngineConfig()
    return EngineConfig.from_json(Path(path).read_text(encoding="utf-8"))


def _load_document(path: str | None) -> Document | None:
    if path is None:
        return None
    return Document.deserialize(Path(path).read_text(encoding="utf-8"))


def cmd_serve(args) -> int:
    host, _, port = args.listen.rpartition(":")
    if not host or not port.isdigit():
        print(f"bad --listen {args.listen!r}; expected host:port",
              file=sys.stderr)
        return 2
    config = _load_config(args.config)
    document = _load_document(args.doc)

    async def run():
        from .server import bound_port, serve
        ws = await serve(host, int(port), config, document)
        # flush so wrappers watching a pipe see the port immediately
        print(f"listening on ws://{host}:{bound_port(ws)} "
              f"(?role=presenter|audience)", flush=True)
        await asyncio.Future()

    try:
        asyncio.run(run())
    except KeyboardInterrupt:
        pass
    return 0


def cmd_replay(args) -> int:
    trace = load_trace(args.trace, validate=False)
    config = _load_config(args.config)
    initial = None
    if args.doc is not None:
        initial = Path(args.doc).read_text(encoding="utf-8")
    try:
        final = replay(trace, config, initial)
    except ReplayError as e:
        print(f"invalid trace: {e}", file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_text(final, encoding="utf-8", newline="")
    else:
        sys.stdout.write(final)
    return 0


def cmd_validate(args) -> int:
    with open(args.trace, encoding="utf-8", newline="") as f:
        text = f.read()
    findings = scan_trace(text)
    for line in findings:
        print(line)
    problems = [f for f in findings if not f.startswith("note:")]
    if problems:
        return 1
    print("ok")
    return 0


def cmd_simulate_exp1(args) -> int:
    try:
        items = sorted({int(tok) for tok in args.items.split(",") if tok})
    except ValueError:
        print(f"bad --items {args.items!r}", file=sys.stderr)
        return 2
    model = NoiseModel(sigma=args.sigma, lapse=args.lapse)
    rows = []
    for n in items:
        rows.append({
            "n_items": n,
            "simulated": simulate_exp1(model, n, args.trials, args.seed),
            "analytic": analytic_success(model, n),
            "trials": args.trials,
            "seed": args.seed,
        })
    for row in rows:
        print(f"N={row['n_items']:>3}  simulated={row['simulated']:.4f}  "
              f"analytic={row['analytic']:.4f}")
    if args.csv:
        _write_csv(args.csv, ["n_items", "simulated", "analytic",
                              "trials", "seed"], rows)
    return 0


def cmd_fit_exp1(args) -> int:
    observed = []
    with open(args.observed, encoding="utf-8", newline="") as f:
        for row in csv.DictReader(f):
            observed.append((int(row["n_items"]), float(row["rate"])))
    fit = fit_noise_params(observed, fix_lapse=args.fix_lapse)
    print(f"sigma_deg={fit.model.sigma:.6f}")
    print(f"lapse={fit.model.lapse:.6f}")
    print(f"sse={fit.sse:.6e}")
    for n in sorted(fit.residuals):
        print(f"residual_n{n}={fit.residuals[n]:+.6f}")
    for note in fit.warnings:
        print(f"warning: {note}", file=sys.stderr)
    return 0


def cmd_gaze_analyze(args) -> int:
    trace = load_gaze_trace(args.trace)
    if args.distance_mm is not None:
        trace.distance_mm = args.distance_mm
    total = total_gaze_movement(trace)
    fixations = detect_fixations(trace, args.dispersion_deg, args.min_duration_ms)
    print(f"samples={len(trace.samples)}")
    print(f"total_movement_deg={total:.4f}")
    if len(trace.samples) >= 2 and trace.samples[-1].t > trace.samples[0].t:
        print(f"movement_rate_deg_per_s={gaze_movement_rate(trace):.4f}")
    print(f"fixations={len(fixations)}")
    if args.csv:
        rows = [{"start_ms": f.start, "duration_ms": f.duration,
                 "cx_px": f.centroid[0], "cy_px": f.centroid[1]}
                for f in fixations]
        _write_csv(args.csv, ["start_ms", "duration_ms", "cx_px", "cy_px"], rows)
    return 0


def cmd_gaze_compare(args) -> int:
    dir_a, dir_b = Path(args.a), Path(args.b)
    names_a = {p.name for p in dir_a.glob("*.jsonl")}
    names_b = {p.name for p in dir_b.glob("*.jsonl")}
    if names_a != names_b:
        odd = sorted(names_a.symmetric_difference(names_b))
        print(f"unmatched subject files: {', '.join(odd)}", file=sys.stderr)
        return 1
    names = sorted(names_a)
    a_vals, b_vals = [], []
    for name in names:
        a_vals.append(total_gaze_movement(load_gaze_trace(dir_a / name)))
        b_vals.append(total_gaze_movement(load_gaze_trace(dir_b / name)))
        print(f"{name}: a={a_vals[-1]:.4f} b={b_vals[-1]:.4f} "
              f"diff={a_vals[-1] - b_vals[-1]:+.4f}")
    try:
        res = paired_t_test(a_vals, b_vals)
    except ValueError as e:
        print(f"t-test failed: {e}", file=sys.stderr)
        return 1
    print(f"t={res.t:.4f}")
    print(f"df={res.df}")
    print(f"p={res.p:.6f}")
    return 0


def _write_csv(path: str, fieldnames: list[str], rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="palmboard",
        description="Deterministic multi-touch whiteboard engine and "
                    "experiment harnesses.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="host a live websocket session")
    p.add_argument("--listen", default="127.0.0.1:8765", metavar="HOST:PORT")
    p.add_argument("--config", help="engine config file (canonical JSON)")
    p.add_argument("--doc", help="initial document file")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("replay", help="replay a touch trace to a document")
    p.add_argument("--trace", required=True)
    p.add_argument("--config")
    p.add_argument("--doc", help="initial document file")
    p.add_argument("--out", help="write the final document here "
                                 "(default: stdout)")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("validate", help="check a trace file")
    p.add_argument("--trace", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("simulate-exp1",
                       help="Monte Carlo menu accuracy per item count")
    p.add_argument("--items", default="2,4,8,16")
    p.add_argument("--sigma", type=float, required=True, metavar="DEG")
    p.add_argument("--lapse", type=float, default=0.0)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="write rows here as CSV")
    p.set_defaults(func=cmd_simulate_exp1)

    p = sub.add_parser("fit-exp1", help="fit sigma/lapse to observed rates")
    p.add_argument("--observed", required=True,
                   help="CSV with columns n_items,rate")
    p.add_argument("--fix-lapse", type=float, default=None)
    p.set_defaults(func=cmd_fit_exp1)

    p = sub.add_parser("gaze", help="gaze trace analysis")
    gaze_sub = p.add_subparsers(dest="gaze_command", required=True)

    g = gaze_sub.add_parser("analyze", help="metrics for one trace")
    g.add_argument("--trace", required=True)
    g.add_argument("--distance-mm", type=float, default=None,
                   help="override the trace's viewing distance")
    g.add_argument("--dispersion-deg", type=float, default=DISPERSION_DEG)
    g.add_argument("--min-duration-ms", type=int, default=MIN_DURATION_MS)
    g.add_argument("--csv", help="write fixation rows here as CSV")
    g.set_defaults(func=cmd_gaze_analyze)

    g = gaze_sub.add_parser("compare",
                            help="paired t-test across two directories")
    g.add_argument("--a", required=True, metavar="DIR")
    g.add_argument("--b", required=True, metavar="DIR")
    g.set_defaults(func=cmd_gaze_compare)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, DocumentFormatError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
