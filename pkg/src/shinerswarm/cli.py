"""Command-line front end: simulate, density, metrics, and render.

File outputs are deterministic byte for byte given the same inputs: floats
are printed with 9 significant digits and LF line endings.

Exit codes: 0 ok, 2 config error, 3 I/O error, 4 numeric/grid error,
5 bad render request.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .config import ConfigError, apply_overrides, parse_config
from .core import SwarmParams
from .density import GridSpanError, KernelParams, grid_stats, initial_pdf, propagate
from .engine import SwarmState, compute_metrics, run
from .svg import density_svg, snapshot_svg

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_NUMERIC = 4
EXIT_RENDER = 5

SNAPSHOT_HEADER = "step,node_id,x,y"
METRICS_HEADER = "step,mean_dist,frac_within_eps,mean_pairwise_dist,cluster_count"
DENSITY_HEADER = "t,z,pdf"


def _fmt(v: float) -> str:
    return format(float(v), ".9g")


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _write_text(path: str, text: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(text)


def cmd_simulate(args: argparse.Namespace) -> int:
    text = ""
    if args.config is not None:
        try:
            with open(args.config) as fh:
                text = fh.read()
        except OSError as exc:
            return _fail(EXIT_IO, f"cannot read config: {exc}")
    try:
        cfg = parse_config(text)
        cfg = apply_overrides(cfg, seed=args.seed, steps=args.steps,
                              stride=args.stride, mode=args.mode,
                              out_dir=args.out)
    except ConfigError as exc:
        return _fail(EXIT_CONFIG, str(exc))

    records = run(cfg.swarm_params(), cfg.seed, cfg.region(), cfg.steps,
                  cfg.stride, eps=cfg.eps, workers=args.workers)

    snap_lines = [SNAPSHOT_HEADER]
    metric_lines = [METRICS_HEADER]
    for state, metrics in records:
        for i, p in enumerate(state.positions):
            snap_lines.append(f"{state.t},{i},{_fmt(p.real)},{_fmt(p.imag)}")
        metric_lines.append(
            f"{metrics.t},{_fmt(metrics.mean_dist_to_rho)},"
            f"{_fmt(metrics.frac_within_eps)},"
            f"{_fmt(metrics.mean_pairwise_dist)},{metrics.cluster_count}")
    try:
        os.makedirs(cfg.out_dir, exist_ok=True)
        _write_text(os.path.join(cfg.out_dir, "snapshots.csv"),
                    "\n".join(snap_lines) + "\n")
        _write_text(os.path.join(cfg.out_dir, "metrics.csv"),
                    "\n".join(metric_lines) + "\n")
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write output: {exc}")
    return EXIT_OK


def cmd_density(args: argparse.Namespace) -> int:
    try:
        if args.t < 1:
            raise ConfigError(f"t must be >= 1, got {args.t}")
        params = KernelParams(c1=args.c1, c2=args.c2)
    except (ConfigError, ValueError) as exc:
        return _fail(EXIT_CONFIG, str(exc))
    try:
        f = initial_pdf(args.x0, params, args.grid_min, args.grid_max,
                        args.grid_points)
    except GridSpanError as exc:
        return _fail(EXIT_NUMERIC, str(exc))
    except ValueError as exc:
        return _fail(EXIT_CONFIG, str(exc))

    lines = [DENSITY_HEADER]
    for t in range(1, args.t + 1):
        if t > 1:
            f = propagate(f, params)
        z = f.z
        for k in range(f.n_points):
            lines.append(f"{t},{_fmt(z[k])},{_fmt(f.values[k])}")
        stats = grid_stats(f, args.near_eps)
        print(f"t={t} mass={_fmt(stats.mass)} mean={_fmt(stats.mean)} "
              f"mass_near({args.near_eps:g})={_fmt(stats.mass_near)} "
              f"deficit={_fmt(1.0 - stats.mass)}")
    try:
        _write_text(args.out, "\n".join(lines) + "\n")
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write output: {exc}")
    return EXIT_OK


def _read_csv(path: str) -> tuple[str, list[list[str]]]:
    with open(path) as fh:
        content = fh.read()
    rows = [line.split(",") for line in content.splitlines() if line]
    if not rows:
        raise ValueError(f"{path}: empty file")
    header = ",".join(rows[0])
    return header, rows[1:]


def cmd_metrics(args: argparse.Namespace) -> int:
    try:
        header, rows = _read_csv(args.infile)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot read input: {exc}")
    except ValueError as exc:
        return _fail(EXIT_CONFIG, str(exc))
    if header != SNAPSHOT_HEADER:
        return _fail(EXIT_CONFIG,
                     f"expected header {SNAPSHOT_HEADER!r}, got {header!r}")
    by_step: dict[int, list[tuple[int, complex]]] = {}
    try:
        for step_s, node_s, x_s, y_s in rows:
            by_step.setdefault(int(step_s), []).append(
                (int(node_s), complex(float(x_s), float(y_s))))
    except ValueError as exc:
        return _fail(EXIT_CONFIG, f"malformed snapshot row: {exc}")

    print(METRICS_HEADER)
    for step in sorted(by_step):
        nodes = sorted(by_step[step])
        positions = np.array([p for _, p in nodes], dtype=np.complex128)
        params = SwarmParams(n_nodes=len(nodes), r=args.r,
                             rho=complex(args.rho_x, args.rho_y))
        state = SwarmState(t=step, positions=positions, streams=[])
        m = compute_metrics(state, params, args.eps)
        print(f"{m.t},{_fmt(m.mean_dist_to_rho)},{_fmt(m.frac_within_eps)},"
              f"{_fmt(m.mean_pairwise_dist)},{m.cluster_count}")
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    try:
        header, rows = _read_csv(args.infile)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot read input: {exc}")
    except ValueError as exc:
        return _fail(EXIT_RENDER, str(exc))

    if header == SNAPSHOT_HEADER:
        steps_present = sorted({int(r[0]) for r in rows})
        step = args.step
        if step is None:
            if len(steps_present) > 1:
                return _fail(EXIT_RENDER,
                             f"file holds steps {steps_present}; --step required")
            step = steps_present[0]
        if step not in steps_present:
            return _fail(EXIT_RENDER,
                         f"step {step} not in file (has {steps_present})")
        pts = [(float(r[2]), float(r[3])) for r in rows if int(r[0]) == step]
        text = snapshot_svg(pts, rho=(args.rho_x, args.rho_y))
    elif header == DENSITY_HEADER:
        ts_present = sorted({int(r[0]) for r in rows})
        wanted = ts_present if args.step is None else [args.step]
        if args.step is not None and args.step not in ts_present:
            return _fail(EXIT_RENDER,
                         f"t={args.step} not in file (has {ts_present})")
        curves = []
        for t in wanted:
            zs = np.array([float(r[1]) for r in rows if int(r[0]) == t])
            ps = np.array([float(r[2]) for r in rows if int(r[0]) == t])
            curves.append((t, zs, ps))
        text = density_svg(curves)
    else:
        return _fail(EXIT_RENDER, f"unrecognized CSV header {header!r}")

    try:
        _write_text(args.out, text)
    except OSError as exc:
        return _fail(EXIT_IO, f"cannot write output: {exc}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shinerswarm",
        description="Swarm navigation simulator and 1D density toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run the 2D swarm, write CSVs")
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--seed", type=int)
    p.add_argument("--steps", type=int)
    p.add_argument("--stride", type=int)
    p.add_argument("--mode", choices=("none", "env", "social", "both"))
    p.add_argument("--out", help="output directory")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("density", help="propagate the 1D location pdf")
    p.add_argument("--x0", type=float, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--c1", type=float, default=1.0)
    p.add_argument("--c2", type=float, default=0.1)
    p.add_argument("--grid-min", type=float, default=-60.0)
    p.add_argument("--grid-max", type=float, default=60.0)
    p.add_argument("--grid-points", type=int, default=6001)
    p.add_argument("--near-eps", type=float, default=1.0)
    p.add_argument("--out", required=True, help="density CSV path")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("metrics", help="recompute metrics from a snapshot CSV")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--r", type=float, default=0.2)
    p.add_argument("--rho-x", type=float, default=0.0)
    p.add_argument("--rho-y", type=float, default=0.0)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("render", help="draw a snapshot or density CSV as SVG")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--step", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--rho-x", type=float, default=0.0)
    p.add_argument("--rho-y", type=float, default=0.0)
    p.set_defaults(func=cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
