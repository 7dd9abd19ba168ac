"""Command-line front end.

Exit codes: 0 on success, 1 for I/O or parse failures, 2 when an input
violates a mathematical precondition of the requested command.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import bodies as bd
from . import flows as fl
from . import metrics as mt
from . import svg
from .bodies import VBody
from .errors import DimMismatch, EmptyPoints, ParseError, PreconditionError

COMMANDS = ("classify", "cd", "tau", "distance", "flow")
PRECONDITION_EXIT = 2
FAILURE_EXIT = 1


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str
    other: str | None = None
    output: str | None = None
    theorem: int = 1
    steps: int = 50
    resolution: int = 64
    r_max: float = 1e3
    mc_samples: int = 200_000
    seed: int = 0
    svg: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.steps < 1:
            raise ValueError("--steps must be >= 1")
        if self.resolution < 8:
            raise ValueError("--resolution must be >= 8")


# --- body JSON --------------------------------------------------------------------------


def _rows(data: dict, key: str, dim: int, required: bool) -> list:
    if key not in data:
        if required:
            raise ParseError(f"field {key!r} is missing")
        return []
    rows = data[key]
    if not isinstance(rows, list):
        raise ParseError(f"field {key!r} must be a list of coordinate lists")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in row):
            raise ParseError(f"{key}[{i}] must be a list of numbers")
        if len(row) != dim:
            raise DimMismatch(f"{key}[{i}] has {len(row)} coordinates, expected {dim}")
        if not all(math.isfinite(v) for v in row):
            raise ParseError(f"{key}[{i}] has non-finite coordinates")
    return rows


def parse_body(text: str) -> VBody:
    """Validate body JSON ``{"dim": n, "points": [...], "rays": [...], "lines": [...]}``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise ParseError("top-level JSON value must be an object")
    dim = data.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError("field 'dim' must be a positive integer")
    points = _rows(data, "points", dim, required=True)
    if not points:
        raise EmptyPoints("field 'points' is empty")
    rays = _rows(data, "rays", dim, required=False)
    lines = _rows(data, "lines", dim, required=False)
    for key, rows in (("rays", rays), ("lines", lines)):
        for i, row in enumerate(rows):
            if not any(row):
                raise ParseError(f"{key}[{i}] is the zero vector")
    if lines and np.linalg.matrix_rank(np.array(lines, dtype=float)) < len(lines):
        raise ParseError("field 'lines' must be linearly independent")
    K = VBody(dim, points, rays or None, lines or None)
    return VBody(dim, K.points, K.rays, K.lines, assume_solid=bd.is_solid(K))


def serialize_body(K: VBody) -> str:
    return json.dumps({"dim": K.dim, "points": K.points.tolist(), "rays": K.rays.tolist(),
                       "lines": K.lines.tolist()})


# --- output helpers ---------------------------------------------------------------------


def fmt(x: float) -> str:
    return format(float(x), ".12g")


def _round(obj):
    if isinstance(obj, float):
        return float(fmt(obj)) if math.isfinite(obj) else obj
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    return obj


def to_json(obj: dict) -> str:
    return json.dumps(_round(obj)) + "\n"


def trace_csv(trace: fl.FlowTrace) -> str:
    lines = ["t,tau,nc_radius,step_da"]
    lines += [",".join(fmt(v) for v in row) for row in trace.rows()]
    return "\n".join(lines) + "\n"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --- commands ---------------------------------------------------------------------------


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        write_atomic(cfg.output, text)
    else:
        sys.stdout.write(text)


def cmd_classify(cfg: RunConfig, K: VBody) -> int:
    c = bd.classify(K)
    out = {"class": c.tag}
    if c.tag == "Cylinder":
        out["m"] = c.m
    if c.degenerate:
        out["degenerate"] = True
    _emit(cfg, to_json(out))
    return 0


def cmd_cd(cfg: RunConfig, K: VBody) -> int:
    u = bd.central_direction(K, samples=cfg.mc_samples, seed=cfg.seed)
    _emit(cfg, to_json({"cd": [float(v) for v in u]}))
    return 0


def cmd_tau(cfg: RunConfig, K: VBody) -> int:
    est = bd.total_curvature_estimate(K, samples=cfg.mc_samples, seed=cfg.seed)
    out = {"tau": est.value, "method": est.method}
    if est.method == "montecarlo":
        out["stderr"] = est.stderr
    _emit(cfg, to_json(out))
    return 0


def cmd_distance(cfg: RunConfig, K: VBody, K1: VBody) -> int:
    report = mt.distance_report(K, K1, mt.MetricsConfig(r_max=cfg.r_max))
    _emit(cfg, to_json(report))
    return 0


def cmd_flow(cfg: RunConfig, K: VBody) -> int:
    model = fl.ModelBodyConfig(resolution=cfg.resolution)
    if cfg.theorem == 2 and not bd.is_K_plus(K):
        raise PreconditionError("body contains a line (or is bounded); the paraboloid flow needs a line-free "
                                "unbounded body")
    if cfg.theorem in (1, 2):
        # both flows are stated for bodies whose apex passes through the origin
        K = fl.apex_translation_flow(K, 1.0)
    trace = fl.run_trace(K, cfg.theorem, cfg.steps, model, mt.MetricsConfig(r_max=cfg.r_max, grid_directions=180,
                                                                            radial_levels=24),
                         keep_bodies=cfg.svg and K.dim == 2)
    _emit(cfg, trace_csv(trace))
    if cfg.svg and K.dim == 2:
        base = Path(cfg.output) if cfg.output else Path("flow.csv")
        W = svg.window_for(K)
        cd = bd.central_direction(K) if cfg.theorem in (1, 2) else None
        for i, (t, body) in enumerate(zip(trace.times, trace.bodies)):
            frame = svg.render_frame(body, cd, W, title=f"t={fmt(t)}")
            write_atomic(base.with_name(f"{base.stem}_{i:03d}.svg"), frame)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="recess", description="Unbounded convex bodies: classes, central directions, "
                                "total curvature, asymptotic distances and flows.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("-i", "--input", required=True, help="body JSON file")
    p.add_argument("-j", "--other", help="second body JSON file (distance)")
    p.add_argument("-o", "--output", help="output file (JSON or CSV); stdout when omitted")
    p.add_argument("--theorem", type=int, choices=(1, 2, 3), default=1, help="flow to run")
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--resolution", type=int, default=64, help="model-body discretization")
    p.add_argument("--r-max", type=float, default=1e3, help="sampling radius for bounded-Hausdorff distances")
    p.add_argument("--mc-samples", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--svg", action="store_true", help="write one SVG per flow step (planar bodies)")
    return p


def _read_body(path: str) -> VBody:
    with open(path, encoding="utf-8") as fh:
        return parse_body(fh.read())


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.input, args.other, args.output, args.theorem, args.steps,
                        args.resolution, args.r_max, args.mc_samples, args.seed, args.svg)
    except ValueError as exc:
        print(f"recess: {exc}", file=sys.stderr)
        return FAILURE_EXIT
    try:
        K = _read_body(cfg.input)
        K1 = _read_body(cfg.other) if cfg.other else None
    except (OSError, ValueError) as exc:
        print(f"recess: cannot read input: {exc}", file=sys.stderr)
        return FAILURE_EXIT
    if cfg.command == "distance" and K1 is None:
        print("recess: distance needs a second body (-j)", file=sys.stderr)
        return FAILURE_EXIT
    try:
        if cfg.command == "classify":
            return cmd_classify(cfg, K)
        if cfg.command == "cd":
            return cmd_cd(cfg, K)
        if cfg.command == "tau":
            return cmd_tau(cfg, K)
        if cfg.command == "distance":
            return cmd_distance(cfg, K, K1)
        return cmd_flow(cfg, K)
    except PreconditionError as exc:
        print(f"recess: precondition failed: {exc}", file=sys.stderr)
        return PRECONDITION_EXIT
    except OSError as exc:
        print(f"recess: {exc}", file=sys.stderr)
        return FAILURE_EXIT


if __name__ == "__main__":
    sys.exit(main())
