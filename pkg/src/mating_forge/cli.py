"""Command-line front end: ``mating-forge <subcommand> ...``.

Exit codes: 0 success, 1 obstructed/degenerated verdict under ``--strict``,
2 usage or input error, 3 numeric failure.
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import laminations, mating_graph, thurston
from .angles import Angle, AngleError
from .slowmate import movie as movie_mod
from .slowmate.boettcher import SlowMateError
from .slowmate.render import render_frame, save_image
from .slowmate.sphere import parse_complex

SCHEMA = "mating-forge/{}/1"
EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# JSON with fixed float formatting

_FLOAT_TAG = "\x00F"
_FLOAT_RE = re.compile(r'"\\u0000F([^"]*)"')


def _tag_floats(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return _FLOAT_TAG + format(obj, ".17g")
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _tag_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_tag_floats(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Stable JSON: sorted keys, floats with 17 significant digits."""
    text = json.dumps(_tag_floats(obj), sort_keys=True, indent=2, ensure_ascii=False)
    return _FLOAT_RE.sub(lambda m: m.group(1), text) + "\n"


def _emit(doc: dict, out: str | None) -> None:
    text = dumps(doc)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# argument types


def _angle(text: str) -> Angle:
    try:
        return Angle.parse(text)
    except (AngleError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"bad angle {text!r}: {exc}") from None


def _complex(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad complex number {text!r} (expected re,im)") from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


@dataclass
class Config:
    """Validated view of the parsed arguments."""

    subcommand: str
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        for k, v in self.options.items():
            if k.endswith("tol") and v is not None and not v > 0:
                raise UsageError(f"{k} must be positive")
            if k.endswith("budget") and v is not None and v < 1:
                raise UsageError(f"{k} must be >= 1")

    def __getattr__(self, name):
        try:
            return self.__dict__["options"][name]
        except KeyError:
            raise AttributeError(name) from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_lamination(cfg: Config) -> int:
    lam = laminations.lamination_to_depth(cfg.theta, cfg.depth, cfg.universe_budget)
    _emit({
        "schema": SCHEMA.format("lamination"),
        "theta": str(cfg.theta),
        "depth": cfg.depth,
        "denominator": lam.denominator,
        "classes": lam.to_json(),
    }, cfg.out)
    return EXIT_OK


def _verdict_json(v) -> dict:
    doc: dict = {"name": v.name, "classes_scanned": v.classes_scanned if hasattr(v, "classes_scanned") else v.class_count}
    if isinstance(v, mating_graph.MooreObstructed):
        doc["witness"] = v.witness.to_json()
    elif isinstance(v, mating_graph.Inconclusive):
        doc["truncated"] = [g.to_json() for g in v.truncated]
    else:
        doc["max_diameter"] = v.max_diameter
        doc["diameter_histogram"] = {str(k): n for k, n in v.diameter_histogram.items()}
    return doc


def cmd_mate_check(cfg: Config) -> int:
    v = mating_graph.scan_verdict(cfg.theta_w, cfg.theta_b, cfg.max_period, cfg.budget, cfg.preimage_levels)
    _emit({
        "schema": SCHEMA.format("mate-check"),
        "theta_w": str(cfg.theta_w),
        "theta_b": str(cfg.theta_b),
        "max_period": cfg.max_period,
        "budget": cfg.budget,
        "verdict": _verdict_json(v),
    }, cfg.out)
    obstructed = isinstance(v, mating_graph.MooreObstructed)
    return EXIT_VERDICT if (cfg.strict and obstructed) else EXIT_OK


def cmd_ray_classes(cfg: Config) -> int:
    starts = cfg.angle or mating_graph.scan_universe(cfg.max_period, cfg.preimage_levels)
    seen: set = set()
    classes = []
    for a in starts:
        if a in seen:
            continue
        g = mating_graph.ray_class(a, cfg.theta_w, cfg.theta_b, cfg.budget)
        seen |= g.edges
        kind = mating_graph.classify_class(g)
        entry = g.to_json()
        entry["kind"] = type(kind).__name__
        if isinstance(kind, mating_graph.Tree):
            entry["diameter"] = kind.diameter
        classes.append(entry)
    _emit({
        "schema": SCHEMA.format("ray-classes"),
        "theta_w": str(cfg.theta_w),
        "theta_b": str(cfg.theta_b),
        "classes": classes,
    }, cfg.out)
    cyclic = any(c["kind"] == "Cyclic" for c in classes)
    return EXIT_VERDICT if (cfg.strict and cyclic) else EXIT_OK


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def cmd_thurston_matrix(cfg: Config) -> int:
    data = _load_json(cfg.pullback)
    try:
        pullback = thurston.pullback_from_json(data)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed pullback file: {exc}") from None
    A = thurston.thurston_matrix(pullback)
    value, obstructed = thurston.leading_eigenvalue(A, tol=cfg.tol)
    _emit({
        "schema": SCHEMA.format("thurston-matrix"),
        "matrix": A.to_json(),
        "leading_eigenvalue": value,
        "obstructed": obstructed,
    }, cfg.out)
    return EXIT_VERDICT if (cfg.strict and obstructed) else EXIT_OK


def _portrait(cfg: Config) -> thurston.Portrait:
    if cfg.portrait:
        data = _load_json(cfg.portrait)
        try:
            return thurston.Portrait.from_json(data)
        except (KeyError, TypeError, AttributeError) as exc:
            raise UsageError(f"malformed portrait file: {exc}") from None
    try:
        nxt = [int(x) for x in cfg.critical_orbit.split(",")]
    except ValueError:
        raise UsageError("--critical-orbit takes comma-separated indices") from None
    return thurston.Portrait.quadratic(nxt)


def cmd_orbifold(cfg: Config) -> int:
    p = _portrait(cfg)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", thurston.NonHyperbolicOrbifoldWarning)
        data = thurston.orbifold_data(p)
    _emit({
        "schema": SCHEMA.format("orbifold"),
        "weights": {str(k): ("inf" if w == math.inf else int(w)) for k, w in data.weights.items()},
        "postcritical": [str(x) for x in p.postcritical_set()],
        "chi": str(data.chi),
        "hyperbolic": data.is_hyperbolic(),
        "warnings": [str(w.message) for w in caught],
    }, cfg.out)
    return EXIT_OK


def cmd_slow_mate(cfg: Config) -> int:
    config = movie_mod.MovieConfig(collision_tol=cfg.collision_tol, blowup=cfg.blowup, max_frames=cfg.max_frames,
                                   min_t0=min(cfg.t0, movie_mod.MovieConfig.min_t0))
    frames_dir = Path(cfg.frames) if cfg.frames else None
    if frames_dir:
        frames_dir.mkdir(parents=True, exist_ok=True)

    def on_frame(fr: movie_mod.Frame) -> None:
        if frames_dir:
            img = render_frame(fr, cfg.size, cfg.size, max_iter=cfg.render_iter)
            save_image(frames_dir / f"frame_{fr.index:04d}.{cfg.format}", img)

    m = movie_mod.run_movie(cfg.cw, cfg.cb, cfg.t0, cfg.tmin, config, on_frame)
    doc = {"schema": SCHEMA.format("slow-mate"), "c_w": [cfg.cw.real, cfg.cw.imag], "c_b": [cfg.cb.real, cfg.cb.imag],
           "t0": cfg.t0, "t_min": cfg.tmin}
    doc.update(m.to_json())
    _emit(doc, cfg.report)
    degenerate = isinstance(m.verdict, movie_mod.Degenerated)
    return EXIT_VERDICT if (cfg.strict and degenerate) else EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mating-forge", description="Matings of quadratic polynomials.")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("lamination", help="co-landing classes up to a depth")
    p.add_argument("--theta", type=_angle, required=True)
    p.add_argument("--depth", type=_nonneg_int, required=True)
    p.add_argument("--universe-budget", type=_positive_int, default=laminations.DEFAULT_UNIVERSE_BUDGET)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lamination)

    def mating_args(q):
        q.add_argument("--theta-w", type=_angle, required=True)
        q.add_argument("--theta-b", type=_angle, required=True)
        q.add_argument("--max-period", type=_positive_int, default=8)
        q.add_argument("--budget", type=_positive_int, default=10_000)
        q.add_argument("--preimage-levels", type=_nonneg_int, default=1)
        q.add_argument("--strict", action="store_true")
        q.add_argument("--out")

    p = sub.add_parser("mate-check", help="scan ray-equivalence classes for a cyclic class")
    mating_args(p)
    p.set_defaults(func=cmd_mate_check)

    p = sub.add_parser("ray-classes", help="list ray-equivalence classes")
    mating_args(p)
    p.add_argument("--angle", type=_angle, action="append", help="start angle (repeatable); default: whole scan universe")
    p.set_defaults(func=cmd_ray_classes)

    p = sub.add_parser("thurston-matrix", help="Thurston matrix and leading eigenvalue from pullback data")
    p.add_argument("--pullback", required=True)
    p.add_argument("--tol", type=_positive_float, default=1e-12)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_thurston_matrix)

    p = sub.add_parser("orbifold", help="orbifold weights and Euler characteristic")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--portrait")
    src.add_argument("--critical-orbit", help="quadratic portrait: image index of each critical-orbit point, e.g. 1,0")
    p.add_argument("--out")
    p.set_defaults(func=cmd_orbifold)

    p = sub.add_parser("slow-mate", help="slow-mating movie")
    p.add_argument("--cw", type=_complex, required=True)
    p.add_argument("--cb", type=_complex, required=True)
    p.add_argument("--t0", type=_positive_float, default=8.0)
    p.add_argument("--tmin", type=_positive_float, default=2.0 ** -20)
    p.add_argument("--frames", help="directory for rendered frames")
    p.add_argument("--format", choices=("ppm", "png"), default="ppm")
    p.add_argument("--size", type=_positive_int, default=256)
    p.add_argument("--render-iter", type=_positive_int, default=200)
    p.add_argument("--collision-tol", type=_positive_float, default=1e-8)
    p.add_argument("--blowup", type=_positive_float, default=1e10)
    p.add_argument("--max-frames", type=_positive_int, default=200)
    p.add_argument("--report")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_slow_mate)
    return ap


_VALUE_FLAGS = ("--cw", "--cb")


def _join_values(argv: Sequence[str]) -> list[str]:
    """``--cw -1,0`` would read ``-1,0`` as a flag; glue such values on with ``=``."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    argv = _join_values(sys.argv[1:] if argv is None else list(argv))
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    opts = {k: v for k, v in vars(ns).items() if k not in ("func", "subcommand")}
    try:
        if ns.subcommand == "slow-mate" and not ns.t0 > ns.tmin:
            raise UsageError("--t0 must exceed --tmin")
        cfg = Config(ns.subcommand, opts)
        return ns.func(cfg)
    except UsageError as exc:
        print(f"mating-forge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SlowMateError as exc:
        print(f"mating-forge: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, KeyError) as exc:
        print(f"mating-forge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
