"""Slow-mating movies: pull the marked critical orbits back through R_hat one frame at a time.

A frame at ``lambda`` stores the positions of both critical orbits and the map
whose critical values are the positions of ``c_w`` and ``c_b`` in that frame
(critical points at 0 and infinity, ``R(1) = 1``). Pulling the positions
back through that map gives the frame at ``sqrt(lambda)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .boettcher import DomainError, SlowMateError
from .rational import DegenerateMapError, QuadMap, map_from_critical_values, sup_distance
from .sphere import INF, chordal, format_complex, is_inf

WHITE, BLACK = "w", "b"


class InitializationError(SlowMateError):
    pass


class StepError(SlowMateError):
    pass


@dataclass(frozen=True)
class PolySpec:
    """``z**2 + c`` with the forward orbit of 0 listed; ``next_index`` is -1 past a truncation."""

    c: complex
    side: str
    marked_orbit: tuple[complex, ...]
    next_index: tuple[int, ...]

    @property
    def pcf(self) -> bool:
        return all(i >= 0 for i in self.next_index)

    @property
    def cycle_length(self) -> int:
        """Length of the cycle the critical orbit falls into (1 when truncated)."""
        last = self.next_index[-1]
        return 1 if last < 0 else len(self.marked_orbit) - last

    @property
    def critical_value_index(self) -> int:
        return self.next_index[0]

    @classmethod
    def from_parameter(cls, c: complex, side: str = WHITE, max_len: int = 64, tol: float = 1e-8) -> "PolySpec":
        if side not in (WHITE, BLACK):
            raise ValueError("side must be 'w' or 'b'")
        c = _near_center(complex(c), max_len)
        pts, nxt = _critical_orbit(c, max_len, tol)
        if nxt[-1] == 0 and len(pts) > 1:
            c = _snap_center(c, len(pts))
            pts, nxt = _critical_orbit(c, max_len, tol)
        return cls(c, side, tuple(pts), tuple(nxt))


def _critical_orbit(c: complex, max_len: int, tol: float) -> tuple[list[complex], list[int]]:
    pts = [0j]
    while len(pts) < max_len:
        z = pts[-1] * pts[-1] + c
        for i, p in enumerate(pts):
            if abs(p - z) <= tol * max(1.0, abs(p)):
                return pts, list(range(1, len(pts))) + [i]
        pts.append(z)
    return pts, list(range(1, len(pts))) + [-1]


def _near_center(c: complex, max_len: int, radius: float = 1e-3) -> complex:
    """A rounded centre (say the rabbit to four digits) has an attracting cycle
    passing close to 0 rather than through it; move to the true centre."""
    z = 0j
    for k in range(1, max_len):
        z = z * z + c
        if abs(z) > 4:
            break
        if abs(z) < radius:
            snapped = _snap_center(c, k)
            w = 0j
            for _ in range(k):
                w = w * w + snapped
            if abs(snapped - c) < radius and abs(w) < 1e-12:
                return snapped
            break
    return c


def _snap_center(c: complex, period: int) -> complex:
    """Newton on ``f_c^period(0) = 0`` so that user-typed centres close up exactly."""
    for _ in range(20):
        z, dz = 0j, 0j
        for _ in range(period):
            z, dz = z * z + c, 2 * z * dz + 1
        if dz == 0:
            return c
        step = z / dz
        c -= step
        if abs(step) < 1e-17:
            break
    return c


@dataclass(frozen=True)
class Frame:
    index: int
    Lambda: complex
    positions: Mapping[tuple[str, int], complex]
    map: QuadMap
    residual: float = 0.0
    status: str = "ok"

    @property
    def lam(self) -> complex:
        return cmath.exp(self.Lambda)

    @property
    def t(self) -> float:
        return self.Lambda.real

    @property
    def coeffs(self) -> tuple[complex, ...]:
        return self.map.coeffs

    @property
    def v_w(self) -> complex:
        return self.map(0j)

    @property
    def v_b(self) -> complex:
        return self.map(INF)

    def separation(self) -> float:
        return chordal(self.v_w, self.v_b)

    def to_json(self) -> dict:
        lam = self.lam
        return {
            "index": self.index,
            "lambda": [lam.real, lam.imag],
            "t": self.t,
            "v_w": format_complex(self.v_w),
            "v_b": format_complex(self.v_b),
            "coeffs": self.map.to_json(),
            "residual": self.residual,
            "status": self.status,
            "positions": {f"{s}{k}": format_complex(z) for (s, k), z in sorted(self.positions.items())},
        }


@dataclass(frozen=True)
class Converged:
    limit: QuadMap
    frame_index: int
    name: str = "Converged"


@dataclass(frozen=True)
class Degenerated:
    frame_index: int
    reason: str
    name: str = "Degenerated"


@dataclass(frozen=True)
class BudgetExhausted:
    frames: int
    reason: str = "frame budget"
    name: str = "BudgetExhausted"


@dataclass
class Movie:
    frames: list[Frame]
    verdict: Converged | Degenerated | BudgetExhausted

    def to_json(self) -> dict:
        v = self.verdict
        verdict: dict = {"name": v.name}
        if isinstance(v, Converged):
            verdict.update(frame_index=v.frame_index, limit=v.limit.to_json())
        elif isinstance(v, Degenerated):
            verdict.update(frame_index=v.frame_index, reason=v.reason)
        else:
            verdict.update(frames=v.frames, reason=v.reason)
        return {"frames": [f.to_json() for f in self.frames], "verdict": verdict}


@dataclass(frozen=True)
class MovieConfig:
    """Thresholds are implementation choices, not derived constants."""

    collision_tol: float = 1e-8
    blowup: float = 1e10
    cauchy_tol: float = 1e-5
    max_frames: int = 200
    min_t0: float = 2.0
    contract_factor: float = 10.0
    contract_grid: int = 64
    ambiguity_factor: float = 2.0
    extrapolate: bool = True
    persist: int = 3
    relative_limit: float = 1e-3
    max_ratio: float = 0.9

    def __post_init__(self):
        for name in ("collision_tol", "blowup", "cauchy_tol", "contract_factor", "ambiguity_factor"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.max_frames < 1 or self.persist < 1:
            raise ValueError("budgets must be >= 1")


def _embed(spec: PolySpec, lam0: complex) -> dict:
    out = {}
    for k, z in enumerate(spec.marked_orbit):
        if spec.side == WHITE:
            out[(WHITE, k)] = 0j if k == 0 else z / lam0
        else:
            out[(BLACK, k)] = INF if z == 0 else lam0 / z
    return out


def initial_frame(w: PolySpec, b: PolySpec, t0: float | complex = 8.0, config: MovieConfig = MovieConfig()) -> Frame:
    """Large-lambda frame: white orbit scaled by ``1/lambda0``, black orbit by ``lambda0 / z``.

    ``t0`` may be complex, in which case it is ``Lambda0 = log(lambda0)``.
    """
    Lambda0 = complex(t0)
    if Lambda0.real < config.min_t0:
        raise InitializationError(f"t0 = {Lambda0.real} is below the configured minimum {config.min_t0}")
    if not (w.pcf and b.pcf):
        raise DomainError("critical orbits must be finite (post-critically finite parameters)")
    lam0 = cmath.exp(Lambda0)
    pos = _embed(w, lam0)
    pos.update(_embed(b, lam0))
    try:
        f = map_from_critical_values(pos[(WHITE, w.critical_value_index)], pos[(BLACK, b.critical_value_index)])
    except DegenerateMapError as exc:
        raise InitializationError(f"{exc}; increase t0") from exc
    eps = config.contract_factor * math.exp(-Lambda0.real)
    dist = sup_distance(f, n=config.contract_grid)
    if dist > eps:
        raise InitializationError(f"initial map is {dist:.3g} from z^2 (allowed {eps:.3g}); increase t0")
    return Frame(0, Lambda0, pos, f)


def step_frame(prev: Frame, w: PolySpec, b: PolySpec, config: MovieConfig = MovieConfig()) -> Frame:
    """Frame at ``sqrt(lambda)``: each marked point is the preimage, under ``prev.map``,
    of its image's previous position, on the branch nearest the rescaled old position."""
    if prev.status != "ok":
        raise StepError(f"frame {prev.index} is {prev.status}")
    R = prev.map
    Lambda = prev.Lambda / 2
    lam = cmath.exp(Lambda)
    pos: dict = {}
    for spec in (w, b):
        for k in range(len(spec.marked_orbit)):
            key = (spec.side, k)
            if k == 0:
                pos[key] = 0j if spec.side == WHITE else INF
                continue
            target = prev.positions[(spec.side, spec.next_index[k])]
            r1, r2 = R.preimages(target)
            old = prev.positions[key]
            if is_inf(old):
                guess = old
            else:
                guess = old * lam if spec.side == WHITE else old / lam
            d1, d2 = chordal(r1, guess), chordal(r2, guess)
            if d2 < d1:
                r1, d1, d2 = r2, d2, d1
            if chordal(r1, r2) > 0 and d2 < config.ambiguity_factor * d1:
                raise StepError(f"branch ambiguity at {spec.side}{k}: distances {d1:.3g} and {d2:.3g}")
            pos[key] = r1
    try:
        f = map_from_critical_values(pos[(WHITE, w.critical_value_index)], pos[(BLACK, b.critical_value_index)])
    except DegenerateMapError as exc:
        raise StepError(str(exc)) from exc
    residual = 0.0
    for spec in (w, b):
        for k in range(len(spec.marked_orbit)):
            img = prev.positions[(spec.side, spec.next_index[k])]
            residual = max(residual, chordal(R(pos[(spec.side, k)]), img))
    return Frame(prev.index + 1, Lambda, pos, f, residual)


class _Extrapolator:
    """Aitken extrapolation of the critical-value separation.

    Obstructed movies close the gap like a power of ``t`` (linear for
    basilica/basilica, about ``t**(2/3)`` for rabbit/corabbit), so the raw
    threshold would only fire near ``t ~ 1e-8``. Aitken's delta-squared needs
    no rate: it flags a separation whose extrapolated limit is negligible
    next to its current value while the sequence keeps contracting. The
    contraction rate is modulated by the critical cycles, so values are
    sampled with a stride equal to the lcm of their lengths.
    """

    def __init__(self, stride: int = 1):
        self.stride = stride
        self.s: list[float] = []

    def push(self, s: float) -> tuple[float, float] | None:
        """Return ``(limit estimate, contraction ratio per stride)`` once enough values are in."""
        self.s.append(s)
        k = self.stride
        if len(self.s) < 2 * k + 1:
            return None
        s0, s1, s2 = self.s[-1 - 2 * k], self.s[-1 - k], self.s[-1]
        den = s2 - 2 * s1 + s0
        est = s2 if den == 0 else s2 - (s2 - s1) ** 2 / den
        return est, (s2 / s1 if s1 else 1.0)


def _degeneracy(frame: Frame, config: MovieConfig) -> str | None:
    if frame.separation() < config.collision_tol:
        return "critical-value collision"
    if frame.map.conditioning() > config.blowup:
        return "coefficient blow-up"
    return None


def run_movie(c_w: complex, c_b: complex, t0: float | complex = 8.0, t_min: float = 2.0 ** -20,
              config: MovieConfig = MovieConfig(), on_frame: Callable[[Frame], None] | None = None) -> Movie:
    """Iterate frames from ``t0`` down to ``t_min``; the verdict records how it ended."""
    if not complex(t0).real > t_min > 0:
        raise ValueError("need t0 > t_min > 0")
    w = PolySpec.from_parameter(c_w, WHITE)
    b = PolySpec.from_parameter(c_b, BLACK)
    frame = initial_frame(w, b, t0, config)
    frames = [frame]
    if on_frame:
        on_frame(frame)
    extra = _Extrapolator(math.lcm(w.cycle_length, b.cycle_length))
    streak = 0

    def verdict_for(fr: Frame) -> Degenerated | None:
        nonlocal streak
        reason = _degeneracy(fr, config)
        if reason:
            return Degenerated(fr.index, reason)
        sep = fr.separation()
        got = extra.push(sep)
        if (config.extrapolate and got is not None and fr.t < 1.0 and got[1] < config.max_ratio
                and abs(got[0]) <= max(config.collision_tol, config.relative_limit * sep)):
            streak += 1
            if streak >= config.persist:
                return Degenerated(fr.index, "critical-value collision (extrapolated to t = 0)")
        else:
            streak = 0
        return None

    v = verdict_for(frame)
    if v:
        return Movie(frames, v)
    while frame.t > t_min:
        if len(frames) > config.max_frames:
            return Movie(frames, BudgetExhausted(len(frames)))
        try:
            frame = step_frame(frame, w, b, config)
        except StepError as exc:
            return Movie(frames, Degenerated(frame.index + 1, f"step failure: {exc}"))
        frames.append(frame)
        if on_frame:
            on_frame(frame)
        v = verdict_for(frame)
        if v:
            return Movie(frames, v)
    if len(frames) >= 2:
        a, z = frames[-2], frames[-1]
        drift = max(chordal(a.v_w, z.v_w), chordal(a.v_b, z.v_b))
        if drift > config.cauchy_tol:
            return Movie(frames, BudgetExhausted(len(frames), f"not settled at t_min (drift {drift:.3g})"))
    return Movie(frames, Converged(frame.map, frame.index))
