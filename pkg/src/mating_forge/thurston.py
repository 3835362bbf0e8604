"""Thurston matrices and orbifold data for finite branched-covering portraits."""
from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Mapping, Sequence

import numpy as np

INFINITY = math.inf


class ThurstonError(ValueError):
    pass


class PortraitError(ThurstonError):
    pass


class PullbackError(ThurstonError):
    pass


class NonHyperbolicOrbifoldWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Portrait:
    """Finite dynamics on marked points with local degrees.

    ``degree`` is the global degree; unmarked points are implicitly regular.
    """

    points: tuple
    next: Mapping[Hashable, Hashable]
    local_degree: Mapping[Hashable, int]
    degree: int = 2

    def __post_init__(self):
        pts = set(self.points)
        if len(pts) != len(self.points):
            raise PortraitError("duplicate marked points")
        for x in self.points:
            if x not in self.next:
                raise PortraitError(f"no image for {x!r}")
            if self.next[x] not in pts:
                raise PortraitError(f"portrait not forward closed: {x!r} -> {self.next[x]!r}")
            if self.local_degree.get(x, 1) < 1:
                raise PortraitError(f"bad local degree at {x!r}")
        budget = sum(self.local_degree.get(x, 1) - 1 for x in self.points)
        if budget > 2 * self.degree - 2:
            raise PortraitError(f"Riemann-Hurwitz violated: {budget} > {2 * self.degree - 2}")

    def deg(self, x) -> int:
        return self.local_degree.get(x, 1)

    def critical_points(self) -> list:
        return [x for x in self.points if self.deg(x) > 1]

    def postcritical_set(self) -> list:
        out = []
        for c in self.critical_points():
            y = self.next[c]
            while y not in out:
                out.append(y)
                y = self.next[y]
        return [x for x in self.points if x in out]

    @classmethod
    def from_json(cls, data: dict) -> "Portrait":
        pts = tuple(data["points"])
        return cls(pts, dict(data["next"]), {k: int(v) for k, v in data.get("local_degree", {}).items()}, int(data.get("degree", 2)))

    @classmethod
    def quadratic(cls, orbit_next: Sequence[int]) -> "Portrait":
        """Portrait of ``z**2 + c`` whose critical orbit is ``0 -> 1 -> ... `` with
        ``orbit_next[i]`` the index of the image of orbit point ``i``; ``'inf'`` is
        added as a fixed critical point."""
        pts = tuple(range(len(orbit_next))) + ("inf",)
        nxt = {i: j for i, j in enumerate(orbit_next)}
        nxt["inf"] = "inf"
        return cls(pts, nxt, {0: 2, "inf": 2})


@dataclass(frozen=True)
class OrbifoldData:
    weights: Mapping[Hashable, float | int]
    chi: Fraction | float

    def is_hyperbolic(self) -> bool:
        return self.chi < 0


def _periodic_critical(p: Portrait) -> set:
    """Points on cycles that contain a critical point."""
    out = set()
    for x in p.points:
        cyc = [x]
        y = p.next[x]
        while y != x and len(cyc) <= len(p.points):
            cyc.append(y)
            y = p.next[y]
        if y == x and any(p.deg(z) > 1 for z in cyc):
            out.update(cyc)
    return out


def orbifold_data(p: Portrait) -> OrbifoldData:
    """Weights are the lcm of local degrees of iterates over all preimages.

    Along a cycle through a critical point the local degree of ``F**n``
    grows without bound, so those points (and nothing else, the cycle being
    forward invariant) get weight infinity. Elsewhere the divisibility
    constraint ``deg(x) * w(x) | w(next(x))`` is pushed forward with lcm
    until it stabilises.
    """
    inf = _periodic_critical(p)
    w: dict = {x: (INFINITY if x in inf else 1) for x in p.points}
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        if rounds > 4 * len(p.points) + 4:  # pragma: no cover - finite weights stabilise
            raise ThurstonError("weight propagation did not stabilise")
        for x in p.points:
            y = p.next[x]
            if w[y] == INFINITY:
                continue
            if w[x] == INFINITY:
                w[y] = INFINITY
                changed = True
                continue
            need = math.lcm(int(w[y]), p.deg(x) * int(w[x]))
            if need != w[y]:
                w[y] = need
                changed = True
    chi: Fraction | float = Fraction(2)
    for x in p.postcritical_set():
        chi -= 1 if w[x] == INFINITY else (1 - Fraction(1, int(w[x])))
    if chi >= 0:
        warnings.warn(f"orbifold is not hyperbolic (chi = {chi})", NonHyperbolicOrbifoldWarning, stacklevel=2)
    return OrbifoldData(w, chi)


@dataclass(frozen=True)
class ThurstonMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def as_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries], dtype=float)

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]


PERIPHERAL = None


def thurston_matrix(pullback: Sequence[Sequence[tuple]], n: int | None = None) -> ThurstonMatrix:
    """Build ``A[i][j] = sum 1/k`` over preimage components of curve ``j``.

    ``pullback[j]`` lists ``(target, k)`` for each component of the preimage
    of curve ``j``: ``target`` is the index of the curve it is homotopic to,
    or ``None`` when it is peripheral or inessential (dropped).
    """
    n = len(pullback) if n is None else n
    a = [[Fraction(0)] * n for _ in range(n)]
    for j, comps in enumerate(pullback):
        for comp in comps:
            try:
                target, k = comp
            except (TypeError, ValueError):
                raise PullbackError(f"malformed component {comp!r} for curve {j}") from None
            if isinstance(k, bool) or not isinstance(k, int) or k < 1:
                raise PullbackError(f"degree must be a positive integer, got {k!r}")
            if target is PERIPHERAL:
                continue
            if isinstance(target, bool) or not isinstance(target, int) or not 0 <= target < n:
                raise PullbackError(f"target {target!r} out of range for curve {j}")
            a[target][j] += Fraction(1, k)
    return ThurstonMatrix(tuple(tuple(r) for r in a))


def pullback_from_json(data) -> list[list[tuple]]:
    """Accepts ``{"curves": [{"preimages": [[target, degree], ...]}, ...]}`` or the bare list;
    a component may also be ``{"target": i, "degree": k}``. ``null`` targets are peripheral."""
    try:
        curves = data["curves"] if isinstance(data, dict) else data
        out = []
        for entry in curves:
            comps = entry["preimages"] if isinstance(entry, dict) else entry
            row = []
            for c in comps:
                pair = (c["target"], c["degree"]) if isinstance(c, dict) else tuple(c)
                if len(pair) != 2:
                    raise PullbackError(f"component {c!r} is not a (target, degree) pair")
                row.append(pair)
            out.append(row)
    except (KeyError, TypeError) as exc:
        raise PullbackError(f"malformed pullback data: {exc}") from exc
    return out


def _cycle_certificate(a: Sequence[Sequence[Fraction]]) -> list[int] | None:
    """A simple cycle in the support whose entry product is >= 1.

    Any such cycle forces spectral radius >= 1 exactly (the product's
    geometric mean bounds the Perron root from below).
    """
    n = len(a)
    for length in range(1, n + 1):
        for cyc in itertools.permutations(range(n), length):
            if cyc[0] != min(cyc):
                continue
            prod = Fraction(1)
            for s, t in zip(cyc, cyc[1:] + cyc[:1]):
                prod *= a[t][s]
                if prod == 0:
                    break
            if prod >= 1:
                return list(cyc)
    return None


def leading_eigenvalue(A: ThurstonMatrix | Sequence[Sequence], tol: float = 1e-12, max_iter: int = 10_000) -> tuple[float, bool]:
    """Spectral radius and obstruction flag (radius >= 1 - tol).

    Power iteration runs on ``A + I``, which has the same Perron vector and
    no competing eigenvalue of equal modulus, so periodic (imprimitive)
    matrices converge too. Small matrices that fail to settle fall back to
    the roots of the characteristic polynomial.
    """
    if not isinstance(A, ThurstonMatrix):
        A = ThurstonMatrix(tuple(tuple(Fraction(x) for x in row) for row in A))
    exact = A.entries
    m = A.as_array()
    n = m.shape[0]
    if n == 0:
        return 0.0, False
    if (m < 0).any():
        raise ThurstonError("Thurston matrices are nonnegative")
    rho = _power_radius(m, max_iter)
    if rho is None:
        rho = _charpoly_radius(m) if n <= 4 else float(max(abs(np.linalg.eigvals(m))))
    if n <= 8 and _cycle_certificate(exact) is not None:
        return rho, True
    return rho, rho >= 1 - tol


def _power_radius(m: np.ndarray, max_iter: int) -> float | None:
    n = m.shape[0]
    shifted = m + np.eye(n)
    v = np.ones(n) / n
    prev = None
    for _ in range(max_iter):
        w = shifted @ v
        s = w.sum()
        if s == 0:
            return 0.0
        v = w / s
        est = s - 1.0  # v is normalised to unit sum
        if prev is not None and abs(est - prev) <= 1e-15 * max(1.0, abs(est)):
            return max(float(est), 0.0)
        prev = est
    return None


def _charpoly_radius(m: np.ndarray) -> float:
    coeffs = np.poly(m)
    return float(max(abs(np.roots(coeffs)))) if len(coeffs) > 1 else 0.0
