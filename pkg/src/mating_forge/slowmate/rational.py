"""Quadratic rational maps with critical points 0 and infinity, normalised by R(1) = 1."""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .boettcher import SlowMateError
from .sphere import INF, chordal, chordal_array, is_inf


class DegenerateMapError(SlowMateError):
    pass


def _hom(v: complex) -> tuple[complex, complex]:
    return (1.0 + 0j, 0j) if is_inf(v) else (complex(v), 1.0 + 0j)


@dataclass(frozen=True)
class QuadMap:
    """``R(z) = (a z**2 + b) / (g z**2 + d)``, coefficients scaled to max modulus 1."""

    a: complex
    b: complex
    g: complex
    d: complex

    @property
    def coeffs(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.g, self.d)

    def det(self) -> complex:
        return self.a * self.d - self.b * self.g

    def conditioning(self) -> float:
        """``max|coeff|**2 / |det|``; infinite for a degenerate map."""
        m = max(abs(x) for x in self.coeffs)
        dt = abs(self.det())
        return float("inf") if dt == 0 else m * m / dt

    def __call__(self, z: complex) -> complex:
        if is_inf(z):
            num, den = self.a, self.g
        else:
            u = z * z
            num, den = self.a * u + self.b, self.g * u + self.d
        if den == 0:
            return INF
        return num / den

    def critical_values(self) -> tuple[complex, complex]:
        return self(0j), self(INF)

    def preimages(self, y: complex) -> tuple[complex, complex]:
        """Both solutions of ``R(z) = y`` (equal when ``y`` is a critical value)."""
        if is_inf(y):
            n, m = -self.d, self.g
        else:
            n, m = self.b - self.d * y, self.g * y - self.a
        if m == 0:
            return INF, INF
        r = cmath.sqrt(n / m)
        return r, -r

    def apply_array(self, z: np.ndarray) -> np.ndarray:
        u = z * z
        with np.errstate(divide="ignore", invalid="ignore"):
            return (self.a * u + self.b) / (self.g * u + self.d)

    def to_json(self) -> list[list[float]]:
        return [[x.real, x.imag] for x in self.coeffs]


def map_from_critical_values(v_w: complex, v_b: complex) -> QuadMap:
    """The degree-2 map with ``R(0) = v_w``, ``R(inf) = v_b`` and ``R(1) = 1``."""
    if chordal(v_w, v_b) == 0.0:
        raise DegenerateMapError("critical values collide")
    if (not is_inf(v_w) and v_w == 1) or (not is_inf(v_b) and v_b == 1):
        # 1 would have three preimages counted with multiplicity
        raise DegenerateMapError("a critical value sits at the fixed normalisation point 1")
    a0, a1 = _hom(v_w)
    b0, b1 = _hom(v_b)
    r = a1 - a0
    s = b0 - b1
    c = (r * b0, s * a0, r * b1, s * a1)
    m = max(abs(x) for x in c)
    return QuadMap(*(x / m for x in c))


SQUARE = QuadMap(1 + 0j, 0j, 0j, 1 + 0j)


def grid(n: int = 64, radius: float = 2.0) -> np.ndarray:
    xs = np.linspace(-radius, radius, n)
    return xs[None, :] + 1j * xs[:, None]


def sup_distance(f: QuadMap, g: QuadMap = SQUARE, n: int = 64, radius: float = 2.0) -> float:
    """Spherical sup-distance of two maps on an ``n x n`` grid over ``[-radius, radius]**2``."""
    z = grid(n, radius).ravel()
    fz, gz = f.apply_array(z), g.apply_array(z)
    out = 0.0
    fin = np.isfinite(fz) & np.isfinite(gz)
    if fin.any():
        out = float(chordal_array(fz[fin], gz[fin]).max())
    for x, y in zip(fz[~fin], gz[~fin]):
        out = max(out, chordal(complex(x) if np.isfinite(x) else INF, complex(y) if np.isfinite(y) else INF))
    return out
