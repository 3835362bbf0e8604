"""Points of the Riemann sphere as Python complex numbers, with ``INF`` for infinity."""
from __future__ import annotations

import math

import numpy as np

INF = complex(math.inf, 0.0)


def is_inf(z: complex) -> bool:
    return math.isinf(z.real) or math.isinf(z.imag)


def chordal(z: complex, w: complex) -> float:
    """Chordal distance on the unit sphere; ranges over [0, 2]."""
    zi, wi = is_inf(z), is_inf(w)
    if zi and wi:
        return 0.0
    if zi:
        return 2.0 / math.hypot(1.0, abs(w))
    if wi:
        return 2.0 / math.hypot(1.0, abs(z))
    return 2.0 * abs(z - w) / math.hypot(1.0, abs(z)) / math.hypot(1.0, abs(w))


def to_xyz(z: complex) -> tuple[float, float, float]:
    """Inverse stereographic projection onto the unit sphere (infinity at the north pole)."""
    if is_inf(z):
        return (0.0, 0.0, 1.0)
    r2 = z.real * z.real + z.imag * z.imag
    s = 1.0 + r2
    return (2.0 * z.real / s, 2.0 * z.imag / s, (r2 - 1.0) / s)


def xyz_array(points) -> np.ndarray:
    pts = list(points)
    return np.array([to_xyz(complex(p)) for p in pts], dtype=float).reshape(len(pts), 3)


def chordal_array(z: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Elementwise chordal distance for finite complex arrays."""
    num = 2.0 * np.abs(z - w)
    return num / np.sqrt((1.0 + np.abs(z) ** 2) * (1.0 + np.abs(w) ** 2))


def parse_complex(text: str) -> complex:
    """Read ``"re,im"``, a bare real, or ``"inf"``."""
    s = text.strip()
    if s.lower() in {"inf", "infinity", "oo"}:
        return INF
    if "," in s:
        re_s, im_s = s.split(",", 1)
        return complex(float(re_s), float(im_s))
    return complex(float(s), 0.0)


def format_complex(z: complex) -> list | str:
    """JSON form: ``[re, im]`` or ``"inf"``."""
    if is_inf(z):
        return "inf"
    return [z.real, z.imag]
