"""Green's functions, Böttcher coordinates and the slow-mating gluing."""
from __future__ import annotations

import cmath
import math

import numpy as np

from .. import kernels

BIG = 1e8
MAX_ITER = 1000


class SlowMateError(ArithmeticError):
    pass


class DomainError(SlowMateError, ValueError):
    pass


class NumericError(SlowMateError):
    def __init__(self, message: str, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


def escape_radius(c: complex) -> float:
    return max(4.0, abs(c) + 2.0)


def green_potential(c: complex, z: complex, max_iter: int = MAX_ITER, with_flag: bool = False):
    """``G(z) = lim 2**-n log|P^n(z)|`` for ``P = z**2 + c``.

    Escaped orbits are pushed out to ``|z| > 1e8`` before the tail formula
    ``log|z| + log|1 + c/z**2| / 2`` is applied, so the truncation error is
    far below double precision. Orbits still inside the escape radius after
    ``max_iter`` steps give 0 (and ``bounded=True`` when ``with_flag``).
    """
    r = escape_radius(c)
    n = 0
    while abs(z) <= r:
        if n >= max_iter:
            return (0.0, True) if with_flag else 0.0
        z = z * z + c
        n += 1
    while abs(z) < BIG:
        z = z * z + c
        n += 1
    g = math.ldexp(math.log(abs(z)) + 0.5 * math.log(abs(1.0 + c / (z * z))), -n)
    return (g, False) if with_flag else g


def _escape_orbit(c: complex, z: complex, max_iter: int) -> list[complex]:
    r = escape_radius(c)
    orbit = [z]
    seen = abs(z) > r
    while abs(z) < BIG:
        if len(orbit) > max_iter and not seen:
            raise DomainError(f"{z!r} does not escape under z^2 + {c!r}: inside the filled Julia set")
        z = z * z + c
        orbit.append(z)
        seen = seen or abs(z) > r
    return orbit


def boettcher_inverse(c: complex, z: complex, max_iter: int = MAX_ITER, derivative: bool = False):
    """``w = phi^-1(z)`` with ``|w| = exp(G(z)) > 1``.

    The orbit is followed out to ``|z_n| > 1e8``, where ``phi^-1(z_n) = z_n``
    to double precision, and then square roots are taken back down the
    orbit, each time keeping the root on the same side as ``z_k`` (the
    branch that is continuous from infinity, where ``phi^-1(z)/z -> 1``).
    With ``derivative`` the pair ``(w, dw/dz)`` is returned.
    """
    orbit = _escape_orbit(c, complex(z), max_iter)
    w = orbit[-1]
    for zk in reversed(orbit[:-1]):
        r = cmath.sqrt(w)
        w = -r if (r * zk.conjugate()).real < 0 else r
    if not derivative:
        return w
    # dlog(w)/dz = lim 2^-n z_n'/z_n, and z_n'/2^n = prod z_k
    d = 1.0 + 0j
    for zk in orbit[:-1]:
        d *= zk
    return w, w * d / orbit[-1]


def boettcher_forward(c: complex, w: complex, margin: float = 1e-3, tol: float = 1e-9, max_newton: int = 60) -> complex:
    """``z = phi(w)`` by Newton on ``P^n(z) = phi(w**(2**n))``.

    ``n`` is chosen so that ``|w**(2**n)| > 1e8``, where ``phi(W) = W - c/(2W)``
    to double precision. This is the same equation as ``phi^-1(z) = w``
    raised to the power ``2**n``, but needs no branch choice: the solution is
    followed by continuation from a large radius down the line through ``w``
    in steps of a quarter potential-halving.
    """
    w = complex(w)
    rw = abs(w)
    if c == 0 and rw >= 1.0:
        return w  # phi is the identity for z**2
    if rw <= 1.0 + margin:
        raise DomainError(f"|w| = {rw} is not above 1 + {margin}")
    g_target = math.log(rw)
    arg = cmath.phase(w)
    g_top = max(g_target, math.log(4.0 * escape_radius(c)))
    steps = max(1, math.ceil(4 * math.log2(g_top / g_target)))
    z = cmath.exp(g_top + 1j * arg)
    residual = math.inf
    for s in range(steps + 1):
        g = g_top * (g_target / g_top) ** (s / steps)
        z, residual = _ray_newton(c, g, arg, z, max_newton)
        if not residual < 1e-6:
            raise NumericError("Böttcher inversion failed to converge", w=w, stage=s, z=z, residual=residual)
    if residual > tol:
        raise NumericError("Böttcher inversion residual too large", w=w, z=z, residual=residual)
    return z


def _ray_newton(c: complex, g: float, arg: float, z: complex, max_newton: int) -> tuple[complex, float]:
    """Solve ``P^n(z) = phi(W)``, ``W = exp(2**n (g + i arg))``; residual is relative, in ``w``."""
    n = max(0, math.ceil(math.log2(math.log(BIG) / g)))
    W = cmath.exp(math.ldexp(g, n) + 1j * math.fmod(math.ldexp(arg, n), 2 * math.pi))
    target = W - c / (2 * W)
    res = math.inf
    for _ in range(max_newton):
        f, df = z, 1.0 + 0j
        for _ in range(n):
            f, df = f * f + c, 2 * f * df
        # |dw/w| = |dW/W| / 2**n
        res = math.ldexp(abs(f - target) / abs(W), -n)
        if res < 1e-15:
            break
        z = z - (f - target) / df
    return z, res


def glue_point(c_w: complex, c_b: complex, lam: complex, z_w: complex) -> complex:
    """Black point glued to ``z_w``: ``phi_w^-1(z_w) * phi_b^-1(z_b) = lam**2``.

    The outer edge ``G_w = 2t`` is allowed; it glues onto the black Julia set.
    """
    t = math.log(abs(lam))
    g = green_potential(c_w, z_w)
    if not 0.0 < g <= 2.0 * t * (1 + 1e-15):
        raise DomainError(f"G_w(z_w) = {g} is outside the gluing annulus (0, {2 * t})")
    return boettcher_forward(c_b, lam * lam / boettcher_inverse(c_w, z_w))


def green_grid(c: complex, z: np.ndarray, max_iter: int = MAX_ITER) -> tuple[np.ndarray, np.ndarray]:
    """Potentials and a mask that is True where the orbit stayed bounded."""
    z = np.asarray(z, dtype=np.complex128)
    g, flag = kernels.green_batch(complex(c), z.ravel(), escape_radius(c), max_iter)
    return np.asarray(g).reshape(z.shape), np.asarray(flag).reshape(z.shape).astype(bool)


def boettcher_grid(c: complex, z: np.ndarray, max_iter: int = MAX_ITER) -> tuple[np.ndarray, np.ndarray]:
    """``phi^-1`` on an array (NaN inside) and the bounded-orbit mask."""
    z = np.asarray(z, dtype=np.complex128)
    w, status = kernels.boettcher_batch(complex(c), z.ravel(), escape_radius(c), max_iter)
    return np.asarray(w).reshape(z.shape), np.asarray(status).reshape(z.shape).astype(bool)


def external_ray_point(c: complex, theta, potential: float) -> complex:
    """The point of external ray ``theta`` (in turns) at Green potential ``potential``."""
    return boettcher_forward(c, cmath.exp(potential + 2j * math.pi * float(theta)), margin=potential / 2)


def ray_landing_point(c: complex, theta, potential: float = 1e-2, tol: float = 1e-13) -> complex:
    """Landing point of a rational external ray of a post-critically finite ``z**2 + c``.

    The ray is traced down to ``potential``; its periodic image is then
    polished by Newton on ``P^p(z) = z`` (the landing point is a repelling
    periodic point) and pulled back along the preperiodic part, picking at
    each stage the square root nearest the traced ray.
    """
    from ..angles import Angle, orbit_type

    a = theta if isinstance(theta, Angle) else Angle.from_fraction(theta)
    pre, per = orbit_type(a)
    z = external_ray_point(c, a.as_fraction(), potential)
    trail = [z]
    for _ in range(pre):
        trail.append(trail[-1] ** 2 + c)
    y = trail[-1]
    for _ in range(100):
        f, df = y, 1.0 + 0j
        for _ in range(per):
            f, df = f * f + c, 2 * f * df
        step = (f - y) / (df - 1)
        y -= step
        if abs(step) < tol * max(1.0, abs(y)):
            break
    else:
        raise NumericError("landing point Newton did not converge", theta=str(a), y=y)
    for k in range(pre - 1, -1, -1):
        r = cmath.sqrt(y - c)
        y = r if abs(r - trail[k]) <= abs(-r - trail[k]) else -r
    return y
