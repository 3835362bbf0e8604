"""NumPy implementations of the batch kernels (used when the extension is not built).

Signatures mirror ``_kernels.pyx`` exactly; both are exercised against each
other in the test suite.
"""
from __future__ import annotations

import numpy as np

BIG = 1e8


def green_batch(c: complex, z: np.ndarray, esc: float, max_iter: int) -> tuple[np.ndarray, np.ndarray]:
    """Green's function on an array; second output is 1 where the budget ran out."""
    z = np.asarray(z, dtype=np.complex128).ravel().copy()
    n = z.size
    out = np.zeros(n, dtype=np.float64)
    bounded = np.zeros(n, dtype=np.int8)
    steps = np.zeros(n, dtype=np.int64)
    active = np.abs(z) <= esc
    for _ in range(max_iter):
        if not active.any():
            break
        z[active] = z[active] * z[active] + c
        steps[active] += 1
        active &= np.abs(z) <= esc
    bounded[active] = 1
    # push escaped orbits far out so the tail term is negligible
    live = ~active
    far = live & (np.abs(z) < BIG)
    while far.any():
        z[far] = z[far] * z[far] + c
        steps[far] += 1
        far &= np.abs(z) < BIG
    zl = z[live]
    g = np.log(np.abs(zl)) + 0.5 * np.log(np.abs(1.0 + c / (zl * zl)))
    out[live] = np.ldexp(g, -steps[live].astype(np.int32))
    return out, bounded


def boettcher_batch(c: complex, z: np.ndarray, esc: float, max_iter: int) -> tuple[np.ndarray, np.ndarray]:
    """Inverse Böttcher map on an array; status 1 marks points that never escaped."""
    z0 = np.asarray(z, dtype=np.complex128).ravel()
    n = z0.size
    orbit = [z0.copy()]
    cur = z0.copy()
    done = np.abs(cur) >= BIG
    escaped = np.abs(cur) > esc
    for _ in range(max_iter + 64):
        if done.all():
            break
        nxt = np.where(done, cur, cur * cur + c)
        orbit.append(nxt)
        cur = nxt
        escaped |= np.abs(cur) > esc
        done |= np.abs(cur) >= BIG
        if len(orbit) > max_iter and not escaped[~done].any():
            break
    status = (~done).astype(np.int8)
    w = cur.copy()
    for k in range(len(orbit) - 2, -1, -1):
        zk = orbit[k]
        moved = orbit[k + 1] != zk
        r = np.sqrt(w)
        flip = (r * np.conj(zk)).real < 0
        r = np.where(flip, -r, r)
        w = np.where(moved, r, w)
    w[status == 1] = np.nan
    return w, status


def render_labels(coeffs: np.ndarray, z: np.ndarray, white: np.ndarray, black: np.ndarray,
                  max_iter: int, tol: float) -> np.ndarray:
    """Label 1 for the white basin, 2 for the black basin, 0 otherwise.

    ``white`` and ``black`` are (k, 3) arrays of target points on the unit sphere.
    """
    a, b, g, d = (complex(x) for x in coeffs)
    z = np.asarray(z, dtype=np.complex128).ravel().copy()
    n = z.size
    at_inf = np.zeros(n, dtype=bool)
    labels = np.zeros(n, dtype=np.uint8)
    todo = np.ones(n, dtype=bool)
    for it in range(max_iter + 1):
        xyz = _xyz(z, at_inf)
        for targets, lab in ((white, 1), (black, 2)):
            if len(targets) == 0:
                continue
            dist = np.sqrt(((xyz[:, None, :] - targets[None, :, :]) ** 2).sum(axis=2)).min(axis=1)
            hit = todo & (dist < tol)
            labels[hit] = lab
            todo &= ~hit
        if it == max_iter or not todo.any():
            break
        u = z * z
        num = np.where(at_inf, a, a * u + b)
        den = np.where(at_inf, g, g * u + d)
        zero = den == 0
        with np.errstate(divide="ignore", invalid="ignore"):
            nz = num / np.where(zero, 1.0, den)
        big = zero | ~np.isfinite(nz) | (np.abs(nz) > 1e150)
        at_inf = big
        z = np.where(big, 0.0, nz)
    return labels


def _xyz(z: np.ndarray, at_inf: np.ndarray) -> np.ndarray:
    r2 = z.real ** 2 + z.imag ** 2
    s = 1.0 + r2
    out = np.empty((z.size, 3))
    out[:, 0] = 2 * z.real / s
    out[:, 1] = 2 * z.imag / s
    out[:, 2] = (r2 - 1.0) / s
    out[at_inf] = (0.0, 0.0, 1.0)
    return out
