"""The stretch maps zeta_Lambda(z) = z |z|**(Lambda - 1) and their Beltrami coefficients."""
from __future__ import annotations

import cmath
import math

from .boettcher import DomainError


def zeta_map(Lambda: complex, z: complex) -> complex:
    if complex(Lambda).real <= 0:
        raise DomainError("Re(Lambda) must be positive")
    if z == 0:
        return 0j
    return z * cmath.exp((Lambda - 1) * math.log(abs(z)))


def beltrami_mu(Lambda: complex, z: complex) -> complex:
    """``(Lambda - 1)/(Lambda + 1) * z / conj(z)``."""
    if z == 0:
        raise DomainError("mu is undefined at 0")
    z = complex(z)
    return (Lambda - 1) / (Lambda + 1) * z / z.conjugate()


def beltrami_estimate(f, z: complex, h: float = 1e-5) -> complex:
    """``f_zbar / f_z`` from central differences."""
    fx = (f(z + h) - f(z - h)) / (2 * h)
    fy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
    fz = (fx - 1j * fy) / 2
    fzb = (fx + 1j * fy) / 2
    return fzb / fz
