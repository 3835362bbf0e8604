import os
import subprocess
import sys

import numpy as np
import pytest

from mating_forge import _kernels_py, kernels
from mating_forge.slowmate.rational import map_from_critical_values
from mating_forge.slowmate.sphere import xyz_array

from conftest import RABBIT

rng = np.random.default_rng(3)
Z = rng.uniform(-3, 3, 4000) + 1j * rng.uniform(-3, 3, 4000)

compiled = pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled extension not built")


@compiled
@pytest.mark.parametrize("c", [-1 + 0j, RABBIT, 1j])
def test_green_and_boettcher_agree(c):
    g1, b1 = kernels.green_batch(c, Z, 4.0, 1000)
    g2, b2 = _kernels_py.green_batch(c, Z, 4.0, 1000)
    assert np.array_equal(np.asarray(b1), b2)
    assert np.max(np.abs(np.asarray(g1) - g2)) < 1e-15
    w1, s1 = kernels.boettcher_batch(c, Z, 4.0, 1000)
    w2, s2 = _kernels_py.boettcher_batch(c, Z, 4.0, 1000)
    assert np.array_equal(np.asarray(s1), s2)
    ok = np.asarray(s1) == 0
    assert np.max(np.abs(np.asarray(w1)[ok] - w2[ok]) / np.abs(w2[ok])) < 1e-15


@compiled
def test_render_labels_agree():
    f = map_from_critical_values(-0.6 + 0.1j, 3 + 1j)
    white = xyz_array([f(0j) * 0 + 0j])
    black = xyz_array([complex("inf")])
    a = np.asarray(kernels.render_labels(f.coeffs, Z, white, black, 100, 1e-3))
    b = _kernels_py.render_labels(f.coeffs, Z, white, black, 100, 1e-3)
    assert np.array_equal(a, b)


def test_pure_switch():
    env = dict(os.environ, MATING_FORGE_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from mating_forge import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_worker_count(monkeypatch):
    monkeypatch.setenv("MATING_FORGE_THREADS", "3")
    assert kernels.worker_count() == 3
    monkeypatch.delenv("MATING_FORGE_THREADS")
    assert kernels.worker_count() >= 1
