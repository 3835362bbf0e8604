import math
import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mating_forge.thurston import (INFINITY, NonHyperbolicOrbifoldWarning, Portrait, PortraitError, PullbackError,
                                   ThurstonMatrix, leading_eigenvalue, orbifold_data, pullback_from_json,
                                   thurston_matrix)

F = Fraction


def test_matrix_examples():
    assert thurston_matrix([[(0, 2)]]).entries == ((F(1, 2),),)
    assert thurston_matrix([[(0, 1)]]).entries == ((F(1),),)
    # curve 0 pulls back to curve 1 with degree 1, curve 1 to curve 0 with degree 2
    assert thurston_matrix([[(1, 1)], [(0, 2)]]).entries == ((0, F(1, 2)), (F(1), 0))


def test_matrix_sums_and_peripheral():
    a = thurston_matrix([[(0, 2), (0, 2), (None, 1)]])
    assert a.entries == ((F(1),),)
    with pytest.raises(PullbackError):
        thurston_matrix([[(0, 0)]])
    with pytest.raises(PullbackError):
        thurston_matrix([[(3, 1)]])


def test_pullback_json_forms():
    doc = {"curves": [{"preimages": [[1, 1]]}, {"preimages": [[0, 2], [None, 1]]}]}
    assert thurston_matrix(pullback_from_json(doc)).entries == ((0, F(1, 2)), (F(1), 0))
    with pytest.raises(PullbackError):
        pullback_from_json({"curves": [{"preimages": [["x"]]}]})
    with pytest.raises(PullbackError):
        pullback_from_json({"curves": [{"preimages": [{"target": 0}]}]})


@pytest.mark.parametrize("rows,value,obstructed", [
    ([[1]], 1.0, True),
    ([[F(1, 2)]], 0.5, False),
    ([[0, F(1, 2)], [1, 0]], 1 / math.sqrt(2), False),
    ([[0, 1], [1, 0]], 1.0, True),
    ([[0, 0], [0, 0]], 0.0, False),
])
def test_leading_eigenvalue(rows, value, obstructed):
    rho, obs = leading_eigenvalue(rows)
    assert abs(rho - value) < 1e-12 and obs is obstructed


def random_matrix(draw, n):
    return [[F(draw(st.integers(0, 3)), draw(st.integers(1, 4))) for _ in range(n)] for _ in range(n)]


@st.composite
def matrices(draw):
    n = draw(st.integers(1, 6))
    return random_matrix(draw, n), draw(st.permutations(range(n)))


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_eigenvalue_matches_numpy_and_permutation(data):
    rows, perm = data
    rho, obs = leading_eigenvalue(rows)
    arr = np.array(rows, dtype=float)
    assert abs(rho - max(abs(np.linalg.eigvals(arr)))) < 1e-8 * max(1, rho)
    permuted = [[rows[perm[i]][perm[j]] for j in range(len(perm))] for i in range(len(perm))]
    rho2, obs2 = leading_eigenvalue(permuted)
    assert abs(rho - rho2) < 1e-9 * max(1, rho) and obs == obs2


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_degree_scaling(n, m, data):
    pull = [[(data.draw(st.integers(0, n - 1)), data.draw(st.integers(1, 3))) for _ in range(data.draw(st.integers(1, 3)))]
            for _ in range(n)]
    a = thurston_matrix(pull)
    b = thurston_matrix([[(i, k * m) for i, k in comps] for comps in pull])
    assert all(b.entries[i][j] * m == a.entries[i][j] for i in range(n) for j in range(n))
    assert abs(leading_eigenvalue(b)[0] * m - leading_eigenvalue(a)[0]) < 1e-9


PORTRAITS = {
    "z2": Portrait((0, "inf"), {0: 0, "inf": "inf"}, {0: 2, "inf": 2}),
    "basilica": Portrait.quadratic([1, 0]),
    "rabbit": Portrait.quadratic([1, 2, 0]),
    "airplane": Portrait.quadratic([1, 2, 0]),
    "c=i": Portrait.quadratic([1, 2, 3, 2]),
    "c=-2": Portrait.quadratic([1, 2, 2]),
}


def test_orbifold_values():
    with pytest.warns(NonHyperbolicOrbifoldWarning):
        z2 = orbifold_data(PORTRAITS["z2"])
    assert z2.chi == 0 and set(z2.weights.values()) == {INFINITY}
    # every point of a critical cycle is forced to weight infinity
    assert orbifold_data(PORTRAITS["basilica"]).chi == -1
    assert orbifold_data(PORTRAITS["rabbit"]).chi == -2
    # strictly preperiodic: no critical cycle, so every finite postcritical weight is 2
    ci = orbifold_data(PORTRAITS["c=i"])
    assert [ci.weights[k] for k in (0, 1, 2, 3)] == [1, 2, 2, 2] and ci.weights["inf"] == INFINITY
    assert ci.chi == F(-1, 2) and ci.is_hyperbolic()


def test_chebyshev_is_parabolic():
    with pytest.warns(NonHyperbolicOrbifoldWarning):
        d = orbifold_data(PORTRAITS["c=-2"])
    assert d.chi == 0 and d.weights[1] == 2 and d.weights[2] == 2


@pytest.mark.parametrize("name", sorted(PORTRAITS))
def test_weights_are_minimal_and_consistent(name):
    p = PORTRAITS[name]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonHyperbolicOrbifoldWarning)
        w = orbifold_data(p).weights

    def ok(wt):
        for x in p.points:
            a, b = wt[x], wt[p.next[x]]
            if a != INFINITY and b != INFINITY and b % (p.deg(x) * a):
                return False
            if a == INFINITY and b != INFINITY:
                return False
        return all(wt[x] >= 2 for x in p.postcritical_set())

    assert ok(w)
    for x, v in w.items():
        if v != INFINITY:
            for smaller in range(1, v):
                assert not ok({**w, x: smaller})


def test_portrait_validation():
    with pytest.raises(PortraitError):
        Portrait((0,), {0: 1}, {0: 2})
    with pytest.raises(PortraitError):
        Portrait((0, 1), {0: 1, 1: 0}, {0: 2, 1: 2, }, degree=1)
    with pytest.raises(PortraitError):
        Portrait((0, 1), {0: 1, 1: 0}, {0: 0})
    p = Portrait.from_json({"points": ["a", "b"], "next": {"a": "b", "b": "b"}, "local_degree": {"a": 2, "b": 2}})
    assert p.critical_points() == ["a", "b"] and p.postcritical_set() == ["b"]


def test_matrix_json():
    m = ThurstonMatrix(((F(1, 2), F(0)), (F(1), F(3, 4))))
    assert m.n == 2 and m.to_json() == [["1/2", "0"], ["1", "3/4"]]
