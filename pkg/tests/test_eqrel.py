import itertools

import pytest
from hypothesis import given, strategies as st

from mating_forge.eqrel import (EqRelError, GroundMismatchError, InvarianceError, Partition, UnionFind,
                                UnknownElementError, all_partitions, generate, invariance_witness, is_invariant,
                                join, meet, quotient_dynamics, saturate)

from conftest import set_partitions

BELL = [1, 1, 2, 5, 15, 52]


def P(ground, blocks):
    return Partition(ground, blocks)


def oracle_partitions(ground):
    return [P(ground, b) for b in set_partitions(ground)]


def relation(p):
    return {(x, y) for c in p.classes for x in c for y in c}


def test_generate_examples():
    assert generate({1, 2, 3}, [(1, 2)]) == P({1, 2, 3}, [{1, 2}, {3}])
    assert generate({1, 2, 3}, []) == Partition.discrete({1, 2, 3})
    assert generate({1, 2, 3, 4}, [(1, 2), (2, 3)]) == P({1, 2, 3, 4}, [{1, 2, 3}, {4}])
    with pytest.raises(UnknownElementError):
        generate({1, 2}, [(1, 5)])


def test_join_meet_examples():
    g = {1, 2, 3}
    assert join(P(g, [{1, 2}, {3}]), P(g, [{1}, {2, 3}])) == Partition.indiscrete(g)
    assert meet(P(g, [{1, 2}, {3}]), Partition.indiscrete(g)) == P(g, [{1, 2}, {3}])
    with pytest.raises(GroundMismatchError):
        join(Partition.discrete({1, 2}), Partition.discrete({1, 3}))


def test_saturate_examples():
    p = P({1, 2, 3}, [{1, 2}, {3}])
    assert saturate(p, {1}) == (frozenset({1, 2}), frozenset())
    assert saturate(p, {1, 3}) == (frozenset({1, 2, 3}), frozenset({3}))
    d = Partition.discrete({1, 2, 3})
    assert saturate(d, {2, 3}) == (frozenset({2, 3}), frozenset({2, 3}))


def test_invariance_examples():
    g = range(4)
    f = {x: (x + 1) % 4 for x in g}
    assert is_invariant(P(g, [{0, 2}, {1, 3}]), f)
    bad = P(g, [{0, 1}, {2, 3}])
    assert not is_invariant(bad, f)
    assert invariance_witness(bad, f) is not None
    assert is_invariant(bad, lambda x: x)


def test_quotient_dynamics_examples():
    g = range(6)
    p = generate(g, [(2, 4)])
    F = quotient_dynamics(p, lambda k: 2 * k % 6)
    assert F[frozenset({2, 4})] == frozenset({2, 4})
    d = Partition.discrete(g)
    assert quotient_dynamics(d, lambda k: (k + 1) % 6)[frozenset({0})] == frozenset({1})
    one = Partition.indiscrete(g)
    assert quotient_dynamics(one, lambda k: 0) == {frozenset(g): frozenset(g)}
    with pytest.raises(InvarianceError) as exc:
        quotient_dynamics(P(range(4), [{0, 1}, {2, 3}]), lambda x: (x + 1) % 4)
    assert len(exc.value.witness) == 2


def test_validation():
    with pytest.raises(EqRelError):
        P({1, 2}, [{1}, {1, 2}])
    with pytest.raises(EqRelError):
        P({1, 2, 3}, [{1}, {2}])
    with pytest.raises(UnknownElementError):
        P({1}, [{1, 9}])


def test_union_find():
    uf = UnionFind(range(5))
    assert uf.union(0, 1) and uf.union(3, 4) and not uf.union(1, 0)
    assert uf.find(0) == uf.find(1) != uf.find(3)
    assert sorted(map(sorted, uf.groups())) == [[0, 1], [2], [3, 4]]


@pytest.mark.parametrize("n", range(6))
def test_enumeration_counts(n):
    assert len(all_partitions(range(n))) == BELL[n]
    assert set(all_partitions(range(n))) == set(oracle_partitions(range(n)))


@pytest.mark.parametrize("n", range(1, 6))
def test_lattice_against_brute_force(n):
    ground = list(range(n))
    parts = oracle_partitions(ground)
    for p, q in itertools.product(parts, repeat=2):
        # meet = intersection of relations; join = smallest partition above both
        m = meet(p, q)
        assert relation(m) == relation(p) & relation(q)
        j = join(p, q)
        above = [r for r in parts if p.refines(r) and q.refines(r)]
        assert all(j.refines(r) for r in above) and j in above
        assert meet(p, join(p, q)) == p
        assert join(p, q) == join(q, p) and meet(p, q) == meet(q, p)


@pytest.mark.parametrize("n", range(1, 6))
def test_generate_is_minimal(n):
    ground = list(range(n))
    parts = oracle_partitions(ground)
    pairs_all = list(itertools.combinations(ground, 2))
    for k in range(min(3, len(pairs_all)) + 1):
        for pairs in itertools.combinations(pairs_all, k):
            containing = [r for r in parts if all(r.related(a, b) for a, b in pairs)]
            expect = containing[0]
            for r in containing[1:]:
                expect = meet(expect, r)
            assert generate(ground, pairs) == expect


@pytest.mark.parametrize("n", range(1, 6))
def test_saturation_duality(n):
    S = frozenset(range(n))
    for p in oracle_partitions(S):
        for k in range(n + 1):
            for U in map(frozenset, itertools.combinations(S, k)):
                dagger, star = saturate(p, U)
                assert star <= U <= dagger
                assert star == S - saturate(p, S - U)[0]


@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=10),
       st.lists(st.integers(0, 7), min_size=8, max_size=8))
def test_quotient_commutes_with_projection(pairs, images):
    ground = range(8)
    p = generate(ground, pairs)
    f = dict(enumerate(images))
    if is_invariant(p, f):
        F = quotient_dynamics(p, f)
        assert all(F[p.class_of(x)] == p.class_of(f[x]) for x in ground)
    else:
        a, b = invariance_witness(p, f)
        assert p.related(a, b) and not p.related(f[a], f[b])
