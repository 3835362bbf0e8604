"""Equivalence relations on finite ground sets.

Partitions are built with union-find and frozen afterwards. On a finite
(discrete) ground set every equivalence relation is closed, so taking the
closure of a relation is the identity here; the transfinite closure used for
relations on continua is not modelled.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Callable, Hashable, Iterable, Mapping


class EqRelError(ValueError):
    pass


class UnknownElementError(EqRelError):
    pass


class GroundMismatchError(EqRelError):
    pass


class InvarianceError(EqRelError):
    """Raised when a map does not respect a partition.

    ``witness`` is a pair ``(x, y)`` in one class whose images land in
    different classes.
    """

    def __init__(self, witness):
        super().__init__(f"map is not invariant: {witness[0]!r} ~ {witness[1]!r} but images are separated")
        self.witness = witness


class UnionFind:
    def __init__(self, elements: Iterable[Hashable] = ()):
        self.parent: dict = {}
        self.rank: dict = {}
        for e in elements:
            self.add(e)

    def add(self, e):
        if e not in self.parent:
            self.parent[e] = e
            self.rank[e] = 0

    def find(self, e):
        root = e
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[e] != root:
            self.parent[e], e = root, self.parent[e]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True

    def groups(self) -> list[frozenset]:
        out = defaultdict(set)
        for e in self.parent:
            out[self.find(e)].add(e)
        return [frozenset(s) for s in out.values()]


def _sort_key(x):
    return (type(x).__name__, x)


class Partition:
    """An immutable partition of a finite ground set."""

    __slots__ = ("ground", "classes", "_index")

    def __init__(self, ground: Iterable[Hashable], classes: Iterable[Iterable[Hashable]]):
        ground = frozenset(ground)
        cls = [frozenset(c) for c in classes]
        index = {}
        for i, c in enumerate(cls):
            if not c:
                raise EqRelError("empty class")
            for x in c:
                if x in index:
                    raise EqRelError(f"classes overlap at {x!r}")
                if x not in ground:
                    raise UnknownElementError(x)
                index[x] = i
        if len(index) != len(ground):
            missing = next(x for x in ground if x not in index)
            raise EqRelError(f"classes do not cover {missing!r}")
        self.ground = ground
        self.classes = frozenset(cls)
        self._index = {x: cls[i] for x, i in index.items()}

    @classmethod
    def discrete(cls, ground) -> "Partition":
        ground = list(ground)
        return cls(ground, ([x] for x in ground))

    @classmethod
    def indiscrete(cls, ground) -> "Partition":
        ground = list(ground)
        return cls(ground, [ground] if ground else [])

    def class_of(self, x) -> frozenset:
        try:
            return self._index[x]
        except KeyError:
            raise UnknownElementError(x) from None

    def related(self, x, y) -> bool:
        return self.class_of(x) is self.class_of(y)

    def refines(self, other: "Partition") -> bool:
        _check_ground(self, other)
        return all(any(c <= d for d in other.classes) for c in self.classes)

    def sorted_classes(self) -> list[list]:
        rows = [sorted(c, key=_sort_key) for c in self.classes]
        return sorted(rows, key=lambda r: [_sort_key(x) for x in r])

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.ground == other.ground and self.classes == other.classes

    def __hash__(self):
        return hash(self.classes)

    def __len__(self):
        return len(self.classes)

    def __repr__(self):
        return f"Partition({self.sorted_classes()!r})"


def _check_ground(p: Partition, q: Partition):
    if p.ground != q.ground:
        raise GroundMismatchError("partitions live on different ground sets")


def generate(ground: Iterable[Hashable], pairs: Iterable[tuple]) -> Partition:
    ground = list(ground)
    uf = UnionFind(ground)
    for a, b in pairs:
        for x in (a, b):
            if x not in uf.parent:
                raise UnknownElementError(x)
        uf.union(a, b)
    return Partition(ground, uf.groups())


def join(p: Partition, q: Partition) -> Partition:
    _check_ground(p, q)
    uf = UnionFind(p.ground)
    for part in (p, q):
        for c in part.classes:
            it = iter(c)
            first = next(it)
            for x in it:
                uf.union(first, x)
    return Partition(p.ground, uf.groups())


def meet(p: Partition, q: Partition) -> Partition:
    _check_ground(p, q)
    out = []
    for c in p.classes:
        for d in q.classes:
            inter = c & d
            if inter:
                out.append(inter)
    return Partition(p.ground, out)


def saturate(p: Partition, subset: Iterable[Hashable]) -> tuple[frozenset, frozenset]:
    """Return ``(saturation, saturated_interior)`` of ``subset``.

    The saturation is the union of classes meeting the subset, the interior
    the union of classes contained in it.
    """
    a = frozenset(subset)
    for x in a:
        if x not in p.ground:
            raise UnknownElementError(x)
    hull, inner = set(), set()
    for c in p.classes:
        if c & a:
            hull |= c
            if c <= a:
                inner |= c
    return frozenset(hull), frozenset(inner)


def _as_callable(f) -> Callable:
    if isinstance(f, Mapping):
        return f.__getitem__
    return f


def invariance_witness(p: Partition, f) -> tuple | None:
    """A pair in one class whose images are in different classes, or None."""
    fn = _as_callable(f)
    for c in p.classes:
        it = iter(c)
        x0 = next(it)
        target = p.class_of(fn(x0))
        for x in it:
            if p.class_of(fn(x)) is not target:
                return (x0, x)
    return None


def is_invariant(p: Partition, f) -> bool:
    return invariance_witness(p, f) is None


def quotient_dynamics(p: Partition, f) -> dict[frozenset, frozenset]:
    """Induced map on classes, ``[x] -> [f(x)]``."""
    w = invariance_witness(p, f)
    if w is not None:
        raise InvarianceError(w)
    fn = _as_callable(f)
    return {c: p.class_of(fn(next(iter(c)))) for c in p.classes}


def all_partitions(ground: Iterable[Hashable]) -> list[Partition]:
    """Every partition of a small ground set (Bell-number many)."""
    items = list(ground)

    def rec(i: int, blocks: list[list]):
        if i == len(items):
            yield [list(b) for b in blocks]
            return
        x = items[i]
        for b in blocks:
            b.append(x)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([x])
        yield from rec(i + 1, blocks)
        blocks.pop()

    return [Partition(items, blocks) for blocks in rec(0, [])]
