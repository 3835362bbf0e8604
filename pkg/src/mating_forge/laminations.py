"""Co-landing classes of rational external rays for PCF quadratics.

Rays are compared through their symbolic itineraries under doubling. For a
periodic characteristic angle ``theta`` with companion ``theta'`` (the other
parameter ray landing at the root of the same hyperbolic component) put
``lo < hi`` for the pair. The two long preimages of the minor leaf
``{lo, hi}`` land at the two preimages ``p0, p1`` of the root point; a ray
gets symbol ``P0``/``P1`` when it lands there, otherwise ``0``/``1`` by the
open half circle ``(lo/2, lo/2 + 1/2)``. For strictly preperiodic
(Misiurewicz) ``theta`` the cut is the diameter ``{theta/2, theta/2 + 1/2}``
and rays landing at the critical point get ``*``. Two rays co-land exactly
when their symbol sequences agree.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import eqrel
from .angles import Angle, conjugate, in_open_arc, orbit_type, preimages, times_d


class LaminationError(ValueError):
    pass


class UnsupportedParameterError(LaminationError):
    pass


class BudgetExceededError(LaminationError):
    pass


DEFAULT_UNIVERSE_BUDGET = 1 << 22
HALF = Angle(1, 2)
ZERO = Angle(0, 1)


# ---------------------------------------------------------------------------
# Lavaurs pairing of periodic parameter angles


def _exact_period_numerators(p: int) -> list[int]:
    den = (1 << p) - 1
    out = []
    for k in range(den):
        n, q = k, 1
        n = (2 * n) % den
        while n != k:
            n = (2 * n) % den
            q += 1
        if q == p:
            out.append(k)
    return out


@lru_cache(maxsize=None)
def lavaurs_pairs(max_period: int) -> dict[Angle, Angle]:
    """Map each periodic angle of period ``<= max_period`` to its companion.

    Lavaurs' rule: period by period, connect the smallest free angle to the
    next free angle of the same period whose chord crosses no chord drawn so
    far. Angle 0 (period 1) is its own companion.
    """
    if max_period > 20:
        raise BudgetExceededError(f"period {max_period} too large for Lavaurs pairing")
    lcm = 1
    for p in range(1, max_period + 1):
        d = (1 << p) - 1
        lcm = lcm * d // _gcd(lcm, d)
    pts: list[int] = []  # sorted endpoints, scaled to lcm
    partner: dict[int, int] = {}
    out = {ZERO: ZERO}
    for p in range(2, max_period + 1):
        den = (1 << p) - 1
        scale = lcm // den
        free = [k * scale for k in _exact_period_numerators(p)]
        while free:
            a = free.pop(0)
            for i, b in enumerate(free):
                if not _crosses(pts, partner, a, b):
                    free.pop(i)
                    break
            else:  # pragma: no cover - Lavaurs always finds a partner
                raise LaminationError("Lavaurs pairing failed")
            bisect.insort(pts, a)
            bisect.insort(pts, b)
            partner[a], partner[b] = b, a
            aa, bb = Angle(a, lcm), Angle(b, lcm)
            out[aa], out[bb] = bb, aa
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _crosses(pts: list[int], partner: dict[int, int], a: int, b: int) -> bool:
    lo, hi = bisect.bisect_right(pts, a), bisect.bisect_left(pts, b)
    for x in pts[lo:hi]:
        if not a < partner[x] < b:
            return True
    return False


def companion_angle(theta: Angle) -> Angle:
    pre, per = orbit_type(theta)
    if pre:
        raise UnsupportedParameterError(f"{theta} is not periodic")
    return lavaurs_pairs(per)[theta]


# ---------------------------------------------------------------------------
# Symbolic dynamics


class _Kneading:
    """Symbol assignment for one parameter angle."""

    def __init__(self, theta: Angle):
        pre, per = orbit_type(theta)
        self.theta = theta
        self.trivial = theta == ZERO
        self.periodic = pre == 0
        if self.trivial:
            return
        if self.periodic:
            other = companion_angle(theta)
            lo, hi = min(theta, other), max(theta, other)
            self.cut = Angle(lo.num, 2 * lo.den)
            self.cut_end = _add_half(self.cut)
            root = _orbit_leaf_component(lo, hi)
            # p0 side: closed arc [hi/2 + 1/2, lo/2 + 1]; p1 side: [hi/2, lo/2 + 1/2]
            a0 = Angle(hi.num + hi.den, 2 * hi.den)
            b1 = Angle(lo.num + lo.den, 2 * lo.den)
            a1 = Angle(hi.num, 2 * hi.den)
            self.p0: frozenset[Angle] = frozenset(
                y for x in root for y in preimages(x) if y == a0 or y == self.cut or in_open_arc(y, a0, self.cut)
            )
            self.p1: frozenset[Angle] = frozenset(
                y for x in root for y in preimages(x) if y == a1 or y == b1 or in_open_arc(y, a1, b1)
            )
            self.minor = (lo, hi)
        else:
            self.cut = Angle(theta.num, 2 * theta.den)
            self.cut_end = _add_half(self.cut)
            self.p0 = frozenset()
            self.p1 = frozenset()
            at_c = _class_by_search(theta, self._plain_symbol, pre, per)
            self.star: frozenset[Angle] = frozenset(y for x in at_c for y in preimages(x))

    def _plain_symbol(self, x: Angle):
        return 0 if in_open_arc(x, self.cut, self.cut_end) else 1

    def symbol(self, x: Angle):
        if self.periodic:
            if x in self.p0:
                return "P0"
            if x in self.p1:
                return "P1"
        elif x in self.star:
            return "*"
        return self._plain_symbol(x)


def _add_half(a: Angle) -> Angle:
    return Angle(2 * a.num + a.den, 2 * a.den)


def _orbit_leaf_component(lo: Angle, hi: Angle) -> frozenset[Angle]:
    """Angles joined to ``lo`` by the forward images of the leaf ``{lo, hi}``."""
    leaves = []
    a, b = lo, hi
    for _ in range(orbit_type(lo)[1]):
        leaves.append((a, b))
        a, b = times_d(a), times_d(b)
    uf = eqrel.UnionFind()
    for a, b in leaves:
        uf.add(a)
        uf.add(b)
        uf.union(a, b)
    root = uf.find(lo)
    return frozenset(x for x in uf.parent if uf.find(x) == root)


def _symbol_word(x: Angle, symbol, length: int) -> tuple:
    out = []
    for _ in range(length):
        out.append(symbol(x))
        x = times_d(x)
    return tuple(out)


def _class_by_search(query: Angle, symbol, pre: int, per: int, budget: int = DEFAULT_UNIVERSE_BUDGET) -> frozenset[Angle]:
    """All angles with the same symbol sequence as ``query``.

    Co-landing rays share preperiod and period, so candidates are the exact
    period-``per`` angles whose cycle word matches, pulled back ``pre`` times
    with the symbol checked at every level.
    """
    den = (1 << per) - 1
    if den > budget:
        raise BudgetExceededError(f"period {per} exceeds the search budget")
    base = query
    for _ in range(pre):
        base = times_d(base)
    target = _symbol_word(base, symbol, per)
    level = set(_cycle_words(symbol, per).get(target, ()))
    word = _symbol_word(query, symbol, pre)
    for j in range(pre - 1, -1, -1):
        nxt = set()
        for y in level:
            for z in preimages(y):
                if symbol(z) == word[j] and (j != pre - 1 or orbit_type(z)[0] > 0):
                    nxt.add(z)
        level = nxt
        if len(level) > budget:
            raise BudgetExceededError("class search exceeded budget")
    return frozenset(level)


_WORD_CACHE: dict = {}


def _cycle_words(symbol, per: int) -> dict[tuple, list[Angle]]:
    """Exact period-``per`` angles grouped by their symbol cycle word."""
    key = (symbol, per)
    table = _WORD_CACHE.get(key)
    if table is None:
        den = (1 << per) - 1
        table = {}
        for k in _exact_period_numerators(per):
            a = Angle(k, den)
            table.setdefault(_symbol_word(a, symbol, per), []).append(a)
        if len(_WORD_CACHE) > 512:
            _WORD_CACHE.clear()
        _WORD_CACHE[key] = table
    return table


@lru_cache(maxsize=256)
def _kneading(theta: Angle) -> _Kneading:
    return _Kneading(theta)


# ---------------------------------------------------------------------------
# Public API


@dataclass(frozen=True, order=True)
class CoLandClass:
    angles: tuple[Angle, ...]

    def __post_init__(self):
        if not self.angles:
            raise LaminationError("empty class")
        object.__setattr__(self, "angles", tuple(sorted(set(self.angles))))

    @classmethod
    def of(cls, angles: Iterable[Angle]) -> "CoLandClass":
        return cls(tuple(angles))

    def __len__(self):
        return len(self.angles)

    def __iter__(self):
        return iter(self.angles)

    def __contains__(self, a):
        return a in self.angles

    def conjugate(self) -> "CoLandClass":
        return CoLandClass(tuple(conjugate(a) for a in self.angles))

    def as_strings(self) -> list[str]:
        return [str(a) for a in self.angles]


@lru_cache(maxsize=1 << 16)
def colanding_class(query: Angle, theta: Angle) -> CoLandClass:
    """Angles whose rays land with ``query`` for characteristic angle ``theta``."""
    kn = _kneading(theta)
    if kn.trivial:
        return CoLandClass((query,))
    pre, per = orbit_type(query)
    return CoLandClass(tuple(_class_by_search(query, kn.symbol, pre, per)))


def itinerary(x: Angle, theta: Angle, length: int) -> tuple:
    kn = _kneading(theta)
    if kn.trivial:
        raise UnsupportedParameterError("no kneading partition for theta = 0")
    return _symbol_word(x, kn.symbol, length)


@dataclass(frozen=True)
class QuadraticLamination:
    char_angle: Angle
    depth: int
    classes: frozenset = field(repr=False)
    denominator: int = 0

    def universe(self) -> list[Angle]:
        return [a for c in self.classes for a in c]

    def partition(self) -> eqrel.Partition:
        return eqrel.Partition(self.universe(), (c.angles for c in self.classes))

    def nontrivial(self) -> list[CoLandClass]:
        return sorted(c for c in self.classes if len(c) > 1)

    def to_json(self) -> list[list[str]]:
        return [c.as_strings() for c in sorted(self.classes)]


def lamination_to_depth(theta: Angle, depth: int, budget: int = DEFAULT_UNIVERSE_BUDGET) -> QuadraticLamination:
    """All co-landing classes among angles with denominator ``2**depth * (2**p - 1)``.

    ``p`` is the period of ``theta`` (for Misiurewicz ``theta`` its eventual
    period). Classes are found by grouping the canonical itineraries of the
    whole universe, which the doubling map keeps closed.
    """
    if depth < 0:
        raise LaminationError("depth must be nonnegative")
    pre, per = orbit_type(theta)
    den = (1 << depth) * ((1 << per) - 1)
    if den > budget:
        raise BudgetExceededError(f"universe of {den} angles exceeds budget {budget}")
    kn = _kneading(theta)
    if kn.trivial:
        classes = frozenset(CoLandClass((Angle(k, den),)) for k in range(den))
        return QuadraticLamination(theta, depth, classes, den)
    symbols = _symbol_table(kn, den)
    groups: dict[tuple, list[int]] = {}
    for k in range(den):
        groups.setdefault(_canonical_itinerary(k, den, symbols), []).append(k)
    classes = frozenset(CoLandClass(tuple(Angle(k, den) for k in ks)) for ks in groups.values())
    return QuadraticLamination(theta, depth, classes, den)


def _symbol_table(kn: _Kneading, den: int) -> list:
    cut = kn.cut
    end = _add_half(cut)
    # x = k/den lies in the open arc (cut, end) iff cut*den < k < end*den (arc may wrap)
    lo = Fraction(cut.num * den, cut.den)
    hi = Fraction(end.num * den, end.den)
    table = []
    for k in range(den):
        if lo < hi:
            inside = lo < k < hi
        else:
            inside = k > lo or k < hi
        table.append(0 if inside else 1)
    special = {}
    if kn.periodic:
        special.update({a: "P0" for a in kn.p0})
        special.update({a: "P1" for a in kn.p1})
    else:
        special.update({a: "*" for a in kn.star})
    for a, s in special.items():
        if den % a.den == 0:
            table[a.num * (den // a.den)] = s
    return table


def _canonical_itinerary(k: int, den: int, symbols: Sequence) -> tuple:
    seen: dict[int, int] = {}
    seq = []
    while k not in seen:
        seen[k] = len(seq)
        seq.append(symbols[k])
        k = (2 * k) % den
    start = seen[k]
    prefix, cycle = seq[:start], seq[start:]
    cycle = _primitive_root(cycle)
    while prefix and prefix[-1] == cycle[-1]:
        prefix.pop()
        cycle = [cycle[-1]] + cycle[:-1]
    return (tuple(prefix), tuple(cycle))


def _primitive_root(cycle: list) -> list:
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d == 0 and cycle == cycle[:d] * (n // d):
            return cycle[:d]
    return cycle  # pragma: no cover


def crossing_witness(classes: Iterable) -> tuple | None:
    """Return two crossing classes, or None when the family is unlinked.

    Scans the circle once with a stack of open classes: a class may only be
    resumed when it sits on top of the stack.
    """
    owner: dict[Angle, int] = {}
    blocks = []
    for c in classes:
        angles = tuple(sorted(c))
        if len(angles) < 2:
            continue
        idx = len(blocks)
        blocks.append(angles)
        for a in angles:
            if a in owner:
                raise LaminationError(f"classes are not disjoint at {a}")
            owner[a] = idx
    last = {i: b[-1] for i, b in enumerate(blocks)}
    stack: list[int] = []
    opened: set[int] = set()
    for a in sorted(owner):
        i = owner[a]
        if i in opened:
            if stack[-1] != i:
                return (CoLandClass(blocks[i]), CoLandClass(blocks[stack[-1]]))
            if a == last[i]:
                stack.pop()
                opened.discard(i)
        else:
            opened.add(i)
            stack.append(i)
    return None


def is_unlinked(classes: Iterable) -> bool:
    return crossing_witness(classes) is None


def invariance_violation(lam: QuadraticLamination) -> CoLandClass | None:
    p = lam.partition()
    w = eqrel.invariance_witness(p, times_d)
    if w is None:
        return None
    return CoLandClass(tuple(p.class_of(w[0])))


def check_invariance(lam: QuadraticLamination) -> bool:
    return invariance_violation(lam) is None
