"""Ray-equivalence classes of formal matings as bipartite graphs."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .angles import Angle, conjugate, orbit_type, preimages, times_d
from .laminations import CoLandClass, colanding_class


class MatingGraphError(ValueError):
    pass


class MainCardioidError(MatingGraphError):
    pass


@dataclass(frozen=True)
class RayClassGraph:
    """One ray-equivalence class.

    Edges are angles ``z`` (the extended ray through ``R_w(z)`` and
    ``R_b(-z)``). White vertices are co-landing classes for the white
    polynomial; black vertices hold the conjugated angle sets, so both vertex
    families are subsets of the edge set.
    """

    edges: frozenset
    white_vertices: frozenset
    black_vertices: frozenset
    truncated: bool = False

    def vertex_count(self) -> int:
        return len(self.white_vertices) + len(self.black_vertices)

    def edge_count(self) -> int:
        return len(self.edges)

    def endpoints(self, edge: Angle) -> tuple[CoLandClass, CoLandClass]:
        w = next(v for v in self.white_vertices if edge in v)
        b = next(v for v in self.black_vertices if edge in v)
        return w, b

    def adjacency(self) -> dict[tuple[str, CoLandClass], list[tuple[Angle, tuple[str, CoLandClass]]]]:
        adj: dict = {("w", v): [] for v in self.white_vertices}
        adj.update({("b", v): [] for v in self.black_vertices})
        for e in sorted(self.edges):
            w, b = self.endpoints(e)
            adj[("w", w)].append((e, ("b", b)))
            adj[("b", b)].append((e, ("w", w)))
        return adj

    def to_json(self) -> dict:
        adj = self.adjacency()

        def name(key):
            side, v = key
            return side + ":{" + ",".join(v.as_strings()) + "}"

        return {
            "edges": [str(e) for e in sorted(self.edges)],
            "white": sorted(v.as_strings() for v in self.white_vertices),
            "black": sorted(v.as_strings() for v in self.black_vertices),
            "truncated": self.truncated,
            "adjacency": {name(k): [[str(e), name(t)] for e, t in adj[k]] for k in sorted(adj, key=name)},
        }


def black_class(a: Angle, theta_b: Angle) -> CoLandClass:
    return colanding_class(conjugate(a), theta_b).conjugate()


def ray_class(start: Angle, theta_w: Angle, theta_b: Angle, size_budget: int = 10_000) -> RayClassGraph:
    """Breadth-first closure of ``start`` under the white and black relations."""
    if size_budget < 1:
        raise MatingGraphError("size_budget must be positive")
    edges = {start}
    whites: set[CoLandClass] = set()
    blacks: set[CoLandClass] = set()
    queue = deque([start])
    truncated = False
    while queue:
        a = queue.popleft()
        for cls, seen in ((colanding_class(a, theta_w), whites), (black_class(a, theta_b), blacks)):
            if cls in seen:
                continue
            seen.add(cls)
            for e in cls:
                if e not in edges:
                    edges.add(e)
                    queue.append(e)
        if len(edges) > size_budget:
            truncated = True
            break
    return RayClassGraph(frozenset(edges), frozenset(whites), frozenset(blacks), truncated)


@dataclass(frozen=True)
class Tree:
    diameter: int


@dataclass(frozen=True)
class Cyclic:
    pass


@dataclass(frozen=True)
class TruncatedUnknown:
    pass


def classify_class(g: RayClassGraph):
    if g.truncated:
        return TruncatedUnknown()
    if g.edge_count() > g.vertex_count() - 1:
        return Cyclic()
    return Tree(_tree_diameter(g))


def _tree_diameter(g: RayClassGraph) -> int:
    adj = g.adjacency()

    def farthest(src):
        dist = {src: 0}
        q = deque([src])
        while q:
            v = q.popleft()
            for _, u in adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    q.append(u)
        far = max(dist, key=lambda k: (dist[k], str(k)))
        return far, dist[far]

    first = next(iter(sorted(adj, key=str)))
    a, _ = farthest(first)
    _, d = farthest(a)
    return d


# ---------------------------------------------------------------------------
# Verdicts


@dataclass
class MooreObstructed:
    witness: RayClassGraph
    classes_scanned: int = 0
    name: str = field(default="MooreObstructed", init=False)


@dataclass
class Inconclusive:
    truncated: list
    classes_scanned: int = 0
    name: str = field(default="Inconclusive", init=False)


@dataclass
class NoObstructionFound:
    max_diameter: int
    class_count: int
    diameter_histogram: dict = field(default_factory=dict)
    name: str = field(default="NoObstructionFound", init=False)


def scan_universe(max_period: int, preimage_levels: int = 1) -> list[Angle]:
    """Periodic angles of period ``<= max_period`` plus preimages to the given depth."""
    if max_period < 1:
        raise MatingGraphError("max_period must be at least 1")
    level = set()
    for p in range(1, max_period + 1):
        den = (1 << p) - 1
        level.update(Angle(k, den) for k in range(den))
    out = set(level)
    for _ in range(preimage_levels):
        level = {y for x in level for y in preimages(x)} - out
        out |= level
    return sorted(out)


def scan_verdict(theta_w: Angle, theta_b: Angle, max_period: int, size_budget: int = 10_000, preimage_levels: int = 1):
    seen: set[Angle] = set()
    truncated = []
    max_diam = 0
    hist: dict[int, int] = {}
    count = 0
    for a in scan_universe(max_period, preimage_levels):
        if a in seen:
            continue
        g = ray_class(a, theta_w, theta_b, size_budget)
        seen |= g.edges
        count += 1
        kind = classify_class(g)
        if isinstance(kind, Cyclic):
            return MooreObstructed(g, count)
        if isinstance(kind, TruncatedUnknown):
            truncated.append(g)
            continue
        max_diam = max(max_diam, kind.diameter)
        hist[kind.diameter] = hist.get(kind.diameter, 0) + 1
    if truncated:
        return Inconclusive(truncated, count)
    return NoObstructionFound(max_diam, count, dict(sorted(hist.items())))


# ---------------------------------------------------------------------------
# Limbs


def rotation_cycle(p: int, q: int) -> list[Angle]:
    """The doubling cycle with combinatorial rotation number ``p/q``, sorted.

    Point ``i`` has binary digit ``j`` equal to 1 exactly when
    ``(i + j*p) mod q >= q - p``.
    """
    if not (0 < p < q) or gcd(p, q) != 1:
        raise MatingGraphError(f"{p}/{q} is not a reduced rotation number in (0, 1)")
    den = (1 << q) - 1
    out = []
    for i in range(q):
        num = 0
        for j in range(q):
            num = 2 * num + (1 if (i + j * p) % q >= q - p else 0)
        out.append(Angle(num, den))
    return sorted(out)


def limb_wake(p: int, q: int) -> tuple[Angle, Angle]:
    cyc = rotation_cycle(p, q)
    return cyc[p - 1], cyc[p]


def limb_of_angle(theta: Angle) -> Fraction:
    """Rotation number of the limb of the Mandelbrot set containing ``theta``'s parameter."""
    if theta == Angle(0):
        raise MainCardioidError("angle 0 lands at the cusp of the main cardioid")
    pre, per = orbit_type(theta)
    bound = per if pre == 0 else pre + per + 1
    for q in range(2, max(bound, 2) + 1):
        for p in range(1, q):
            if gcd(p, q) != 1:
                continue
            lo, hi = limb_wake(p, q)
            if lo <= theta <= hi:
                return Fraction(p, q)
    raise MatingGraphError(f"no limb found for {theta}")  # pragma: no cover


def conjugate_limbs(theta_w: Angle, theta_b: Angle) -> bool:
    try:
        a, b = limb_of_angle(theta_w), limb_of_angle(theta_b)
    except MainCardioidError:
        return False
    return (a + b) % 1 == 0


def image_class_consistent(g: RayClassGraph, theta_w: Angle, theta_b: Angle, size_budget: int = 10_000) -> bool:
    """Doubling maps the edges of ``g`` into a single ray class."""
    images = {times_d(e) for e in g.edges}
    first = next(iter(images))
    h = ray_class(first, theta_w, theta_b, size_budget)
    return images <= h.edges
