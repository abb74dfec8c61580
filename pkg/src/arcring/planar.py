"""Crossingless matchings and flat tangles.

A flat tangle with ``2m`` bottom and ``2l`` top endpoints is stored as a
fixed-point-free involution on endpoint positions: bottom endpoints take
positions ``0 .. 2m-1`` (left to right), top endpoints ``2m .. 2m+2l-1``
(left to right).  Each boundary also carries the real coordinates of its
endpoints (a strictly increasing integer sequence), so that the same
combinatorial object can live over different point sequences.

A matching ``a`` of ``2m`` points is thought of as a family of arcs hanging
below the line, i.e. a flat tangle with no bottom endpoints.  ``W(b)`` is its
mirror image, and ``W(b)Ta`` is the closed 1-manifold obtained by putting
``a`` under ``T`` and ``W(b)`` on top.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

DEFAULT_MAX_M = 10


class BoundaryError(ValueError):
    """Endpoint sequences of two diagrams do not agree."""


class TangleError(ValueError):
    """A tangle or matching violates its construction precondition."""


class SizeError(ValueError):
    """An enumeration would exceed the configured size bound."""


def check_points(points: Sequence[int]) -> tuple[int, ...]:
    pts = tuple(int(p) for p in points)
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise TangleError(f"point sequence {pts} is not strictly increasing")
    return pts


class UnionFind:
    """Disjoint sets over arbitrary hashable items, with path halving."""

    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent: dict = {}
        for x in items:
            self.parent[x] = x

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x, y) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx

    def groups(self, order: Sequence[Hashable]) -> list[list]:
        """Classes listed by first appearance in ``order``; members in order."""
        index: dict = {}
        out: list[list] = []
        for x in order:
            r = self.find(x)
            if r not in index:
                index[r] = len(out)
                out.append([])
            out[index[r]].append(x)
        return out


def is_noncrossing(partner: Sequence[int]) -> bool:
    """Bracket test for an involution listed in cyclic boundary order."""
    n = len(partner)
    stack = []
    for i in range(n):
        j = partner[i]
        if j == i or not 0 <= j < n or partner[j] != i:
            return False
        if i < j:
            stack.append(j)
        elif not stack or stack.pop() != i:
            return False
    return not stack


@dataclass(frozen=True)
class Matching:
    """A crossingless matching of a point sequence, as a position involution."""

    points: tuple[int, ...]
    partner: tuple[int, ...]

    def __post_init__(self):
        if len(self.points) != len(self.partner) or len(self.points) % 2:
            raise TangleError("a matching needs an even number of points")
        if not is_noncrossing(self.partner):
            raise TangleError(f"{self.partner} is not a crossingless matching")

    @classmethod
    def from_arcs(cls, points: Sequence[int], arcs: Iterable[Sequence[int]]) -> "Matching":
        pts = check_points(points)
        pos = {p: i for i, p in enumerate(pts)}
        partner = [-1] * len(pts)
        for x, y in arcs:
            try:
                i, j = pos[x], pos[y]
            except KeyError as err:
                raise TangleError(f"arc ({x},{y}) leaves the point sequence {pts}") from err
            if partner[i] != -1 or partner[j] != -1 or i == j:
                raise TangleError(f"arc ({x},{y}) reuses an endpoint")
            partner[i], partner[j] = j, i
        if -1 in partner:
            raise TangleError("arcs do not cover every point")
        return cls(pts, tuple(partner))

    @property
    def m(self) -> int:
        return len(self.points) // 2

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        """Coordinate pairs ordered by left endpoint."""
        return tuple(
            (self.points[i], self.points[j]) for i, j in enumerate(self.partner) if i < j
        )

    @property
    def position_arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, j in enumerate(self.partner) if i < j)

    def sort_key(self):
        return (self.points, self.arcs)

    def __lt__(self, other: "Matching") -> bool:
        return self.sort_key() < other.sort_key()

    def relabel(self, points: Sequence[int]) -> "Matching":
        pts = check_points(points)
        if len(pts) != len(self.points):
            raise BoundaryError("relabeling must keep the number of points")
        return Matching(pts, self.partner)

    def as_tangle(self) -> "FlatTangle":
        """The matching as a flat (m, 0)-tangle: arcs below the top boundary."""
        return FlatTangle((), self.points, self.partner, 0)

    def to_json(self) -> list[list[int]]:
        return [list(a) for a in self.arcs]

    def __str__(self) -> str:
        return "{" + ",".join(f"({x},{y})" for x, y in self.arcs) + "}"


def _noncrossing_involutions(n: int):
    if n == 0:
        yield ()
        return
    # position 0 pairs with an odd position j; the inside and outside are independent
    for j in range(1, n, 2):
        for inner in _noncrossing_involutions(j - 1):
            for outer in _noncrossing_involutions(n - j - 1):
                p = [0] * n
                p[0], p[j] = j, 0
                for i, x in enumerate(inner):
                    p[i + 1] = x + 1
                for i, x in enumerate(outer):
                    p[j + 1 + i] = x + j + 1
                yield tuple(p)


@lru_cache(maxsize=None)
def _positional_matchings(m: int) -> tuple[tuple[int, ...], ...]:
    out = list(_noncrossing_involutions(2 * m))

    def key(p):
        return tuple((i, j) for i, j in enumerate(p) if i < j)

    out.sort(key=key)
    return tuple(out)


def enumerate_matchings(m: int | Sequence[int], max_m: int = DEFAULT_MAX_M) -> list[Matching]:
    """All crossingless matchings of ``2m`` points in lexicographic arc order.

    ``m`` may also be a point sequence, in which case the matchings live on
    those coordinates; the order is the same as on ``1..2m``.
    """
    if isinstance(m, int):
        if m < 0:
            raise ValueError("m must be nonnegative")
        points = tuple(range(1, 2 * m + 1))
    else:
        points = check_points(m)
        if len(points) % 2:
            raise TangleError("need an even number of points")
        m = len(points) // 2
    if m > max_m:
        raise SizeError(f"B^{m} exceeds the enumeration bound m <= {max_m}")
    return [Matching(points, p) for p in _positional_matchings(m)]


def catalan(m: int) -> int:
    c = 1
    for i in range(m):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


@dataclass(frozen=True)
class CirclePartition:
    """Circles of a closed diagram.

    ``membership[v]`` is the circle through node ``v`` (for a glued pair of
    matchings the nodes are the point positions).  Circles are numbered by
    their smallest node.
    """

    circle_count: int
    membership: tuple[int, ...]

    def members(self, c: int) -> list[int]:
        return [v for v, k in enumerate(self.membership) if k == c]


def _partition(num_nodes: int, edges: Iterable[tuple[int, int]]) -> CirclePartition:
    uf = UnionFind(range(num_nodes))
    for u, v in edges:
        uf.union(u, v)
    groups = uf.groups(range(num_nodes))
    membership = [0] * num_nodes
    for c, g in enumerate(groups):
        for v in g:
            membership[v] = c
    return CirclePartition(len(groups), tuple(membership))


def glue_closed(b: Matching, a: Matching) -> CirclePartition:
    """Circles of ``W(b)a``; membership is indexed by point position."""
    if b.points != a.points:
        raise BoundaryError(f"cannot glue matchings on {b.points} and {a.points}")
    edges = list(a.position_arcs) + list(b.position_arcs)
    return _partition(len(a.points), edges)


@dataclass(frozen=True)
class FlatTangle:
    """A crossingless flat tangle: endpoint involution plus closed circles."""

    bottom: tuple[int, ...]
    top: tuple[int, ...]
    partner: tuple[int, ...]
    circles: int = 0

    def __post_init__(self):
        nb, nt = len(self.bottom), len(self.top)
        if len(self.partner) != nb + nt:
            raise TangleError("partner table has the wrong length")
        if nb % 2 or nt % 2:
            raise TangleError("each boundary needs an even number of endpoints")
        if self.circles < 0:
            raise TangleError("negative circle count")
        for i, j in enumerate(self.partner):
            if not 0 <= j < nb + nt or j == i or self.partner[j] != i:
                raise TangleError("partner table is not a fixed-point-free involution")

    @property
    def m(self) -> int:
        """Half the number of bottom endpoints."""
        return len(self.bottom) // 2

    @property
    def l(self) -> int:
        """Half the number of top endpoints."""
        return len(self.top) // 2

    @property
    def nb(self) -> int:
        return len(self.bottom)

    def endpoint(self, pos: int) -> tuple[str, int]:
        if pos < self.nb:
            return ("b", self.bottom[pos])
        return ("t", self.top[pos - self.nb])

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.partner) if i < j]

    def canonical(self) -> tuple:
        """Hashable isotopy-class key: boundaries, pairing and circle count."""
        return (self.bottom, self.top, self.partner, self.circles)

    def boundary_order(self) -> list[int]:
        """Positions in cyclic order around the strip (bottom L->R, top R->L)."""
        nb = self.nb
        return list(range(nb)) + list(range(nb + len(self.top) - 1, nb - 1, -1))

    def is_planar(self) -> bool:
        order = self.boundary_order()
        where = {p: k for k, p in enumerate(order)}
        return is_noncrossing([where[self.partner[p]] for p in order])

    def relabel(self, bottom: Sequence[int] | None = None, top: Sequence[int] | None = None) -> "FlatTangle":
        """Same diagram over new endpoint coordinates (order preserving)."""
        nb = check_points(bottom) if bottom is not None else self.bottom
        nt = check_points(top) if top is not None else self.top
        if len(nb) != len(self.bottom) or len(nt) != len(self.top):
            raise BoundaryError("relabeling must keep endpoint counts")
        return FlatTangle(nb, nt, self.partner, self.circles)

    def without_circles(self) -> "FlatTangle":
        return FlatTangle(self.bottom, self.top, self.partner, 0)

    def as_matching(self) -> Matching:
        if self.bottom or self.circles:
            raise TangleError("only a circle-free tangle without bottom endpoints is a matching")
        return Matching(self.top, self.partner)

    def to_json(self) -> dict:
        return {
            "bottom": list(self.bottom),
            "top": list(self.top),
            "arcs": [[list(self.endpoint(i)), list(self.endpoint(j))] for i, j in self.pairs()],
            "circles": self.circles,
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "FlatTangle":
        if isinstance(data, str):
            data = json.loads(data)
        bottom = check_points(data["bottom"])
        top = check_points(data["top"])
        nb = len(bottom)
        pos = {("b", x): i for i, x in enumerate(bottom)}
        pos.update({("t", x): nb + i for i, x in enumerate(top)})
        partner = [-1] * (nb + len(top))
        for (s1, x1), (s2, x2) in data["arcs"]:
            i, j = pos[(s1, x1)], pos[(s2, x2)]
            partner[i], partner[j] = j, i
        return cls(bottom, top, tuple(partner), int(data.get("circles", 0)))


def reflect(t: FlatTangle) -> FlatTangle:
    """Mirror image about the horizontal axis."""
    nb, nt = len(t.bottom), len(t.top)

    def move(p: int) -> int:
        return nt + p if p < nb else p - nb

    partner = [0] * (nb + nt)
    for p, r in enumerate(t.partner):
        partner[move(p)] = move(r)
    return FlatTangle(t.top, t.bottom, tuple(partner), t.circles)


def compose(t1: FlatTangle, t2: FlatTangle) -> FlatTangle:
    """Stack ``t1`` on top of ``t2`` (bottom of ``t1`` glued to top of ``t2``)."""
    if t1.bottom != t2.top:
        raise BoundaryError(f"bottom {t1.bottom} of the upper tangle != top {t2.top} of the lower")
    n1, n2 = len(t1.partner), len(t2.partner)
    nb2 = len(t2.bottom)
    uf = UnionFind([("1", p) for p in range(n1)] + [("2", p) for p in range(n2)])
    for i, j in t1.pairs():
        uf.union(("1", i), ("1", j))
    for i, j in t2.pairs():
        uf.union(("2", i), ("2", j))
    for k in range(len(t1.bottom)):
        uf.union(("1", k), ("2", nb2 + k))
    # outer endpoints of the composite, in position order
    outer = [("2", p) for p in range(nb2)] + [("1", p) for p in range(len(t1.bottom), n1)]
    slot: dict = {}
    partner = [0] * len(outer)
    for idx, node in enumerate(outer):
        r = uf.find(node)
        if r in slot:
            other = slot.pop(r)
            partner[idx], partner[other] = other, idx
        else:
            slot[r] = idx
    if slot:
        raise TangleError("composite has an unpaired endpoint")
    outer_roots = {uf.find(x) for x in outer}
    middle = {uf.find(("1", k)) for k in range(len(t1.bottom))}
    closed = len(middle - outer_roots)
    return FlatTangle(t2.bottom, t1.top, tuple(partner), t1.circles + t2.circles + closed)


def identity_tangle(s: Sequence[int]) -> FlatTangle:
    s = check_points(s)
    n = len(s)
    partner = tuple(list(range(n, 2 * n)) + list(range(n)))
    return FlatTangle(s, s, partner, 0)


def elementary_tangle(kind: str, s: Sequence[int], i: int | None = None) -> FlatTangle:
    """The tangles ``Id``, ``Id_i^{i+1}``, ``Id_{i+1}^i``, ``cup^{i,i+1}``, ``cap_{i,i+1}``.

    ``kind`` is one of ``id``, ``id_shift_up``, ``id_shift_down``, ``cup``,
    ``cap``; ``s`` is the bottom point sequence.
    """
    s = check_points(s)
    if len(s) % 2:
        raise TangleError("bottom sequence must have even length")
    n = len(s)
    if kind == "id":
        return identity_tangle(s)
    if i is None:
        raise TangleError(f"{kind} needs an index i")
    if kind in ("id_shift_up", "id_shift_down"):
        src, dst = (i, i + 1) if kind == "id_shift_up" else (i + 1, i)
        if src not in s or dst in s:
            raise TangleError(f"{kind}({i}) needs {src} in s and {dst} not in s; s={s}")
        top = tuple(sorted(dst if x == src else x for x in s))
        return FlatTangle(s, top, identity_tangle(s).partner, 0)
    if kind == "cap":
        if i not in s or i + 1 not in s:
            raise TangleError(f"cap({i}) needs {i}, {i + 1} in s; s={s}")
        top = tuple(x for x in s if x not in (i, i + 1))
        p = s.index(i)
        partner = [0] * (n + len(top))
        partner[p], partner[p + 1] = p + 1, p
        others = [k for k in range(n) if k not in (p, p + 1)]
        for t_idx, k in enumerate(others):
            partner[k], partner[n + t_idx] = n + t_idx, k
        return FlatTangle(s, top, tuple(partner), 0)
    if kind == "cup":
        if i in s or i + 1 in s:
            raise TangleError(f"cup({i}) needs {i}, {i + 1} not in s; s={s}")
        top = tuple(sorted(s + (i, i + 1)))
        p = top.index(i)
        partner = [0] * (n + len(top))
        partner[n + p], partner[n + p + 1] = n + p + 1, n + p
        others = [k for k in range(len(top)) if k not in (p, p + 1)]
        for b_idx, k in enumerate(others):
            partner[b_idx], partner[n + k] = n + k, b_idx
        return FlatTangle(s, top, tuple(partner), 0)
    raise TangleError(f"unknown elementary tangle kind {kind!r}")


@dataclass(frozen=True)
class Closure:
    """The closed diagram ``W(b) T a`` as a graph.

    Nodes ``0 .. N-1`` are the endpoints of ``T`` (same positions as in the
    tangle); nodes ``N .. N+c-1`` stand for the ``c`` closed circles of ``T``.
    Every node has degree two except circle nodes, which are isolated.
    ``bottom_edge[(i, j)]`` / ``top_edge[(i, j)]`` give the edge index of the
    arc of ``a`` / ``W(b)`` joining bottom / top positions ``i < j``.
    """

    num_nodes: int
    edges: tuple[tuple[int, int], ...]
    bottom_edge: dict = field(compare=False)
    top_edge: dict = field(compare=False)
    partition: CirclePartition = field(compare=False)


def closure(t: FlatTangle, b: Matching | None, a: Matching | None) -> Closure:
    nb = len(t.bottom)
    if (a.points if a is not None else ()) != t.bottom:
        raise BoundaryError("bottom matching does not fit the tangle")
    if (b.points if b is not None else ()) != t.top:
        raise BoundaryError("top matching does not fit the tangle")
    edges = list(t.pairs())
    bottom_edge, top_edge = {}, {}
    if a is not None:
        for i, j in a.position_arcs:
            bottom_edge[(i, j)] = len(edges)
            edges.append((i, j))
    if b is not None:
        for i, j in b.position_arcs:
            top_edge[(i, j)] = len(edges)
            edges.append((nb + i, nb + j))
    n = len(t.partner) + t.circles
    return Closure(n, tuple(edges), bottom_edge, top_edge, _partition(n, edges))


def closure_circle_count(t: FlatTangle, b: Matching | None, a: Matching | None) -> int:
    return closure(t, b, a).partition.circle_count
