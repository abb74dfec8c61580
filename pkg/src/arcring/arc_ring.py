"""The graded rings H(s) and the spaces F(T) they act on.

``F(T)`` for a flat tangle ``T`` with bottom sequence ``s`` and top sequence
``t`` is the direct sum over ``b in B(t)``, ``a in B(s)`` of
``F(W(b) T a){m}``, ``2m = len(s)``.  A basis element is a triple
``(b_index, a_index, labels)`` with one Frobenius label per circle of
``W(b) T a`` (circles numbered by their smallest endpoint position; closed
circles of ``T`` come last).

The ring ``H(s)`` is ``F(Id_s)``; its product is the left action of ``H(s)``
on ``F(Id_s)``.  Both actions on a general ``F(T)`` contract the middle
matching against its mirror image, one saddle per arc.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache
from typing import Iterable, Sequence

from . import laurent
from .laurent import LaurentPoly, q_pow
from .planar import (
    Closure,
    FlatTangle,
    Matching,
    check_points,
    closure,
    enumerate_matchings,
    identity_tangle,
)
from .tqft import SurgerySchedule, TqftCombo, degree as label_degree, schedule_contraction

BasisKey = tuple[int, int, tuple[int, ...]]


class StructureError(ValueError):
    """Elements, rings or bimodules that do not fit together."""


class WeightError(ValueError):
    """A weight sequence is not admissible."""


def _remap(combo: TqftCombo, perm: Sequence[int], left: int, right: int) -> dict[BasisKey, int]:
    out = {}
    n = len(perm)
    for labels, c in combo.items():
        new = [0] * n
        for i, j in enumerate(perm):
            new[j] = labels[i]
        out[(left, right, tuple(new))] = c
    return out


class TangleSpace:
    """The graded abelian group ``F(T)`` with its (H(top), H(bottom)) actions."""

    def __init__(self, tangle: FlatTangle):
        self.tangle = tangle
        self.top_matchings = enumerate_matchings(tangle.top)
        self.bottom_matchings = enumerate_matchings(tangle.bottom)
        self._top_index = {b: i for i, b in enumerate(self.top_matchings)}
        self._bottom_index = {a: i for i, a in enumerate(self.bottom_matchings)}
        self.shift = tangle.m
        self._closures: dict[tuple[int, int], Closure] = {}
        self._left_plans: dict = {}
        self._right_plans: dict = {}
        self._basis: list[BasisKey] | None = None

    # -- blocks and basis -------------------------------------------------
    @property
    def left_ring(self) -> "ArcRing":
        return arc_ring(self.tangle.top)

    @property
    def right_ring(self) -> "ArcRing":
        return arc_ring(self.tangle.bottom)

    def top_index(self, b: Matching | int) -> int:
        return b if isinstance(b, int) else self._top_index[b]

    def bottom_index(self, a: Matching | int) -> int:
        return a if isinstance(a, int) else self._bottom_index[a]

    def closure(self, bi: int, ai: int) -> Closure:
        key = (bi, ai)
        c = self._closures.get(key)
        if c is None:
            c = closure(self.tangle, self.top_matchings[bi], self.bottom_matchings[ai])
            self._closures[key] = c
        return c

    def circles(self, bi: int, ai: int) -> int:
        return self.closure(bi, ai).partition.circle_count

    def blocks(self) -> Iterable[tuple[int, int]]:
        return itertools.product(range(len(self.top_matchings)), range(len(self.bottom_matchings)))

    def block_basis(self, bi: int, ai: int) -> list[BasisKey]:
        r = self.circles(bi, ai)
        return [(bi, ai, labels) for labels in itertools.product((0, 1), repeat=r)]

    def basis(self) -> list[BasisKey]:
        if self._basis is None:
            self._basis = [k for bi, ai in self.blocks() for k in self.block_basis(bi, ai)]
        return self._basis

    def degree(self, key: BasisKey) -> int:
        return label_degree(key[2]) + self.shift

    def graded_dim_block(self, b: Matching | int, a: Matching | int) -> LaurentPoly:
        """``q^m (q + q^-1)^r`` with ``r`` the number of circles of ``W(b)Ta``."""
        r = self.circles(self.top_index(b), self.bottom_index(a))
        return q_pow(self.shift) * laurent.QQ**r

    def graded_dim(self) -> LaurentPoly:
        total = laurent.ZERO
        for bi, ai in self.blocks():
            total = total + self.graded_dim_block(bi, ai)
        return total

    def element(self, terms: dict[BasisKey, int] | None = None) -> "ArcElement":
        return ArcElement(self, terms or {})

    def basis_element(self, key: BasisKey) -> "ArcElement":
        return ArcElement(self, {key: 1})

    # -- actions ----------------------------------------------------------
    def left_plan(self, ci: int, bi: int, ai: int, order=None) -> tuple[SurgerySchedule, list[int]]:
        """Contraction ``F(W(c)b) (x) F(W(b)Ta) -> F(W(c)Ta)``."""
        key = (ci, bi, ai, None if order is None else tuple(order))
        plan = self._left_plans.get(key)
        if plan is not None:
            return plan
        ring = self.left_ring
        upper = ring.closure(ci, bi)
        lower = self.closure(bi, ai)
        saddles = []
        for (p, q_), eu in upper.bottom_edge.items():
            el = lower.top_edge[(p, q_)]
            saddles.append(((p, q_), eu, len(upper.edges) + el))
        plan = _build_plan(upper, lower, saddles, self.closure(ci, ai), "l", order)
        self._left_plans[key] = plan
        return plan

    def right_plan(self, bi: int, ai: int, di: int, order=None) -> tuple[SurgerySchedule, list[int]]:
        """Contraction ``F(W(b)Ta) (x) F(W(a)d) -> F(W(b)Td)``."""
        key = (bi, ai, di, None if order is None else tuple(order))
        plan = self._right_plans.get(key)
        if plan is not None:
            return plan
        ring = self.right_ring
        upper = self.closure(bi, ai)
        lower = ring.closure(ai, di)
        saddles = []
        for (p, q_), eu in upper.bottom_edge.items():
            el = lower.top_edge[(p, q_)]
            saddles.append(((p, q_), eu, len(upper.edges) + el))
        plan = _build_plan(upper, lower, saddles, self.closure(bi, di), "u", order)
        self._right_plans[key] = plan
        return plan

    def left_act_basis(self, h: BasisKey, v: BasisKey) -> dict[BasisKey, int]:
        ci, bi2, hl = h
        bi, ai, vl = v
        if bi2 != bi:
            return {}
        sched, perm = self.left_plan(ci, bi, ai)
        return _remap(sched.apply_basis(hl + vl), perm, ci, ai)

    def right_act_basis(self, v: BasisKey, h: BasisKey) -> dict[BasisKey, int]:
        bi, ai, vl = v
        ai2, di, hl = h
        if ai2 != ai:
            return {}
        sched, perm = self.right_plan(bi, ai, di)
        return _remap(sched.apply_basis(vl + hl), perm, bi, di)

    def act(self, side: str, h: "ArcElement", v: "ArcElement") -> "ArcElement":
        """``h . v`` for ``side='left'`` or ``v . h`` for ``side='right'``."""
        if v.space is not self:
            raise StructureError("element does not belong to this space")
        if side == "left":
            if h.space is not self.left_ring:
                raise StructureError("left action needs an element of H(top)")
            fn = lambda hk, vk: self.left_act_basis(hk, vk)  # noqa: E731
        elif side == "right":
            if h.space is not self.right_ring:
                raise StructureError("right action needs an element of H(bottom)")
            fn = lambda hk, vk: self.right_act_basis(vk, hk)  # noqa: E731
        else:
            raise ValueError("side must be 'left' or 'right'")
        out: dict[BasisKey, int] = {}
        for hk, hc in h.terms.items():
            for vk, vc in v.terms.items():
                for k, c in fn(hk, vk).items():
                    out[k] = out.get(k, 0) + hc * vc * c
        return ArcElement(self, out)

    def to_json_basis(self) -> list[dict]:
        return [
            {
                "index": i,
                "top": self.top_matchings[b].to_json(),
                "bottom": self.bottom_matchings[a].to_json(),
                "labels": sum(x << j for j, x in enumerate(lab)),
                "degree": self.degree((b, a, lab)),
            }
            for i, (b, a, lab) in enumerate(self.basis())
        ]


def _build_plan(upper: Closure, lower: Closure, saddles, target: Closure, keep: str, order):
    nodes = [("u", k) for k in range(upper.num_nodes)] + [("l", k) for k in range(lower.num_nodes)]
    edges = [(("u", x), ("u", y)) for x, y in upper.edges]
    edges += [(("l", x), ("l", y)) for x, y in lower.edges]
    sched, groups = schedule_contraction(nodes, edges, saddles, order)
    where = {}
    for g_idx, g in enumerate(groups):
        for v in g:
            where[v] = g_idx
    perm = [-1] * len(groups)
    seen = set()
    for v, c in enumerate(target.partition.membership):
        if c in seen:
            continue
        seen.add(c)
        perm[where[(keep, v)]] = c
    if len(groups) != target.partition.circle_count or -1 in perm:
        raise StructureError("contraction result does not match the target diagram")
    return sched, perm


class ArcElement:
    """An integer combination of basis elements of some ``F(T)`` (or of a ring)."""

    __slots__ = ("space", "terms")

    def __init__(self, space: TangleSpace, terms: dict[BasisKey, int]):
        self.space = space
        self.terms = {k: c for k, c in terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "ArcElement") -> None:
        if other.space is not self.space:
            raise StructureError("elements live in different spaces")

    def __add__(self, other: "ArcElement") -> "ArcElement":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return ArcElement(self.space, out)

    def __neg__(self) -> "ArcElement":
        return ArcElement(self.space, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "ArcElement") -> "ArcElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ArcElement(self.space, {k: c * other for k, c in self.terms.items()})
        if not isinstance(other, ArcElement):
            return NotImplemented
        if isinstance(self.space, ArcRing) and self.space is other.space.left_ring:
            return other.space.act("left", self, other)
        if isinstance(other.space, ArcRing) and other.space is self.space.right_ring:
            return self.space.act("right", other, self)
        raise StructureError("these elements cannot be multiplied")

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, ArcElement):
            return NotImplemented
        return self.space is other.space and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.space), frozenset(self.terms.items())))

    def degrees(self) -> set[int]:
        return {self.space.degree(k) for k in self.terms}

    def __repr__(self) -> str:
        return f"ArcElement({len(self.terms)} terms)"


class ArcRing(TangleSpace):
    """``H(s)``: the arc ring over the point sequence ``s``."""

    def __init__(self, points: Sequence[int]):
        points = check_points(points)
        if len(points) % 2:
            raise StructureError("an arc ring needs an even number of points")
        super().__init__(identity_tangle(points))
        self.points = points
        self.m = len(points) // 2
        self.matchings = self.bottom_matchings

    @property
    def left_ring(self) -> "ArcRing":
        return self

    @property
    def right_ring(self) -> "ArcRing":
        return self

    def index(self, a: Matching | int) -> int:
        return self.bottom_index(a)

    def multiply(self, x: ArcElement, y: ArcElement) -> ArcElement:
        if x.space is not self or y.space is not self:
            raise StructureError("ring mismatch")
        return self.act("left", x, y)

    def multiply_basis(self, x: BasisKey, y: BasisKey) -> dict[BasisKey, int]:
        return self.left_act_basis(x, y)

    def idempotent(self, a: Matching | int) -> ArcElement:
        ai = self.index(a)
        return ArcElement(self, {(ai, ai, (0,) * self.m): 1})

    def unit(self) -> ArcElement:
        return ArcElement(self, {(ai, ai, (0,) * self.m): 1 for ai in range(len(self.matchings))})

    def chi(self, x: ArcElement) -> ArcElement:
        """The antiinvolution from mirroring ``W(b)a`` to ``W(a)b``.

        Both diagrams have the same circles as point sets and circles are
        numbered by their smallest point, so labels carry over unchanged.
        """
        if x.space is not self:
            raise StructureError("ring mismatch")
        return ArcElement(self, {(a, b, lab): c for (b, a, lab), c in x.terms.items()})

    def multiplication_table(self) -> list[dict]:
        """Products of all basis pairs with matching middle index."""
        basis = self.basis()
        index = {k: i for i, k in enumerate(basis)}
        rows = []
        for i, x in enumerate(basis):
            for j, y in enumerate(basis):
                if x[1] != y[0]:
                    continue
                prod = self.multiply_basis(x, y)
                rows.append({"left": i, "right": j, "terms": sorted([index[k], c] for k, c in prod.items())})
        return rows

    def table_json(self) -> str:
        return json.dumps(
            {"m": self.m, "points": list(self.points), "basis": self.to_json_basis(), "products": self.multiplication_table()},
            indent=None,
            sort_keys=True,
        )


@lru_cache(maxsize=None)
def arc_ring(points: Sequence[int] | int) -> ArcRing:
    """Shared ``H(s)``; an integer ``m`` means ``s = (1, ..., 2m)``."""
    if isinstance(points, int):
        points = tuple(range(1, 2 * points + 1))
    return ArcRing(tuple(points))


def s_of(weight: Sequence[int]) -> tuple[int, ...]:
    """1-based positions of the entries equal to 1."""
    return tuple(i + 1 for i, x in enumerate(weight) if x == 1)


def ring_to_weight(weight: Sequence[int]) -> ArcRing:
    """``H_lambda = H(s(lambda))``."""
    w = tuple(weight)
    if any(x not in (0, 1, 2) for x in w) or sum(w) % 2:
        raise WeightError(f"{w} is not an admissible weight")
    return arc_ring(s_of(w))


def relabel_element(x: ArcElement, target: ArcRing) -> ArcElement:
    """Transport along the canonical isomorphism ``H(s) = H(s')``."""
    if not isinstance(x.space, ArcRing) or x.space.m != target.m:
        raise StructureError("relabeling needs rings of the same size")
    return ArcElement(target, dict(x.terms))


def projective_degrees(ring: ArcRing, a: Matching | int) -> LaurentPoly:
    """Graded dimension of the balanced projective ``Q_a = P_a{-m}``."""
    ai = ring.index(a)
    total = laurent.ZERO
    for bi in range(len(ring.matchings)):
        total = total + laurent.QQ ** ring.circles(bi, ai)
    return total
