"""Flat-tangle bimodules, tensor products over arc rings, delooping.

``F(T)`` is a :class:`~arcring.arc_ring.TangleSpace`; this module adds the
tensor product ``F(T1) (x)_H F(T2)`` computed degreewise as a finitely
generated abelian group (generators ``x (x) y`` modulo ``xh (x) y - x (x) hy``),
and the combinatorial shortcut used everywhere else: composing with a
matching and removing closed circles.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache

from .arc_ring import StructureError, TangleSpace
from .laurent import LaurentPoly
from .planar import FlatTangle, Matching, compose, identity_tangle

TensorBlockKey = tuple[int, int, int]


@lru_cache(maxsize=4096)
def build_bimodule(tangle: FlatTangle) -> TangleSpace:
    """The (H(top), H(bottom))-bimodule ``F(T)``, cached per tangle."""
    return TangleSpace(tangle)


class IntegerLattice:
    """A sublattice of Z^n kept as sparse rows in echelon form.

    Rows are dicts ``{column: nonzero int}``.  Insertion uses gcd steps, which
    are unimodular, so the stored rows always span the lattice generated by
    everything inserted so far.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: dict[int, int]) -> None:
        r = {c: v for c, v in row.items() if v}
        while r:
            p = min(r)
            s = self.pivots.get(p)
            if s is None:
                if r[p] < 0:
                    r = {c: -v for c, v in r.items()}
                self.pivots[p] = r
                return
            a, b = s[p], r[p]
            if b % a == 0:
                f = b // a
                r = _axpy(r, s, -f)
                continue
            g, u, v = _xgcd(a, b)
            new = _lin(s, u, r, v)
            r = _lin(r, a // g, s, -(b // g))
            self.pivots[p] = new

    def unimodular(self) -> bool:
        """True if every pivot is +-1, i.e. Z^n / lattice is free."""
        return all(abs(r[p]) == 1 for p, r in self.pivots.items())

    def invariant_factors(self) -> list[int]:
        """Elementary divisors of the lattice (the nonzero diagonal of the SNF)."""
        if self.unimodular():
            return [1] * self.rank
        from sympy import Matrix, ZZ
        from sympy.matrices.normalforms import smith_normal_form

        cols = sorted({c for r in self.pivots.values() for c in r})
        where = {c: i for i, c in enumerate(cols)}
        rows = []
        for r in self.pivots.values():
            dense = [0] * len(cols)
            for c, v in r.items():
                dense[where[c]] = v
            rows.append(dense)
        snf = smith_normal_form(Matrix(rows), domain=ZZ)
        return [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        k, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _axpy(r: dict[int, int], s: dict[int, int], f: int) -> dict[int, int]:
    out = dict(r)
    for c, v in s.items():
        t = out.get(c, 0) + f * v
        if t:
            out[c] = t
        else:
            out.pop(c, None)
    return out


def _lin(r: dict[int, int], a: int, s: dict[int, int], b: int) -> dict[int, int]:
    out = {c: a * v for c, v in r.items()} if a else {}
    return _axpy(out, s, b) if b else {c: v for c, v in out.items() if v}


@dataclass
class TensorBlock:
    generators: int
    lattice: IntegerLattice = field(default_factory=IntegerLattice)

    @property
    def rank(self) -> int:
        return self.generators - self.lattice.rank

    def torsion(self) -> list[int]:
        return [d for d in self.lattice.invariant_factors() if d > 1]


class TensorResult:
    """Graded ranks and torsion of ``F(T1) (x)_H F(T2)`` per outer block and degree."""

    def __init__(self, blocks: dict[TensorBlockKey, TensorBlock], shape: tuple[int, int]):
        self.blocks = blocks
        self.shape = shape

    def graded_rank(self, e: int, f: int) -> LaurentPoly:
        return LaurentPoly({d: b.rank for (e2, f2, d), b in self.blocks.items() if (e2, f2) == (e, f)})

    def graded_rank_total(self) -> LaurentPoly:
        return LaurentPoly((d, b.rank) for (_, _, d), b in self.blocks.items())

    def torsion(self) -> dict[TensorBlockKey, list[int]]:
        out = {}
        for key, b in self.blocks.items():
            t = b.torsion()
            if t:
                out[key] = t
        return out

    def torsion_free(self) -> bool:
        return not self.torsion()

    def by_degree(self) -> dict[int, dict]:
        ranks: Counter = Counter()
        tors: dict[int, list[int]] = defaultdict(list)
        for (_, _, d), b in self.blocks.items():
            ranks[d] += b.rank
            tors[d].extend(b.torsion())
        return {d: {"rank": ranks[d], "torsion": sorted(tors[d])} for d in sorted(ranks) if ranks[d] or tors[d]}

    def to_json(self) -> str:
        return json.dumps({str(d): v for d, v in self.by_degree().items()}, sort_keys=True)


def tensor_over(left: TangleSpace, right: TangleSpace) -> TensorResult:
    """``left (x)_H right`` with ``H`` the ring between them, degree by degree."""
    if left.right_ring is not right.left_ring:
        raise StructureError("bimodules do not share a middle ring")
    ring = left.right_ring
    left_by_bottom: dict[int, list] = defaultdict(list)
    for x in left.basis():
        left_by_bottom[x[1]].append(x)
    right_by_top: dict[int, list] = defaultdict(list)
    for y in right.basis():
        right_by_top[y[0]].append(y)

    blocks: dict[TensorBlockKey, TensorBlock] = {}
    cols: dict = {}
    counts: Counter = Counter()
    for b, xs in left_by_bottom.items():
        for x in xs:
            dx = left.degree(x)
            for y in right_by_top.get(b, ()):
                key = (x[0], y[1], dx + right.degree(y))
                cols[(x, y)] = counts[key]
                counts[key] += 1
    for key, n in counts.items():
        blocks[key] = TensorBlock(n)

    for h in ring.basis():
        dh = ring.degree(h)
        for x in left_by_bottom.get(h[0], ()):
            xh = left.right_act_basis(x, h)
            dx = left.degree(x)
            for y in right_by_top.get(h[1], ()):
                hy = right.left_act_basis(h, y)
                row: dict[int, int] = {}
                for k, c in xh.items():
                    j = cols[(k, y)]
                    row[j] = row.get(j, 0) + c
                for k, c in hy.items():
                    j = cols[(x, k)]
                    row[j] = row.get(j, 0) - c
                if any(row.values()):
                    blocks[(x[0], y[1], dx + dh + right.degree(y))].lattice.add(row)
    return TensorResult(blocks, (len(left.top_matchings), len(right.bottom_matchings)))


def graded_ranks(space: TangleSpace) -> dict[tuple[int, int], LaurentPoly]:
    return {(b, a): space.graded_dim_block(b, a) for b, a in space.blocks()}


@dataclass
class CompositionReport:
    upper: FlatTangle
    lower: FlatTangle
    ranks_match: bool
    torsion_free: bool
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.ranks_match and self.torsion_free

    def to_dict(self) -> dict:
        return {
            "upper": self.upper.to_json(),
            "lower": self.lower.to_json(),
            "ranks_match": self.ranks_match,
            "torsion_free": self.torsion_free,
            "mismatches": self.mismatches,
        }


def composition_check(t1: FlatTangle, t2: FlatTangle) -> CompositionReport:
    """Compare ``F(t1) (x) F(t2)`` with ``F(t1 t2)`` block by block."""
    res = tensor_over(build_bimodule(t1), build_bimodule(t2))
    comp = build_bimodule(compose(t1, t2))
    mismatches = []
    for e, f in comp.blocks():
        want = comp.graded_dim_block(e, f)
        got = res.graded_rank(e, f)
        if want != got:
            mismatches.append({"block": [e, f], "expected": str(want), "got": str(got)})
    return CompositionReport(t1, t2, not mismatches, res.torsion_free(), mismatches)


def deloop(tangle: FlatTangle) -> tuple[FlatTangle, Counter]:
    """Strip closed circles; each contributes a factor ``{1} + {-1}``."""
    shifts: Counter = Counter({0: 1})
    for _ in range(tangle.circles):
        nxt: Counter = Counter()
        for s, c in shifts.items():
            nxt[s + 1] += c
            nxt[s - 1] += c
        shifts = nxt
    return tangle.without_circles(), shifts


def shifts_poly(shifts: Counter) -> LaurentPoly:
    return LaurentPoly(dict(shifts))


@dataclass(frozen=True)
class ProjectiveDecomposition:
    """``F(T) (x) Q_a = sum over shifts s of Q_b{s}``."""

    matching: Matching
    shifts: tuple[tuple[int, int], ...]

    def summands(self) -> list[tuple[Matching, int]]:
        return [(self.matching, s) for s, c in self.shifts for _ in range(c)]

    def poly(self) -> LaurentPoly:
        return LaurentPoly(dict(self.shifts))


def decompose_on_projective(tangle: FlatTangle, a: Matching) -> ProjectiveDecomposition:
    if a.points != tangle.bottom:
        raise StructureError("matching does not fit the bottom of the tangle")
    composite, shifts = deloop(compose(tangle, a.as_tangle()))
    return ProjectiveDecomposition(composite.as_matching(), tuple(sorted(shifts.items())))


def projective_space(a: Matching) -> TangleSpace:
    """``Q_a`` as the left module ``F(a)`` (a viewed as a tangle with no bottom)."""
    return build_bimodule(a.as_tangle())


def projective_graded_dims(a: Matching) -> dict[int, LaurentPoly]:
    """Graded dimension of ``1_b Q_a`` for each ``b`` index."""
    sp = projective_space(a)
    return {b: sp.graded_dim_block(b, 0) for b in range(len(sp.top_matchings))}


def decomposition_oracle(tangle: FlatTangle, a: Matching) -> bool:
    """Check the combinatorial decomposition against a tensor-product computation."""
    res = tensor_over(build_bimodule(tangle), projective_space(a))
    if not res.torsion_free():
        return False
    dec = decompose_on_projective(tangle, a)
    q_b = projective_space(dec.matching)
    mult = dec.poly()
    for e in range(len(q_b.top_matchings)):
        if res.graded_rank(e, 0) != mult * q_b.graded_dim_block(e, 0):
            return False
    return True


def elementary_types(max_m: int) -> list[FlatTangle]:
    """Identity, cap and cup tangles with both boundaries of size at most ``2 max_m``.

    Boundaries use standard coordinates ``1..2k``; the shift tangles are
    combinatorially identities and are covered by them.
    """
    out = []
    for m in range(max_m + 1):
        s = tuple(range(1, 2 * m + 1))
        out.append(identity_tangle(s))
        n = 2 * m
        for j in range(n - 1):
            # cap joining bottom positions j, j+1
            top = tuple(range(1, n - 1))
            partner = [0] * (n + n - 2)
            partner[j], partner[j + 1] = j + 1, j
            others = [k for k in range(n) if k not in (j, j + 1)]
            for t, k in enumerate(others):
                partner[k], partner[n + t] = n + t, k
            out.append(FlatTangle(s, top, tuple(partner), 0))
        if m + 1 <= max_m:
            for j in range(n + 1):
                # cup joining top positions j, j+1
                top = tuple(range(1, n + 3))
                partner = [0] * (n + n + 2)
                partner[n + j], partner[n + j + 1] = n + j + 1, n + j
                others = [k for k in range(n + 2) if k not in (j, j + 1)]
                for b, k in enumerate(others):
                    partner[b], partner[n + k] = n + k, b
                out.append(FlatTangle(s, top, tuple(partner), 0))
    return out


def elementary_pairs(max_m: int) -> list[tuple[FlatTangle, FlatTangle]]:
    types = elementary_types(max_m)
    return [(t1, t2) for t1 in types for t2 in types if t1.bottom == t2.top]
