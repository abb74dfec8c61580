"""The complexes Sigma_i and their classes in the Grothendieck group.

On a weight with ``(lambda_i, lambda_{i+1}) = (1,1)``, Sigma_i is the
two-term complex ``F_i E_i {1} -> Id`` whose differential is the saddle
turning the cap-then-cup tangle into two vertical strands.  On every other
weight it is the relabeling equivalence with a cohomological and grading
shift ``x = max(0, lambda_i - lambda_{i+1})``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arc_ring import ArcRing, BasisKey, TangleSpace, arc_ring
from .bimodule import build_bimodule, decompose_on_projective
from .k0 import K0Operator, Vec, _vadd, k0_space, sigma_k0
from .laurent import LaurentPoly
from .planar import FlatTangle, compose, elementary_tangle
from .slnaction import Weight, admissible_weights
from .tqft import schedule_contraction


@dataclass(frozen=True)
class ShiftFunctorDesc:
    """Sigma_i on a weight other than (1,1): relabel to ``pi_i lambda``, shift by x."""

    source: Weight
    target: Weight
    x: int

    def k0_coefficient(self) -> LaurentPoly:
        return LaurentPoly.monomial(self.x, (-1) ** self.x)


@dataclass
class ComplexTerm:
    degree: int
    space: TangleSpace
    shift: int
    tangle: FlatTangle


@dataclass
class BimoduleComplex:
    """Terms by cohomological degree and the differentials between neighbours.

    ``differentials[j]`` maps term ``j`` to term ``j+1`` and is stored as
    ``{source basis key: {target basis key: coefficient}}``.
    """

    weight: Weight
    i: int
    terms: list[ComplexTerm]
    differentials: list[dict[BasisKey, dict[BasisKey, int]]] = field(default_factory=list)


def fe_tangle(lam: Weight, i: int) -> FlatTangle:
    """Cap at ``(i, i+1)`` followed by the cup back: the tangle of ``F_i E_i``."""
    cap = elementary_tangle("cap", lam.s, i)
    cup = elementary_tangle("cup", cap.top, i)
    return compose(cup, cap)


def _saddle_map(t: TangleSpace, target: ArcRing, p: int, key: BasisKey) -> dict[BasisKey, int]:
    bi, ai, labels = key
    cl = t.closure(bi, ai)
    nb = t.tangle.nb
    e1 = cl.edges.index((p, p + 1))
    e2 = cl.edges.index((nb + p, nb + p + 1))
    sched, groups = schedule_contraction(list(range(cl.num_nodes)), cl.edges, [("saddle", e1, e2)])
    tgt = target.closure(bi, ai)
    perm = [tgt.partition.membership[g[0]] for g in groups]
    out: dict[BasisKey, int] = {}
    for lab, c in sched.apply_basis(labels).items():
        new = [0] * len(perm)
        for idx, j in enumerate(perm):
            new[j] = lab[idx]
        out[(bi, ai, tuple(new))] = c
    return out


def sigma_complex(i: int, lam: Weight) -> BimoduleComplex | ShiftFunctorDesc:
    if not 1 <= i <= lam.n - 1:
        raise ValueError(f"index {i} out of range for n={lam.n}")
    if lam.pair(i) != (1, 1):
        return ShiftFunctorDesc(lam, lam.transposed(i), max(0, lam[i] - lam[i + 1]))
    t = fe_tangle(lam, i)
    src = build_bimodule(t)
    ring = arc_ring(lam.s)
    p = lam.s.index(i)
    d = {key: _saddle_map(src, ring, p, key) for key in src.basis()}
    terms = [ComplexTerm(-1, src, 1, t), ComplexTerm(0, ring, 0, ring.tangle)]
    return BimoduleComplex(lam, i, terms, [d])


@dataclass
class ComplexReport:
    checks: dict = field(default_factory=dict)

    def record(self, name: str, ok: bool) -> None:
        self.checks[name] = self.checks.get(name, True) and ok

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _compose_maps(d2: dict, d1: dict) -> dict:
    out = {}
    for k, v in d1.items():
        acc: dict = {}
        for mid, c in v.items():
            for tgt, c2 in d2.get(mid, {}).items():
                acc[tgt] = acc.get(tgt, 0) + c * c2
        out[k] = {t: c for t, c in acc.items() if c}
    return out


def _apply_map(d: dict, combo: dict) -> dict:
    acc: dict = {}
    for k, c in combo.items():
        for t, c2 in d.get(k, {}).items():
            acc[t] = acc.get(t, 0) + c * c2
    return {t: c for t, c in acc.items() if c}


def check_complex(c: BimoduleComplex | ShiftFunctorDesc) -> ComplexReport:
    """d^2 = 0, degree preservation and compatibility with both ring actions."""
    rep = ComplexReport()
    if isinstance(c, ShiftFunctorDesc):
        rep.record("shift-nonnegative", c.x >= 0)
        return rep
    for j, d in enumerate(c.differentials):
        src, dst = c.terms[j], c.terms[j + 1]
        if j + 1 < len(c.differentials):
            dd = _compose_maps(c.differentials[j + 1], d)
            rep.record("d-squared", not any(dd.values()))
        for key, img in d.items():
            dsrc = src.space.degree(key) + src.shift
            rep.record("degree", all(dst.space.degree(t) + dst.shift == dsrc for t in img))
        left, right = src.space.left_ring, src.space.right_ring
        for key in src.space.basis():
            for h in left.basis():
                hv = src.space.left_act_basis(h, key)
                lhs = _apply_map(d, hv)
                rhs: dict = {}
                for t, cc in d[key].items():
                    for t2, c2 in dst.space.left_act_basis(h, t).items():
                        rhs[t2] = rhs.get(t2, 0) + cc * c2
                rep.record("left-linear", lhs == {t: v for t, v in rhs.items() if v})
            for h in right.basis():
                vh = src.space.right_act_basis(key, h)
                lhs = _apply_map(d, vh)
                rhs = {}
                for t, cc in d[key].items():
                    for t2, c2 in dst.space.right_act_basis(t, h).items():
                        rhs[t2] = rhs.get(t2, 0) + cc * c2
                rep.record("right-linear", lhs == {t: v for t, v in rhs.items() if v})
    return rep


def differential_hits_idempotents(c: BimoduleComplex) -> bool:
    """``1_a`` is the image of a basis element whenever ``a`` has the arc ``(i, i+1)``."""
    ring = c.terms[-1].space
    d = c.differentials[-1]
    p = c.weight.s.index(c.i)
    images = [img for img in d.values() if len(img) == 1]
    hit = {next(iter(img)) for img in images if next(iter(img.values())) == 1}
    wanted = [a for a, m in enumerate(ring.matchings) if (p, p + 1) in m.position_arcs]
    return bool(wanted) and all((a, a, (0,) * ring.m) in hit for a in wanted)


def euler_characteristic(i: int, n: int, k: int) -> K0Operator:
    """Alternating grading-weighted class of Sigma_i, column by column."""
    space = k0_space(n, k)
    cols: dict = {}
    for lam in admissible_weights(n, k):
        c = sigma_complex(i, lam)
        for a in lam.matchings():
            if isinstance(c, ShiftFunctorDesc):
                b = a.relabel(c.target.s)
                cols[(lam, a)] = {(c.target, b): c.k0_coefficient()}
                continue
            v: Vec = {}
            for term in c.terms:
                dec = decompose_on_projective(term.tangle, a)
                sign = (-1) ** term.degree
                for s, mult in dec.shifts:
                    v = _vadd(v, {(lam, dec.matching): LaurentPoly.monomial(s + term.shift, sign * mult)})
            cols[(lam, a)] = v
    return K0Operator(space, cols, f"chi(Sigma{i})")


def euler_agrees(i: int, n: int, k: int) -> dict[Weight, bool]:
    chi = euler_characteristic(i, n, k)
    sig = sigma_k0(i, n, k)
    space = k0_space(n, k)
    return {lam: all(chi.column(key) == sig.column(key) for key in space.blocks[lam]) for lam in space.weights}
