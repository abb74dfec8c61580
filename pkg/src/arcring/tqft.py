"""The Frobenius algebra A = Z[X]/(X^2) and evaluation of saddle cobordisms.

A circle is labeled ``ONE`` (degree -1) or ``X`` (degree +1).  A labeled
configuration of ``r`` circles is a tuple of labels; a linear combination of
those (an element of ``A^{(x) r}``) is a ``dict`` from label tuples to nonzero
integer coefficients.

Cobordisms are sequences of saddles on a graph whose components are circles.
After every saddle the components are recomputed from scratch, and a step
records how circle indices travel through it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import IntEnum
from typing import Hashable, Sequence

from .planar import UnionFind

Labels = tuple[int, ...]
TqftCombo = dict[Labels, int]


class FrobeniusLabel(IntEnum):
    ONE = 0
    X = 1


ONE = FrobeniusLabel.ONE
X = FrobeniusLabel.X


class SurgeryError(ValueError):
    """A saddle schedule does not fit the diagram it is applied to."""


def label_degree(x: int) -> int:
    return 1 if x else -1


def degree(labels: Sequence[int]) -> int:
    """Internal degree: #X - #ONE."""
    return sum(1 if x else -1 for x in labels)


def merge(x: int, y: int) -> dict[int, int]:
    """Multiplication A (x) A -> A."""
    if x and y:
        return {}
    return {X if (x or y) else ONE: 1}


def split(x: int) -> dict[tuple[int, int], int]:
    """Comultiplication: 1 -> 1(x)X + X(x)1, X -> X(x)X."""
    if x:
        return {(X, X): 1}
    return {(ONE, X): 1, (X, ONE): 1}


def trace(x: int) -> int:
    """The counit: tr(1) = 0, tr(X) = 1."""
    return 1 if x else 0


def unit() -> FrobeniusLabel:
    """Birth of a circle, labeled 1."""
    return ONE


@dataclass(frozen=True)
class SurgeryStep:
    """One saddle.

    ``carry[i]`` is the index after the step of circle ``i`` before it, or -1
    for the circle(s) the saddle touches.  ``inputs`` are the touched circles
    before the step, ``outputs`` the circles they become.  Two inputs and one
    output is a merge; one input and two outputs a split.
    """

    arc: Hashable
    carry: tuple[int, ...]
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    n_after: int

    @property
    def kind(self) -> str:
        return "merge" if len(self.inputs) == 2 else "split"


class SurgerySchedule:
    """An ordered list of saddles, one per contracted arc."""

    def __init__(self, steps: Sequence[SurgeryStep], n_before: int, n_after: int):
        self.steps = tuple(steps)
        self.n_before = n_before
        self.n_after = n_after
        self._cache: dict[Labels, TqftCombo] = {}

    def __len__(self) -> int:
        return len(self.steps)

    def arcs(self) -> list:
        return [s.arc for s in self.steps]

    def to_json(self) -> str:
        return json.dumps([s.arc if not isinstance(s.arc, tuple) else list(s.arc) for s in self.steps])

    def apply_basis(self, labels: Labels) -> TqftCombo:
        got = self._cache.get(labels)
        if got is None:
            got = evaluate_contraction({labels: 1}, self)
            self._cache[labels] = got
        return got


def _components(nodes: Sequence[Hashable], edges: dict) -> tuple[list[list], dict]:
    uf = UnionFind(nodes)
    for u, v in edges.values():
        uf.union(u, v)
    groups = uf.groups(nodes)
    where = {}
    for c, g in enumerate(groups):
        for v in g:
            where[v] = c
    return groups, where


def schedule_contraction(
    nodes: Sequence[Hashable],
    edges: Sequence[tuple[Hashable, Hashable]],
    saddles: Sequence[tuple[Hashable, int, int]],
    order: Sequence[int] | None = None,
) -> tuple[SurgerySchedule, list[list]]:
    """Build the schedule for a sequence of saddles on a closed diagram.

    ``nodes`` is the node order used to number circles (by first node).
    ``saddles`` holds ``(arc_id, e1, e2)``: the saddle removes edges
    ``e1 = (x1, y1)`` and ``e2 = (x2, y2)`` and adds ``(x1, x2)``, ``(y1, y2)``.
    ``order`` permutes the saddles.  Returns the schedule and the circles
    (as node lists) of the final diagram.
    """
    live = dict(enumerate(edges))
    groups, where = _components(nodes, live)
    n0 = len(groups)
    fresh = len(edges)
    steps = []
    seq = [saddles[k] for k in order] if order is not None else list(saddles)
    for arc, e1, e2 in seq:
        if e1 not in live or e2 not in live or e1 == e2:
            raise SurgeryError(f"saddle {arc!r} refers to edges that are not present")
        (x1, y1), (x2, y2) = live.pop(e1), live.pop(e2)
        touched = sorted({where[x1], where[x2]})
        live[fresh] = (x1, x2)
        live[fresh + 1] = (y1, y2)
        fresh += 2
        new_groups, new_where = _components(nodes, live)
        carry = []
        for c, g in enumerate(groups):
            carry.append(-1 if c in touched else new_where[g[0]])
        outputs = sorted({new_where[x1], new_where[y1]})
        if len(touched) == 2 and len(outputs) != 1:
            raise SurgeryError("merge saddle did not produce one circle")
        if len(touched) == 1 and len(outputs) != 2:
            raise SurgeryError("split saddle did not produce two circles")
        steps.append(SurgeryStep(arc, tuple(carry), tuple(touched), tuple(outputs), len(new_groups)))
        groups, where = new_groups, new_where
    return SurgerySchedule(steps, n0, len(groups)), groups


def _apply_step(v: TqftCombo, step: SurgeryStep) -> TqftCombo:
    out: TqftCombo = {}
    n = step.n_after
    for labels, coeff in v.items():
        base = [0] * n
        for i, j in enumerate(step.carry):
            if j >= 0:
                base[j] = labels[i]
        if len(step.inputs) == 2:
            a, b = step.inputs
            (o,) = step.outputs
            for lab, c in merge(labels[a], labels[b]).items():
                new = list(base)
                new[o] = lab
                key = tuple(new)
                out[key] = out.get(key, 0) + coeff * c
        else:
            (a,) = step.inputs
            o1, o2 = step.outputs
            for (l1, l2), c in split(labels[a]).items():
                new = list(base)
                new[o1], new[o2] = l1, l2
                key = tuple(new)
                out[key] = out.get(key, 0) + coeff * c
    return {k: c for k, c in out.items() if c}


def evaluate_contraction(v: TqftCombo, schedule: SurgerySchedule) -> TqftCombo:
    """Push a linear combination of labelings through every saddle."""
    for labels in v:
        if len(labels) != schedule.n_before:
            raise SurgeryError(
                f"labeling has {len(labels)} circles, schedule expects {schedule.n_before}"
            )
    for step in schedule.steps:
        v = _apply_step(v, step)
    return v
