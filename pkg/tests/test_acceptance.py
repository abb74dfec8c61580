"""Acceptance checks, one per criterion.

Each criterion is a function returning ``(ok, detail)``.  Under pytest the
outcome of every criterion is collected in ``ACCEPTANCE_RESULTS`` and the
conftest hook prints one PASS/FAIL line per criterion after the run.  Run
the file directly (``python tests/test_acceptance.py``) to get the same
twelve lines without pytest.
"""

from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from arcring import planar  # noqa: E402
from arcring.arc_ring import arc_ring  # noqa: E402
from arcring.bimodule import composition_check, elementary_pairs  # noqa: E402
from arcring.braid import (  # noqa: E402
    BimoduleComplex,
    check_complex,
    differential_hits_idempotents,
    euler_agrees,
    sigma_complex,
)
from arcring.k0 import (  # noqa: E402
    QREL_FAMILIES,
    bar_check,
    bilinear_form,
    braid_check,
    canonical_basis_check,
    gram_matrix,
    k0_space,
    operator_matrix,
    rho_check,
    verify_qrel,
)
from arcring.laurent import QQ, ZERO, q_pow, quantum_integer  # noqa: E402
from arcring.planar import Matching, catalan, compose, elementary_tangle, enumerate_matchings  # noqa: E402
from arcring.slnaction import (  # noqa: E402
    RELATIONS,
    E,
    F,
    ProjectiveOrbit,
    Weight,
    adjunction_check,
    admissible_weights,
    check_presentation,
    monomial_presentation,
    parse_word,
    verify_relation,
)

from oracles import ssyt_weight_counts, trace_circles, weyl_dimension  # noqa: E402
from test_arc_ring import check_ring_axioms  # noqa: E402
from test_tqft import order_independent  # noqa: E402

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str, str, float]] = {}
CRITERIA: dict[int, tuple[str, object]] = {}


def criterion(number: int, title: str):
    def register(fn):
        CRITERIA[number] = (title, fn)
        return fn

    return register


def nk_pairs(max_n: int):
    return [(n, k) for n in range(2, max_n + 1) for k in range(1, n)]


def first_failures(rep, limit=2):
    return {f: e["failures"][:limit] for f, e in rep.checks.items() if e["failures"]}


@criterion(1, "Catalan enumeration m=0..8")
def catalan_counts():
    planar._positional_matchings.cache_clear()
    start = time.perf_counter()
    counts = [len(enumerate_matchings(m)) for m in range(9)]
    elapsed = time.perf_counter() - start
    want = [1, 1, 2, 5, 14, 42, 132, 429, 1430]
    ok = counts == want and [catalan(m) for m in range(9)] == want and elapsed < 1.0
    return ok, f"counts {counts} in {elapsed:.3f}s"


@criterion(2, "Arc ring axioms, exhaustive m<=3 and 10^4 seeded triples at m=4")
def ring_axioms():
    clean = {"associativity": 0, "grading": 0, "negative": 0}
    bad = {m: check_ring_axioms(m) for m in (1, 2, 3)}
    ring = arc_ring(4)
    rng = random.Random(2024)
    basis = ring.basis()
    by_left: dict = {}
    for key in basis:
        by_left.setdefault(key[0], []).append(key)
    triples = []
    for _ in range(10_000):
        x = rng.choice(basis)
        y = rng.choice(by_left[x[1]])
        z = rng.choice(by_left[y[1]])
        triples.append((x, y, z))
    bad[4] = check_ring_axioms(4, triples)
    unit_failures = 0
    for m in (1, 2, 3, 4):
        r = arc_ring(m)
        unit = r.unit()
        idem = [r.idempotent(a) for a in range(len(r.matchings))]
        unit_failures += sum(e * e != e for e in idem)
        for key in r.basis():
            x = r.basis_element(key)
            unit_failures += not (unit * x == x == x * unit)
            unit_failures += not (idem[key[0]] * x == x == x * idem[key[1]])
    ok = all(v == clean for v in bad.values()) and unit_failures == 0
    return ok, f"failures per m {bad}, unit/idempotent failures {unit_failures}"


@criterion(3, "Surgery order independence, m<=3")
def surgery_order():
    results = {m: order_independent(m) for m in (1, 2, 3)}
    ok = all(f == 0 and c > 0 for c, f in results.values())
    return ok, ", ".join(f"m={m}: {c} evaluations, {f} disagree" for m, (c, f) in results.items())


@criterion(4, "Tensor products of tangle bimodules match composition")
def composition_theorem():
    pairs = elementary_pairs(3)
    reports = [composition_check(t1, t2) for t1, t2 in pairs]
    cap = elementary_tangle("cap", (1, 2, 3, 4, 5, 6), 4)
    cup = elementary_tangle("cup", (3, 4, 5, 6), 1)
    cup2 = elementary_tangle("cup", (3, 6), 1)
    cap2 = elementary_tangle("cap", (3, 4, 5, 6), 4)
    isotopic = compose(cap, cup).canonical() == compose(cup2, cap2).canonical()
    far = [composition_check(cap, cup), composition_check(cup2, cap2)]
    failed = sum(not r.ok for r in reports + far)
    ok = len(pairs) == 146 and failed == 0 and isotopic
    return ok, f"{len(pairs)} elementary pairs plus both far cap/cup orders, {failed} failures, isotopic={isotopic}"


@criterion(5, "Functor isomorphisms on projective orbits, n<=6")
def functor_relations():
    cases = mismatches = 0
    for n, k in nk_pairs(6):
        for rel in RELATIONS:
            rep = verify_relation(rel, n, k)
            cases += rep.cases_checked
            mismatches += len(rep.mismatches)
    return mismatches == 0 and cases > 0, f"{len(RELATIONS)} relations, {cases} cases, {mismatches} mismatches"


@criterion(6, "Adjunctions in Hom graded rank, n<=4")
def adjunctions():
    pairs = mismatches = 0
    for n, k in nk_pairs(4):
        for i in range(1, n):
            rep = adjunction_check(i, n, k)
            pairs += rep.pairs_checked
            mismatches += len(rep.mismatches)
    return mismatches == 0 and pairs > 0, f"{pairs} projective pairs, {mismatches} mismatches"


@criterion(7, "Quantum group relations on K0, n<=6")
def quantum_relations():
    failures = {}
    covered = set()
    cartan_bad = 0
    for n, k in nk_pairs(6):
        rep = verify_qrel(n, k)
        covered |= {f for f, e in rep.checks.items() if e["cases"]}
        if not rep.ok:
            failures[(n, k)] = first_failures(rep)
        space = k0_space(n, k)
        for i in range(1, n):
            comm = operator_matrix(E(i), n, k) @ operator_matrix(F(i), n, k) - operator_matrix(F(i), n, k) @ operator_matrix(E(i), n, k)
            for key in space.basis:
                lam = key[0]
                want = quantum_integer(lam[i] - lam[i + 1])
                got = comm.column(key)
                cartan_bad += got != ({key: want} if not want.is_zero() else {})
    ok = not failures and cartan_bad == 0 and covered == set(QREL_FAMILIES)
    return ok, f"{len(covered)}/{len(QREL_FAMILIES)} families exercised, failing (n,k): {sorted(failures)}, commutator mismatches {cartan_bad}"


@criterion(8, "Weight space dimensions against tableaux and the Weyl formula, n<=6")
def weight_dimensions():
    bad = []
    for n, k in nk_pairs(6):
        space = k0_space(n, k)
        counts = ssyt_weight_counts(n, k)
        ranks = {lam.entries: len(space.blocks[lam]) for lam in space.weights}
        if any(ranks[e] != catalan(Weight(e).m) for e in ranks) or ranks != counts or len(space) != weyl_dimension(n, k):
            bad.append((n, k))
    return not bad, f"{len(nk_pairs(6))} representations, mismatches at {bad}"


def _in_negative(p) -> bool:
    return p.is_zero() or max(p.coeffs) <= -1


@criterion(9, "Bilinear form: circle formula, triangularity, orthogonality, contravariance")
def bilinear():
    formula_bad = tri_bad = 0
    weights = [lam for n in range(2, 7) for k in range(1, n) for lam in admissible_weights(n, k)]
    weights.append(Weight((1,) * 8))
    for lam in weights:
        g = gram_matrix(lam)
        ms = lam.matchings()
        for i, a in enumerate(ms):
            for j, b in enumerate(ms):
                r = trace_circles(a.partner, b.partner)
                formula_bad += g[i][j] != QQ**r * q_pow(-lam.m)
                p = g[i][j]
                tri_bad += not (_in_negative(p - 1) if i == j else _in_negative(p))
    cross_bad = rho_bad = 0
    for n, k in nk_pairs(4):
        space = k0_space(n, k)
        vecs = [space.unit_vector(key) for key in space.basis]
        for x, kx in zip(vecs, space.basis):
            for y, ky in zip(vecs, space.basis):
                if kx[0] != ky[0]:
                    cross_bad += bilinear_form(x, y) != ZERO
        rho_bad += not rho_check(n, k).ok
    ok = formula_bad == tri_bad == cross_bad == rho_bad == 0
    return ok, (f"{len(weights)} weights up to m=4: formula {formula_bad}, triangularity {tri_bad}, "
                f"cross-weight {cross_bad}, contravariance {rho_bad} failures")


@criterion(10, "Canonical basis: bar invariance and monomial presentations, n<=5")
def canonical_basis():
    failing = []
    presented = 0
    for n, k in nk_pairs(5):
        rep = canonical_basis_check(n, k)
        if not rep.ok:
            failing.append((n, k))
        for lam in admissible_weights(n, k):
            for a in lam.matchings():
                presented += check_presentation(lam, a, monomial_presentation(lam, a))
    target = Weight((1, 1, 1, 0, 2, 1))
    a = Matching.from_arcs(target.s, [(1, 6), (2, 3)])
    worked = ProjectiveOrbit.highest(6, 3).apply_word(parse_word("F2 F4^(2) F3^(2) F5 F1 F4 F2 F3"))
    worked_ok = worked == ProjectiveOrbit.projective(target, a)
    total = sum(len(lam.matchings()) for n, k in nk_pairs(5) for lam in admissible_weights(n, k))
    ok = not failing and presented == total and worked_ok
    return ok, f"{presented}/{total} presentations round-trip, failing (n,k) {failing}, worked word exact={worked_ok}"


@criterion(11, "Braid group action and the complexes lifting it")
def braid():
    failing = [(n, k) for n, k in nk_pairs(5) if not braid_check(n, k).ok]
    euler_bad = [(n, k, i) for n, k in nk_pairs(5) for i in range(1, n) if not all(euler_agrees(i, n, k).values())]
    complexes = 0
    complex_bad = []
    for n, k in nk_pairs(5):
        for lam in admissible_weights(n, k):
            if lam.m > 2:
                continue
            for i in range(1, n):
                c = sigma_complex(i, lam)
                if not isinstance(c, BimoduleComplex):
                    continue
                complexes += 1
                if not (check_complex(c).ok and differential_hits_idempotents(c)):
                    complex_bad.append((str(lam), i))
    ok = not failing and not euler_bad and not complex_bad and complexes > 0
    return ok, (f"braid failures {failing}, Euler characteristic failures {euler_bad}, "
                f"{complexes} two-term complexes checked, {len(complex_bad)} bad")


@criterion(12, "Bar involution is compatible with the generators, n<=5")
def duality():
    failing = {(n, k): first_failures(rep) for n, k in nk_pairs(5) if not (rep := bar_check(n, k)).ok}
    return not failing, f"{len(nk_pairs(5))} representations, failing {sorted(failing)}"


def run(number: int) -> tuple[bool, str]:
    title, fn = CRITERIA[number]
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as err:  # a crash is a failure, reported like one
        ok, detail = False, f"raised {type(err).__name__}: {err}"
    ACCEPTANCE_RESULTS[number] = (ok, title, detail, time.perf_counter() - start)
    return ok, detail


def summary_line(number: int) -> str:
    ok, title, detail, elapsed = ACCEPTANCE_RESULTS[number]
    return f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail}; {elapsed:.1f}s)"


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    ok, detail = run(number)
    assert ok, detail


if __name__ == "__main__":
    results = [run(n)[0] for n in sorted(CRITERIA)]
    for n in sorted(CRITERIA):
        print(summary_line(n))
    sys.exit(0 if all(results) else 1)
