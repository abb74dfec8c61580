"""Slow, independent reference computations used to check the library.

Nothing here imports the code under test beyond plain data classes, so a
bug in the library cannot silently agree with itself.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def involutions(n: int):
    """All fixed-point-free involutions of range(n), by brute force."""
    if n == 0:
        yield ()
        return
    if n % 2:
        return
    for perm in itertools.permutations(range(n)):
        if all(perm[i] != i and perm[perm[i]] == i for i in range(n)):
            yield perm


def crosses(partner) -> bool:
    arcs = [(i, j) for i, j in enumerate(partner) if i < j]
    for (i, l), (j, p) in itertools.combinations(arcs, 2):
        if i < j < l < p or j < i < p < l:
            return True
    return False


def brute_matchings(m: int) -> list[tuple[int, ...]]:
    return [p for p in involutions(2 * m) if not crosses(p)]


def trace_circles(a_partner, b_partner) -> int:
    """Count loops of W(b)a by walking: an arc of a, then an arc of b, and so on."""
    n = len(a_partner)
    seen = [False] * n
    loops = 0
    for start in range(n):
        if seen[start]:
            continue
        loops += 1
        p = start
        use_a = True
        while True:
            seen[p] = True
            p = a_partner[p] if use_a else b_partner[p]
            seen[p] = True
            use_a = not use_a
            if p == start and use_a:
                break
    return loops


def ssyt_weight_counts(n: int, k: int) -> dict[tuple[int, ...], int]:
    """Semistandard tableaux of shape (2^k) with entries 1..n, counted by content."""
    counts: dict[tuple[int, ...], int] = {}
    cols = list(itertools.combinations(range(1, n + 1), k))
    for c1 in cols:
        for c2 in cols:
            if all(x <= y for x, y in zip(c1, c2)):
                content = [0] * n
                for x in c1 + c2:
                    content[x - 1] += 1
                key = tuple(content)
                counts[key] = counts.get(key, 0) + 1
    return counts


def weyl_dimension(n: int, k: int) -> int:
    """Weyl dimension formula for the partition (2^k, 0^(n-k)) of sl_n."""
    lam = [2] * k + [0] * (n - k)
    d = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            d *= Fraction(lam[i] - lam[j] + j - i, j - i)
    assert d.denominator == 1
    return int(d)


def poly_mul(p: dict[int, int], q: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def int_det(rows: list[list[int]]) -> int:
    """Exact determinant by Gaussian elimination over the rationals."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for j in range(c, n):
                a[r][j] -= f * a[c][j]
    return int(det)
