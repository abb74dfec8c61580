"""Exact Laurent polynomials in one variable ``q`` with integer coefficients.

Coefficients are Python integers, so arithmetic never overflows.  Values are
immutable and hashable; they can be used as dictionary keys and shared freely.
"""

from __future__ import annotations

import json
import re
from functools import lru_cache
from typing import Iterable, Mapping, Union

Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """An element of Z[q, q^-1] stored as ``{exponent: nonzero coefficient}``."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, v in items:
            if not isinstance(e, int) or not isinstance(v, int):
                raise TypeError("exponents and coefficients must be integers")
            c[e] = c.get(e, 0) + v
        self._c = {e: v for e, v in c.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, c: dict[int, int]) -> "LaurentPoly":
        # trusted constructor: c already has no zero entries
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({exp: coeff} if coeff else {})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls.monomial(0, c)

    @classmethod
    def coerce(cls, x: Scalar) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot convert {type(x).__name__} to LaurentPoly")

    # -- inspection -------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items(), reverse=True)

    def __getitem__(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return min(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def is_unit(self) -> bool:
        """True for +-q^s, the units of Z[q, q^-1]."""
        return len(self._c) == 1 and abs(next(iter(self._c.values()))) == 1

    def __call__(self, q):
        """Evaluate at ``q``.  Integers and Fractions stay exact."""
        total = 0
        for e, v in self._c.items():
            total += v * (q**e)
        return total

    def nonneg(self) -> bool:
        return all(v > 0 for v in self._c.values())

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: v * other for e, v in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._c or not other._c:
            return ZERO
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly._raw({e: v for e, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if self.is_unit():
                (e, v), = self._c.items()
                return LaurentPoly.monomial(e * n, 1 if n % 2 == 0 else v)
            raise ValueError("negative power of a non-unit")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, s: int) -> "LaurentPoly":
        """Multiply by q^s."""
        return LaurentPoly._raw({e + s: v for e, v in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """The involution q -> q^-1."""
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    def divmod_exact(self, d: "LaurentPoly") -> "LaurentPoly":
        """Return ``s`` with ``self == d * s``; raise ArithmeticError otherwise."""
        d = LaurentPoly.coerce(d)
        if d.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return ZERO
        dtop = d.max_exp
        dlead = d[dtop]
        rem = self
        quot: dict[int, int] = {}
        lo = self.min_exp - d.min_exp
        while rem:
            top = rem.max_exp
            e = top - dtop
            if e < lo:
                break
            c, r = divmod(rem[top], dlead)
            if r:
                raise ArithmeticError("coefficient not divisible")
            quot[e] = c
            rem = rem - d * LaurentPoly.monomial(e, c)
        if rem:
            raise ArithmeticError(f"{d} does not divide {self}")
        return LaurentPoly._raw({e: v for e, v in quot.items() if v})

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- serialization ----------------------------------------------------
    def __str__(self) -> str:
        if not self._c:
            return "0"
        out = []
        for i, (e, v) in enumerate(self.items()):
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            if i == 0:
                out.append(("-" if v < 0 else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def to_json(self) -> dict[str, int]:
        return {str(e): v for e, v in self.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, int] | str) -> "LaurentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({int(e): int(v) for e, v in data.items()})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``: accepts ``3*q^2 + 1 - q^-1`` style input."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return ZERO
        if s[0] not in "+-":
            s = "+" + s
        term = re.compile(r"([+-])(?:(\d+)\*?)?(q(?:\^(-?\d+))?)?")
        c: dict[int, int] = {}
        pos = 0
        while pos < len(s):
            m = term.match(s, pos)
            if not m or m.end() == pos + 1 or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"cannot parse {text!r} near position {pos}")
            sign, num, qpart, exp = m.groups()
            coef = int(num) if num else 1
            e = 0 if not qpart else (int(exp) if exp else 1)
            c[e] = c.get(e, 0) + (coef if sign == "+" else -coef)
            pos = m.end()
        return cls(c)


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
Q = LaurentPoly._raw({1: 1})
QINV = LaurentPoly._raw({-1: 1})
# q + q^-1, the graded rank of the Frobenius algebra
QQ = LaurentPoly._raw({1: 1, -1: 1})


def q_pow(s: int) -> LaurentPoly:
    return LaurentPoly._raw({s: 1})


@lru_cache(maxsize=None)
def quantum_integer(j: int) -> LaurentPoly:
    """[j] = q^(j-1) + q^(j-3) + ... + q^(1-j); negative j gives -[-j]."""
    if j < 0:
        return -quantum_integer(-j)
    return LaurentPoly._raw({j - 1 - 2 * t: 1 for t in range(j)})


@lru_cache(maxsize=None)
def quantum_factorial(j: int) -> LaurentPoly:
    if j < 0:
        raise ValueError("quantum factorial needs j >= 0")
    out = ONE
    for t in range(1, j + 1):
        out = out * quantum_integer(t)
    return out


def laurent_det(rows: list[list[LaurentPoly]]) -> LaurentPoly:
    """Determinant by fraction-free (Bareiss) elimination with exact division."""
    n = len(rows)
    if n == 0:
        return ONE
    a = [[LaurentPoly.coerce(x) for x in r] for r in rows]
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num.divmod_exact(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign
