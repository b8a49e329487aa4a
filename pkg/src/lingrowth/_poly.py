"""Dense univariate polynomials over Q or F_p.

Polynomials are tuples of coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is ``()``).  Every function takes the
characteristic ``p``; ``p=None`` means coefficients are ``Fraction``/``int``
values in Q.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Poly = tuple


def _red(c, p: Optional[int]):
    return c % p if p else c


def trim(coeffs: Sequence, p: Optional[int] = None) -> Poly:
    out = [_red(c, p) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def deg(a: Poly) -> int:
    return len(a) - 1


def add(a: Poly, b: Poly, p: Optional[int]) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return trim(out, p)


def neg(a: Poly, p: Optional[int]) -> Poly:
    return trim([-c for c in a], p)


def sub(a: Poly, b: Poly, p: Optional[int]) -> Poly:
    return add(a, neg(b, p), p)


def scale(a: Poly, c, p: Optional[int]) -> Poly:
    return trim([c * x for x in a], p)


def mul(a: Poly, b: Poly, p: Optional[int]) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out, p)


def inv_scalar(c, p: Optional[int]):
    if c == 0:
        raise ZeroDivisionError("inverse of zero")
    if p:
        return pow(c, -1, p)
    return Fraction(1) / c


def divmod_(a: Poly, b: Poly, p: Optional[int]) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    inv_lead = inv_scalar(b[-1], p)
    rem = list(a)
    quo = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = _red(rem[k + len(b) - 1] * inv_lead, p)
        quo[k] = c
        if c == 0:
            continue
        for j, y in enumerate(b):
            rem[k + j] = _red(rem[k + j] - c * y, p)
    return trim(quo, p), trim(rem[: len(b) - 1], p)


def monic(a: Poly, p: Optional[int]) -> Poly:
    if not a:
        return a
    return scale(a, inv_scalar(a[-1], p), p)


def gcd(a: Poly, b: Poly, p: Optional[int]) -> Poly:
    """Monic gcd; ``gcd((), ()) == ()``."""
    while b:
        a, b = b, divmod_(a, b, p)[1]
    return monic(a, p)


def power(a: Poly, n: int, p: Optional[int]) -> Poly:
    result: Poly = (1,)
    base = a
    while n:
        if n & 1:
            result = mul(result, base, p)
        n >>= 1
        if n:
            base = mul(base, base, p)
    return result


def evaluate(a: Poly, x, p: Optional[int]):
    acc = 0
    for c in reversed(a):
        acc = _red(acc * x + c, p)
    return acc
