"""Exact scalars over Q, F_p and F_p(x).

A :class:`FieldDescriptor` names the field; a :class:`FieldElement` pairs a
descriptor with a canonical value:

* ``Q``      -- a ``Fraction`` in lowest terms;
* ``F<p>``   -- an ``int`` residue in ``[0, p)``;
* ``F<p>(x)`` -- a pair ``(num, den)`` of coefficient tuples over F_p,
  coprime, ``den`` monic; zero is ``((), (1,))``.

Because values are canonical, equality is structural.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from . import _poly

__all__ = [
    "FieldError",
    "FieldDescriptor",
    "FieldElement",
    "QQ",
    "is_prime",
    "parse_field",
    "parse_element",
    "arith",
]


class FieldError(ValueError):
    """Malformed literal, descriptor mismatch or division by zero."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


_KINDS = ("Q", "Fp", "Fp(x)")


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise FieldError(f"unknown field kind {self.kind!r}")
        if self.kind == "Q":
            if self.p is not None:
                raise FieldError("Q takes no characteristic")
        elif self.p is None or not is_prime(self.p):
            raise FieldError(f"characteristic {self.p!r} is not prime")

    # -- constructors -------------------------------------------------
    @classmethod
    def rationals(cls) -> "FieldDescriptor":
        return cls("Q")

    @classmethod
    def prime_field(cls, p: int) -> "FieldDescriptor":
        return cls("Fp", p)

    @classmethod
    def rational_functions(cls, p: int) -> "FieldDescriptor":
        return cls("Fp(x)", p)

    def __str__(self) -> str:
        if self.kind == "Q":
            return "Q"
        if self.kind == "Fp":
            return f"F{self.p}"
        return f"F{self.p}(x)"

    @property
    def characteristic(self) -> int:
        return self.p or 0

    @property
    def _pchar(self) -> Optional[int]:
        # coefficient modulus used by the polynomial helpers
        return self.p

    # -- elements -----------------------------------------------------
    def _make(self, value) -> "FieldElement":
        return FieldElement(self, value)

    def from_int(self, n: int) -> "FieldElement":
        if self.kind == "Q":
            return self._make(Fraction(n))
        if self.kind == "Fp":
            return self._make(n % self.p)
        num = _poly.trim((n,), self.p)
        return self._make((num, (1,)))

    def from_fraction(self, q: Fraction) -> "FieldElement":
        q = Fraction(q)
        return self.from_int(q.numerator) / self.from_int(q.denominator)

    def from_polys(self, num: Iterable[int], den: Iterable[int] = (1,)) -> "FieldElement":
        """Element ``num(x)/den(x)`` of F_p(x) from coefficient lists (low first)."""
        if self.kind != "Fp(x)":
            raise FieldError(f"{self} has no transcendental generator")
        return self._make(_canon_ratfunc(tuple(num), tuple(den), self.p))

    def zero(self) -> "FieldElement":
        return self.from_int(0)

    def one(self) -> "FieldElement":
        return self.from_int(1)

    def gen(self) -> "FieldElement":
        """The transcendental ``x`` of F_p(x)."""
        return self.from_polys((0, 1))

    def __call__(self, value) -> "FieldElement":
        return self.coerce(value)

    def coerce(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, bool):
            raise FieldError("booleans are not field elements")
        if isinstance(value, int):
            return self.from_int(value)
        if isinstance(value, Fraction):
            return self.from_fraction(value)
        if isinstance(value, str):
            return parse_element(value, self)
        raise FieldError(f"cannot coerce {value!r} into {self}")

    def parse(self, text: str) -> "FieldElement":
        return parse_element(text, self)

    def random_element(self, rng: random.Random, size: int = 3) -> "FieldElement":
        if self.kind == "Q":
            num = rng.randint(-10 ** size, 10 ** size)
            den = rng.randint(1, 10 ** size)
            return self._make(Fraction(num, den))
        if self.kind == "Fp":
            return self._make(rng.randrange(self.p))
        num = [rng.randrange(self.p) for _ in range(rng.randint(0, size + 1))]
        while True:
            den = [rng.randrange(self.p) for _ in range(rng.randint(1, size))]
            if any(den):
                break
        return self.from_polys(num, den)

    # -- multiplicative structure ------------------------------------
    def element_of_order(self, k: int) -> "FieldElement":
        """Smallest-representative element of exact multiplicative order ``k``.

        Over Q only orders 1 and 2 exist; over F_p and F_p(x) the element is
        taken from F_p and requires ``k | p - 1``.
        """
        if k < 1:
            raise FieldError("order must be positive")
        if self.kind == "Q":
            if k == 1:
                return self.one()
            if k == 2:
                return self.from_int(-1)
            raise FieldError(f"Q has no element of order {k}")
        p = self.p
        if (p - 1) % k:
            raise FieldError(f"{self} has no element of order {k} ({k} does not divide {p - 1})")
        for g in range(1, p):
            if _mult_order(g, p) == k:
                return self.from_int(g)
        raise AssertionError("unreachable")  # pragma: no cover

    def infinite_order_element(self) -> "FieldElement":
        """An element that is not a root of unity: 2 in Q, x in F_p(x)."""
        if self.kind == "Q":
            return self.from_int(2)
        if self.kind == "Fp(x)":
            return self.gen()
        raise FieldError(f"every nonzero element of {self} has finite order")


def _mult_order(g: int, p: int) -> int:
    k, acc = 1, g % p
    while acc != 1:
        acc = acc * g % p
        k += 1
    return k


QQ = FieldDescriptor("Q")

_FIELD_RE = re.compile(r"^\s*(?:(Q)|F(\d+)(\(x\))?)\s*$")


def parse_field(text: str) -> FieldDescriptor:
    """Parse ``"Q"``, ``"F<p>"`` or ``"F<p>(x)"``."""
    m = _FIELD_RE.match(text)
    if not m:
        raise FieldError(f"unsupported field descriptor {text!r} (expected Q, F<p> or F<p>(x))")
    if m.group(1):
        return QQ
    p = int(m.group(2))
    if m.group(3):
        return FieldDescriptor.rational_functions(p)
    return FieldDescriptor.prime_field(p)


def _canon_ratfunc(num, den, p):
    num = _poly.trim(num, p)
    den = _poly.trim(den, p)
    if not den:
        raise FieldError("division by zero")
    if not num:
        return ((), (1,))
    g = _poly.gcd(num, den, p)
    if g != (1,):
        num = _poly.divmod_(num, g, p)[0]
        den = _poly.divmod_(den, g, p)[0]
    lead_inv = pow(den[-1], -1, p)
    if lead_inv != 1:
        num = _poly.scale(num, lead_inv, p)
        den = _poly.scale(den, lead_inv, p)
    return (num, den)


def _poly_str(a) -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            mono = "x" if k == 1 else f"x^{k}"
            parts.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(parts)


class FieldElement:
    """Immutable exact scalar."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldDescriptor, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return (FieldElement, (self.field, self.value))

    # -- helpers ------------------------------------------------------
    def _other(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"descriptor mismatch: {self.field} vs {other.field}")
            return other
        return self.field.coerce(other)

    def is_zero(self) -> bool:
        k = self.field.kind
        if k == "Fp(x)":
            return not self.value[0]
        return self.value == 0

    def is_one(self) -> bool:
        k = self.field.kind
        if k == "Fp(x)":
            return self.value == ((1,), (1,))
        return self.value == 1

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        f = self.field
        if f.kind == "Q":
            return FieldElement(f, self.value + o.value)
        if f.kind == "Fp":
            return FieldElement(f, (self.value + o.value) % f.p)
        (a, b), (c, d) = self.value, o.value
        p = f.p
        if not a:
            return o
        if not c:
            return self
        if b == d:
            return FieldElement(f, _canon_ratfunc(_poly.add(a, c, p), b, p))
        num = _poly.add(_poly.mul(a, d, p), _poly.mul(b, c, p), p)
        return FieldElement(f, _canon_ratfunc(num, _poly.mul(b, d, p), p))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.kind == "Q":
            return FieldElement(f, -self.value)
        if f.kind == "Fp":
            return FieldElement(f, (-self.value) % f.p)
        a, b = self.value
        return FieldElement(f, (_poly.neg(a, f.p), b))

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        f = self.field
        if f.kind == "Q":
            return FieldElement(f, self.value * o.value)
        if f.kind == "Fp":
            return FieldElement(f, self.value * o.value % f.p)
        (a, b), (c, d) = self.value, o.value
        p = f.p
        if not a or not c:
            return f.zero()
        if b == (1,) and d == (1,):
            return FieldElement(f, (_poly.mul(a, c, p), (1,)))
        return FieldElement(f, _canon_ratfunc(_poly.mul(a, c, p), _poly.mul(b, d, p), p))

    __rmul__ = __mul__

    def inv(self) -> "FieldElement":
        if self.is_zero():
            raise FieldError("division by zero")
        f = self.field
        if f.kind == "Q":
            return FieldElement(f, 1 / self.value)
        if f.kind == "Fp":
            return FieldElement(f, pow(self.value, -1, f.p))
        a, b = self.value
        return FieldElement(f, _canon_ratfunc(b, a, f.p))

    def __truediv__(self, other):
        return self * self._other(other).inv()

    def __rtruediv__(self, other):
        return self._other(other) * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        f = self.field
        if f.kind == "Q":
            return FieldElement(f, self.value ** n)
        if f.kind == "Fp":
            return FieldElement(f, pow(self.value, n, f.p))
        a, b = self.value
        if not a:
            return f.one() if n == 0 else self
        p = f.p
        # coprime with monic den, so powers stay canonical
        return FieldElement(f, (_poly.power(a, n, p), _poly.power(b, n, p)))

    # -- comparison / display ----------------------------------------
    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self == self.field.coerce(other)
            except FieldError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self) -> str:
        f = self.field
        if f.kind in ("Q", "Fp"):
            return str(self.value)
        a, b = self.value
        if b == (1,):
            return _poly_str(a)
        return f"({_poly_str(a)})/({_poly_str(b)})"

    def __repr__(self) -> str:
        return f"FieldElement({self.field}, {self})"

    # -- F_p(x) specifics --------------------------------------------
    @property
    def numerator(self):
        if self.field.kind == "Fp(x)":
            return self.value[0]
        if self.field.kind == "Q":
            return self.value.numerator
        return self.value

    @property
    def denominator(self):
        if self.field.kind == "Fp(x)":
            return self.value[1]
        if self.field.kind == "Q":
            return self.value.denominator
        return 1


Scalar = Union[FieldElement, int, Fraction, str]


# -- literal parsing ----------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(x)|([-+*/^()]))")
_MOD_RE = re.compile(r"^(.*?)\s*\(?\s*mod\s+(\d+)\s*\)?\s*$")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise FieldError(f"malformed literal {text!r} at position {pos}")
        pos = m.end()
        if m.group(1):
            out.append(("int", int(m.group(1))))
        elif m.group(2):
            out.append(("x", None))
        else:
            out.append((m.group(3), None))
    return out


class _Parser:
    def __init__(self, tokens, fd: FieldDescriptor, text: str):
        self.toks = tokens
        self.i = 0
        self.fd = fd
        self.text = text

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        if self.i >= len(self.toks):
            raise FieldError(f"malformed literal {self.text!r}: unexpected end")
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise FieldError(f"malformed literal {self.text!r}: expected {kind!r}")
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while True:
            nxt = self.peek()
            if nxt == "*":
                self.take()
                val = val * self.unary()
            elif nxt == "/":
                self.take()
                val = val / self.unary()
            elif nxt in ("x", "("):
                val = val * self.power()
            else:
                return val

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            _, n = self.take("int")
            return base ** n
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return self.fd.from_int(val)
        if kind == "x":
            if self.fd.kind != "Fp(x)":
                raise FieldError(f"'x' is not an element of {self.fd}")
            return self.fd.gen()
        if kind == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise FieldError(f"malformed literal {self.text!r}: unexpected {kind!r}")


def parse_element(text: str, fd: FieldDescriptor) -> FieldElement:
    """Parse a field literal into canonical form.

    Accepts signed integers and fractions everywhere, polynomial
    expressions in ``x`` over F_p(x), and an optional ``mod p`` suffix
    that must agree with the descriptor.
    """
    if not isinstance(text, str):
        raise FieldError(f"literal must be a string, got {type(text).__name__}")
    m = _MOD_RE.match(text)
    if m:
        if fd.kind == "Q" or int(m.group(2)) != fd.p:
            raise FieldError(f"residue literal {text!r} does not match field {fd}")
        text = m.group(1)
    tokens = _tokenize(text)
    if not tokens:
        raise FieldError("empty literal")
    parser = _Parser(tokens, fd, text)
    try:
        value = parser.expr()
    except ZeroDivisionError as exc:  # pragma: no cover - guarded by inv()
        raise FieldError("division by zero") from exc
    if parser.i != len(tokens):
        raise FieldError(f"malformed literal {text!r}: trailing input")
    return value


def arith(op: str, a: FieldElement, b: Optional[FieldElement] = None):
    """Dispatch a named field operation (``add``, ``sub``, ``mul``, ``div``,
    ``neg``, ``inv``, ``eq``, ``is_zero``)."""
    if op in ("add", "sub", "mul", "div", "eq"):
        if b is None:
            raise FieldError(f"{op} needs two operands")
        if a.field != b.field:
            raise FieldError(f"descriptor mismatch: {a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if op == "eq":
        return a == b
    if op == "is_zero":
        return a.is_zero()
    raise FieldError(f"unknown operation {op!r}")
