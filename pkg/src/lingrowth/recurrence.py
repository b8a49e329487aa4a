"""C-finite sequences: generation, fitting, zero sets and SML sets."""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Optional, Sequence

from .exactfield import FieldDescriptor, FieldElement, FieldError, parse_field
from .linalg import Matrix, ShapeError, dot, vector


@dataclass(frozen=True)
class LinearRecurrence:
    """``a_n = sum(coeffs[i-1] * a_{n-i} for i in 1..d)`` for ``n >= d``."""

    field: FieldDescriptor
    coeffs: tuple
    initial: tuple

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ValueError("recurrence order must be at least 1")
        if len(self.coeffs) != len(self.initial):
            raise ValueError(
                f"{len(self.coeffs)} coefficients but {len(self.initial)} initial values"
            )
        for e in self.coeffs + self.initial:
            if not isinstance(e, FieldElement) or e.field != self.field:
                raise FieldError("recurrence data must live in the recurrence field")

    @classmethod
    def make(cls, fd: FieldDescriptor, coeffs: Iterable, initial: Iterable) -> "LinearRecurrence":
        return cls(fd, vector(fd, coeffs), vector(fd, initial))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def invertible_companion(self) -> bool:
        return not self.coeffs[-1].is_zero()

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "coeffs": [str(c) for c in self.coeffs],
            "initial": [str(c) for c in self.initial],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LinearRecurrence":
        return cls.make(parse_field(obj["field"]), obj["coeffs"], obj["initial"])


def terms(rec: LinearRecurrence, n_max: int) -> list[FieldElement]:
    """``a_0 .. a_{n_max}``."""
    out = list(rec.initial[: n_max + 1])
    d = rec.order
    rev = rec.coeffs  # rev[i-1] multiplies a_{n-i}
    for n in range(d, n_max + 1):
        acc = rec.field.zero()
        for i in range(1, d + 1):
            g = rev[i - 1]
            if not g.is_zero():
                acc = acc + g * out[n - i]
        out.append(acc)
    return out


def companion_matrix(rec: LinearRecurrence) -> Matrix:
    """State-transition matrix with ``v_{n+1} = M v_n``, ``v_n = (a_n, …, a_{n+d-1})``."""
    fd, d = rec.field, rec.order
    rows = []
    for i in range(d - 1):
        rows.append([1 if j == i + 1 else 0 for j in range(d)])
    rows.append(list(reversed(rec.coeffs)))
    return Matrix.from_rows(fd, rows)


def zero_set(rec: LinearRecurrence, n_max: int) -> set[int]:
    return {n for n, a in enumerate(terms(rec, n_max)) if a.is_zero()}


def berlekamp_massey(seq: Sequence[FieldElement]) -> tuple[int, list[FieldElement]]:
    """Linear complexity ``L`` and connection polynomial ``C`` (``C[0] = 1``).

    The sequence satisfies ``sum(C[i] * s[n-i]) = 0`` for every ``n >= L``.
    """
    fd = seq[0].field
    one, zero = fd.one(), fd.zero()
    C, B = [one], [one]
    L, shift, b = 0, 1, one
    for n, s_n in enumerate(seq):
        d = s_n
        for i in range(1, min(L, len(C) - 1) + 1):
            if not C[i].is_zero():
                d = d + C[i] * seq[n - i]
        if d.is_zero():
            shift += 1
            continue
        coef = d / b
        new = C + [zero] * max(0, len(B) + shift - len(C))
        for i, bi in enumerate(B):
            if not bi.is_zero():
                new[i + shift] = new[i + shift] - coef * bi
        if 2 * L <= n:
            B, b, L, shift = C, d, n + 1 - L, 1
        else:
            shift += 1
        C = new
    while len(C) > 1 and C[-1].is_zero():
        C.pop()
    return L, C


def minimal_recurrence(prefix: Sequence) -> Optional[LinearRecurrence]:
    """Shortest recurrence regenerating ``prefix``, or ``None`` when the
    linear complexity exceeds half the prefix length."""
    if len(prefix) < 2:
        raise ValueError("prefix must have at least two terms")
    seq = list(prefix)
    fd = seq[0].field
    L, C = berlekamp_massey(seq)
    if L > len(seq) // 2:
        return None
    if L == 0:
        return LinearRecurrence.make(fd, [1], [0])
    coeffs = [-(C[i]) if i < len(C) else fd.zero() for i in range(1, L + 1)]
    rec = LinearRecurrence(fd, tuple(coeffs), tuple(seq[:L]))
    if terms(rec, len(seq) - 1) != seq:  # pragma: no cover - BM guarantees this
        raise AssertionError("Berlekamp-Massey fit does not regenerate the prefix")
    return rec


def from_orbit(
    u: Sequence, M: Matrix, v: Sequence, n_max: int
) -> tuple[list[FieldElement], LinearRecurrence]:
    """Terms ``a_n = uᵀ Mⁿ v`` for ``n ≤ n_max`` and their minimal recurrence.

    At least ``2·dim M`` terms are generated for the fit, so the recurrence
    is exact (order ≤ dim M by Cayley-Hamilton) even for short horizons.
    """
    fd = M.field
    u, v = vector(fd, u), vector(fd, v)
    if M.nrows != M.ncols or len(u) != M.nrows or len(v) != M.ncols:
        raise ShapeError(f"orbit shapes incompatible: u {len(u)}, M {M.shape}, v {len(v)}")
    need = max(n_max + 1, 2 * M.nrows, 2)
    seq, cur = [], v
    for n in range(need):
        if n:
            cur = M.apply(cur)
        seq.append(dot(u, cur))
    rec = minimal_recurrence(seq)
    assert rec is not None and rec.order <= max(M.nrows, 1)
    return seq[: n_max + 1], rec


# -- SML sets ------------------------------------------------------------


@dataclass(frozen=True)
class SMLSet:
    """Finite set plus one-sided progressions ``{start + k·step : k ≥ 0}``."""

    finite: tuple[int, ...] = ()
    progressions: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for s, d in self.progressions:
            if s < 0 or d < 1:
                raise ValueError(f"bad progression ({s}, {d})")
        progs = tuple(sorted(set(self.progressions)))
        fin = tuple(sorted(n for n in set(self.finite) if not _in_progs(n, progs)))
        object.__setattr__(self, "finite", fin)
        object.__setattr__(self, "progressions", progs)

    def __contains__(self, n: int) -> bool:
        return n in self.finite or _in_progs(n, self.progressions)

    def indicator(self, length: int) -> list[bool]:
        return [n in self for n in range(length)]

    @property
    def preperiod(self) -> int:
        """An index past every finite member and progression start."""
        marks = [n + 1 for n in self.finite] + [s for s, _ in self.progressions]
        return max(marks, default=0)

    @property
    def period(self) -> int:
        return lcm(*(d for _, d in self.progressions)) if self.progressions else 1

    def to_json(self) -> dict:
        return {
            "finite": list(self.finite),
            "progressions": [{"start": s, "step": d} for s, d in self.progressions],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SMLSet":
        return cls(
            tuple(obj.get("finite", ())),
            tuple((p["start"], p["step"]) for p in obj.get("progressions", ())),
        )


def _in_progs(n: int, progs) -> bool:
    return any(n >= s and (n - s) % d == 0 for s, d in progs)


def sml_detect(bits: Sequence[bool], guard: int) -> Optional[SMLSet]:
    """Explain an indicator prefix as an SML set, or return ``None``.

    A candidate (preperiod ``ρ``, period ``T``) is accepted when ``bits`` is
    ``T``-periodic from ``ρ`` on and the periodic tail is long enough to carry
    the explanation: ``len - ρ ≥ guard·(ρ + T)``.  Smallest ``ρ`` wins, then
    smallest ``T``.  Nothing is claimed beyond the prefix.
    """
    if guard < 1:
        raise ValueError("guard must be at least 1")
    bits = [bool(b) for b in bits]
    n = len(bits)
    for rho in range(n):
        tail = n - rho
        t = 1
        while guard * (rho + t) <= tail:
            if all(bits[i] == bits[i - t] for i in range(rho + t, n)):
                finite = tuple(i for i in range(rho) if bits[i])
                progs = tuple((r, t) for r in range(rho, rho + t) if bits[r])
                out = SMLSet(finite, progs)
                assert out.indicator(n) == bits
                return out
            t += 1
    return None


# -- prescribed zero sets --------------------------------------------------


def _geometric_minus(theta, shift, correction, n_max):
    """Terms of ``θ^{n-shift} - 1 + [n < correction]``."""
    base = theta ** (-shift)
    out, cur = [], base
    for n in range(n_max + 1):
        val = cur - 1
        if n < correction:
            val = val + 1
        out.append(val)
        cur = cur * theta
    return out


def recurrence_with_zero_set(
    singletons: Sequence[int],
    progressions: Sequence[tuple[int, int]],
    fd: FieldDescriptor,
    theta: Optional[FieldElement] = None,
) -> LinearRecurrence:
    """A C-finite sequence vanishing exactly on ``singletons ∪ progressions``.

    Built as a pointwise product of factors (C-finite sequences are closed
    under products):

    * singleton ``s``: ``θⁿ − θˢ`` with ``θ`` of infinite order;
    * progression ``(s, δ)``: ``ω^{n−s} − 1`` with ``ω`` of exact order ``δ``,
      plus ``[n < s]`` when ``s ≥ δ`` so that ``n ≡ s`` below ``s`` stays nonzero.

    The product's recurrence is recovered exactly by Berlekamp-Massey from
    twice the product of the factor orders.
    """
    if not singletons and not progressions:
        return LinearRecurrence.make(fd, [1], [1])
    factors: list[tuple[int, object]] = []
    if singletons:
        th = theta if theta is not None else fd.infinite_order_element()
        for s in singletons:
            if s < 0:
                raise ValueError("zero positions must be nonnegative")
            factors.append((2, ("single", th, s)))
    for s, d in progressions:
        if s < 0 or d < 1:
            raise ValueError(f"bad progression ({s}, {d})")
        om = fd.element_of_order(d)
        corr = s if s >= d else 0
        factors.append(((1 if d == 1 else 2) + corr, ("prog", om, s, corr)))
    bound = 1
    for order, _ in factors:
        bound *= order
    n_fit = 2 * bound + 2
    seq = [fd.one()] * (n_fit + 1)
    for _, factor in factors:
        if factor[0] == "single":
            _, th, s = factor
            target, cur, vals = th ** s, fd.one(), []
            for _n in range(n_fit + 1):
                vals.append(cur - target)
                cur = cur * th
        else:
            _, om, s, corr = factor
            vals = _geometric_minus(om, s, corr, n_fit)
        seq = [a * b for a, b in zip(seq, vals)]
    rec = minimal_recurrence(seq)
    assert rec is not None and rec.order <= bound
    return rec

