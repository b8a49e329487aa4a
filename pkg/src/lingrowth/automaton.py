"""Regular structure of normal words.

Normal words of a linear-growth algebra of the kind studied here fall, from
some degree on, into families ``a·cⁿ·b`` with a fixed primitive loop ``c``.
This module fits those families to an enumerated word list, attaches
SML-shaped exponent sets, builds a deterministic automaton over extended
letters (whole words carrying their degree as weight) and reads off its
generating function by the transfer-matrix method.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from . import _poly
from .exactfield import QQ
from .presentation import HilbertData, Presentation
from .recurrence import SMLSet, berlekamp_massey, sml_detect

Word = tuple


def _wdeg(word: Sequence[str], weights: Optional[Mapping[str, int]]) -> int:
    if weights is None:
        return len(word)
    return sum(weights[x] for x in word)


def _is_primitive(word: Word) -> bool:
    n = len(word)
    return all(n % k or word != word[:k] * (n // k) for k in range(1, n))


# -- families -----------------------------------------------------------------


@dataclass(frozen=True)
class NormalWordFamily:
    """The words ``prefix · loopⁿ · suffix`` for ``n`` in ``exponents``.

    ``exponents`` is an :class:`SMLSet` once attached, otherwise the tuple of
    observed exponents; ``bits`` records the observed indicator for
    ``n = 0, 1, …`` up to the fitting horizon.
    """

    prefix: Word
    loop: Word
    suffix: Word
    exponents: Union[SMLSet, tuple]
    degrees: tuple[int, int, int]
    bits: tuple[bool, ...] = ()

    def __post_init__(self):
        if not self.loop:
            raise ValueError("loop word must be nonempty")
        if not _is_primitive(self.loop):
            raise ValueError(f"loop {self.loop} is a proper power")

    @property
    def determined(self) -> bool:
        return isinstance(self.exponents, SMLSet)

    @property
    def observed(self) -> tuple[int, ...]:
        return tuple(n for n, b in enumerate(self.bits) if b)

    def word(self, n: int) -> Word:
        return self.prefix + self.loop * n + self.suffix

    def degree(self, n: int) -> int:
        a, c, b = self.degrees
        return a + n * c + b

    def words(self, N: int) -> list[Word]:
        """Members of degree ``≤ N``."""
        out = []
        n = 0
        while self.degree(n) <= N:
            if n in self.exponents:
                out.append(self.word(n))
            n += 1
        return out

    def to_json(self) -> dict:
        ex = self.exponents.to_json() if self.determined else {"observed": list(self.exponents)}
        return {
            "prefix": list(self.prefix),
            "loop": list(self.loop),
            "suffix": list(self.suffix),
            "degrees": list(self.degrees),
            "exponents": ex,
        }


@dataclass(frozen=True)
class FitResult:
    families: tuple[NormalWordFamily, ...]
    residue: tuple[Word, ...]
    split_degree: int
    horizon: int

    def regenerate(self, weights: Optional[Mapping[str, int]] = None) -> list[list[Word]]:
        """Word lists by degree rebuilt from the residue and the families."""
        out: list[list[Word]] = [[] for _ in range(self.horizon + 1)]
        for w in self.residue:
            out[_wdeg(w, weights)].append(w)
        for fam in self.families:
            for n, bit in enumerate(fam.bits):
                if (n in fam.exponents) if fam.determined else bit:
                    d = fam.degree(n)
                    if d <= self.horizon:
                        out[d].append(fam.word(n))
        return [sorted(lv) for lv in out]


@dataclass(frozen=True)
class FitFailure:
    reason: str
    unfit: tuple[Word, ...]
    horizon: int

    def __bool__(self) -> bool:
        return False


def _decompose(word: Word, loops, max_loop: int, min_power: int):
    """Best ``(prefix, loop, suffix, n)`` for ``word``.

    Preference: largest power, then shortest loop, then smallest loop,
    then leftmost occurrence.  ``loops`` restricts the candidates when given.
    """
    best = None
    ln = len(word)
    for k in range(1, min(max_loop, ln) + 1):
        for i in range(ln - k + 1):
            c = word[i : i + k]
            if loops is not None and c not in loops:
                continue
            if loops is None and not _is_primitive(c):
                continue
            n, j = 1, i + k
            while word[j : j + k] == c:
                n += 1
                j += k
            if n < min_power:
                continue
            key = (-n, k, c, i)
            if best is None or key < best[0]:
                best = (key, (word[:i], c, word[j:], n))
    return None if best is None else best[1]


def fit_families(
    words_by_degree: Sequence[Sequence[Word]],
    min_evidence: int = 3,
    weights: Optional[Mapping[str, int]] = None,
) -> Union[FitResult, FitFailure]:
    """Partition the words of degree ``≥ D₀`` into ``a·cⁿ·b`` families.

    A loop counts as witnessed once some family built on it has at least
    ``min_evidence`` members with ``n ≥ 2``.  Every word is then decomposed
    along witnessed loops only; words that cannot be decomposed fix the
    split degree ``D₀`` (one past the largest of them) and everything below
    ``D₀`` becomes the finite residue.  Families with few members are kept as
    long as their loop is witnessed elsewhere: the sparse exceptional
    families are exactly the interesting ones.  The fit fails when unfit
    words or first members of families occur within ``min_evidence`` of
    the horizon.
    """
    if min_evidence < 3:
        raise ValueError("min_evidence must be at least 3")
    N = len(words_by_degree) - 1
    if N < 0:
        return FitFailure("no words", (), N)
    max_loop = max(1, N // min_evidence)
    words = [(d, tuple(w)) for d, lv in enumerate(words_by_degree) for w in lv]
    for d, w in words:
        if _wdeg(w, weights) != d:
            raise ValueError(f"word {w} listed at degree {d}")

    counts: dict[tuple, int] = defaultdict(int)
    for _, w in words:
        dec = _decompose(w, None, max_loop, 2)
        if dec is not None:
            counts[dec[:3]] += 1
    witnessed = {key[1] for key, k in counts.items() if k >= min_evidence}
    if not witnessed:
        return FitFailure("no loop is witnessed", tuple(w for _, w in words), N)

    placed: dict[Word, tuple] = {}
    unfit = []
    for d, w in words:
        dec = _decompose(w, witnessed, max_loop, 1)
        if dec is None:
            unfit.append((d, w))
        else:
            placed[w] = dec
    D0 = 1 + max(d for d, _ in unfit) if unfit else 0
    if D0 > N - min_evidence + 1:
        return FitFailure(
            f"words up to degree {D0 - 1} resist the a·cⁿ·b shape",
            tuple(w for d, w in unfit if d == D0 - 1),
            N,
        )

    members: dict[tuple, set] = defaultdict(set)
    residue = []
    for d, w in words:
        if d < D0:
            residue.append(w)
        else:
            a, c, b, n = placed[w]
            members[(a, c, b)].add(n)
    # low-degree words that are unambiguously an early member of a family
    # join it instead of staying in the residue
    kept = []
    for w in residue:
        hits = [
            (key, n)
            for key in members
            for n in range((len(w) - len(key[0]) - len(key[2])) // len(key[1]) + 1)
            if key[0] + key[1] * n + key[2] == w
        ]
        if len(hits) == 1:
            members[hits[0][0]].add(hits[0][1])
        else:
            kept.append(w)
    residue = kept
    families = []
    for (a, c, b), ns in sorted(members.items()):
        degs = (_wdeg(a, weights), _wdeg(c, weights), _wdeg(b, weights))
        bits = []
        n = 0
        while degs[0] + n * degs[1] + degs[2] <= N:
            bits.append(n in ns)
            n += 1
        families.append(NormalWordFamily(a, c, b, tuple(sorted(ns)), degs, tuple(bits)))
    # a family first seen near the horizon means the family list has not
    # stabilised (exponential growth looks like this)
    late = [f.word(f.observed[0]) for f in families if f.degree(f.observed[0]) > N - min_evidence]
    if late:
        return FitFailure("new families keep appearing near the horizon", tuple(late), N)
    return FitResult(tuple(families), tuple(residue), D0, N)


def attach_sml(fam: NormalWordFamily, guard: int = 3) -> NormalWordFamily:
    """Replace the observed exponents by an SML set when the prefix supports
    one; otherwise the family is returned undetermined."""
    if fam.determined:
        return fam
    found = sml_detect(fam.bits, guard)
    if found is None:
        return fam
    return NormalWordFamily(fam.prefix, fam.loop, fam.suffix, found, fam.degrees, fam.bits)


# -- automata --------------------------------------------------------------------


class FitDefect(ValueError):
    """Two families (or a family and the residue) produce the same word."""


@dataclass(frozen=True)
class WeightedAutomaton:
    """DFA over extended letters; state 0 is initial."""

    n_states: int
    accepting: frozenset
    transitions: Mapping  # (state, letter) -> state
    weights: Mapping  # letter -> weight

    @property
    def initial(self) -> int:
        return 0

    @property
    def letters(self) -> list[Word]:
        return sorted(self.weights, key=lambda w: (self.weights[w], w))

    def step(self, q: int, letter: Word) -> Optional[int]:
        return self.transitions.get((q, letter))

    def accepts_letters(self, letters: Sequence[Word]) -> bool:
        q: Optional[int] = 0
        for x in letters:
            q = self.step(q, tuple(x))
            if q is None:
                return False
        return q in self.accepting

    def accepts(self, word: Sequence[str]) -> bool:
        """Whether some factorisation of ``word`` into letters is accepted."""
        word = tuple(word)
        out_edges = defaultdict(list)
        for (q, x), t in self.transitions.items():
            out_edges[q].append((x, t))
        seen = set()
        stack = [(0, 0)]
        while stack:
            q, i = stack.pop()
            if (q, i) in seen:
                continue
            seen.add((q, i))
            if i == len(word) and q in self.accepting:
                return True
            for x, t in out_edges[q]:
                if word[i : i + len(x)] == x:
                    stack.append((t, i + len(x)))
        return False

    def count_by_degree(self, N: int) -> list[int]:
        """Accepted letter strings of each total weight ``0..N``."""
        ways = [defaultdict(int) for _ in range(N + 1)]
        ways[0][0] = 1
        edges = defaultdict(list)
        for (q, x), t in self.transitions.items():
            edges[q].append((self.weights[x], t))
        for d in range(N + 1):
            for q, k in list(ways[d].items()):
                for w, t in edges[q]:
                    if d + w <= N:
                        ways[d + w][t] += k
        return [sum(k for q, k in ways[d].items() if q in self.accepting) for d in range(N + 1)]

    def to_json(self) -> dict:
        return {
            "states": list(range(self.n_states)),
            "initial": 0,
            "accepting": sorted(self.accepting),
            "transitions": [
                {"from": q, "to": t, "letter": list(x), "weight": self.weights[x]}
                for (q, x), t in sorted(self.transitions.items(), key=lambda kv: (kv[0][0], self.weights[kv[0][1]], kv[0][1]))
            ],
        }

    def to_dot(self) -> str:
        lines = ["digraph automaton {", "  rankdir=LR;", '  start [shape=point];', "  start -> q0;"]
        for q in range(self.n_states):
            shape = "doublecircle" if q in self.accepting else "circle"
            lines.append(f"  q{q} [shape={shape}];")
        for (q, x), t in sorted(self.transitions.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            label = "".join(x) or "ε"
            lines.append(f'  q{q} -> q{t} [label="{label}/{self.weights[x]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def expand_letters(self, weights: Optional[Mapping[str, int]] = None) -> "WeightedAutomaton":
        """Equivalent minimal DFA over the raw generators."""
        nfa = _NFA()
        base = [nfa.new() for _ in range(self.n_states)]
        for (q, x), t in self.transitions.items():
            cur = base[q]
            for i, letter in enumerate(x):
                nxt = base[t] if i == len(x) - 1 else nfa.new()
                nfa.add(cur, (letter,), nxt)
                cur = nxt
        for q in self.accepting:
            nfa.accept.add(base[q])
        gw = {(g,): (weights[g] if weights else 1) for x in self.weights for g in x}
        return _determinize(nfa, base[0], gw)


class _NFA:
    def __init__(self):
        self.edges: dict[int, list] = defaultdict(list)
        self.eps: dict[int, list] = defaultdict(list)
        self.accept: set = set()
        self.size = 0

    def new(self) -> int:
        self.size += 1
        return self.size - 1

    def add(self, q: int, letter: Word, t: int) -> None:
        self.edges[q].append((letter, t))

    def closure(self, states) -> frozenset:
        out, stack = set(states), list(states)
        while stack:
            q = stack.pop()
            for t in self.eps[q]:
                if t not in out:
                    out.add(t)
                    stack.append(t)
        return frozenset(out)


def _determinize(nfa: _NFA, start: int, weights: Mapping) -> WeightedAutomaton:
    letter_key = lambda x: (weights[x], x)  # noqa: E731
    s0 = nfa.closure([start])
    index = {s0: 0}
    order = [s0]
    delta: dict[tuple, int] = {}
    queue = deque([s0])
    while queue:
        S = queue.popleft()
        moves: dict[Word, set] = defaultdict(set)
        for q in S:
            for x, t in nfa.edges[q]:
                moves[x].add(t)
        for x in sorted(moves, key=letter_key):
            T = nfa.closure(moves[x])
            if T not in index:
                index[T] = len(order)
                order.append(T)
                queue.append(T)
            delta[(index[S], x)] = index[T]
    accepting = {i for i, S in enumerate(order) if S & nfa.accept}
    return _minimize(len(order), accepting, delta, weights)


def _minimize(n: int, accepting: set, delta: dict, weights: Mapping) -> WeightedAutomaton:
    letters = sorted(weights, key=lambda x: (weights[x], x))
    # drop states that cannot reach acceptance
    rev = defaultdict(set)
    for (q, x), t in delta.items():
        rev[t].add(q)
    live, stack = set(accepting), list(accepting)
    while stack:
        q = stack.pop()
        for p in rev[q]:
            if p not in live:
                live.add(p)
                stack.append(p)
    if 0 not in live:
        return WeightedAutomaton(1, frozenset(), {}, dict(weights))
    delta = {(q, x): t for (q, x), t in delta.items() if q in live and t in live}
    # Moore refinement; a missing edge goes to an implicit dead class
    cls = {q: (q in accepting) for q in live}
    while True:
        sig = {q: (cls[q],) + tuple(cls.get(delta.get((q, x)), None) if (q, x) in delta else None for x in letters) for q in live}
        ids: dict = {}
        new = {q: ids.setdefault(sig[q], len(ids)) for q in sorted(live)}
        if len(ids) == len(set(cls.values())):
            cls = new
            break
        cls = new
    # BFS renumbering from the initial class
    reps: dict[int, int] = {}
    for q in sorted(live):
        reps.setdefault(cls[q], q)
    number = {cls[0]: 0}
    queue = deque([cls[0]])
    trans: dict[tuple, int] = {}
    while queue:
        k = queue.popleft()
        q = reps[k]
        for x in letters:
            t = delta.get((q, x))
            if t is None:
                continue
            kt = cls[t]
            if kt not in number:
                number[kt] = len(number)
                queue.append(kt)
            trans[(number[k], x)] = number[kt]
    acc = frozenset(number[cls[q]] for q in accepting if q in live and cls[q] in number)
    used = {x for _, x in trans}
    return WeightedAutomaton(len(number), acc, trans, {x: weights[x] for x in letters if x in used})


def build_automaton(
    families: Sequence[NormalWordFamily],
    residue: Sequence[Word] = (),
    weights: Optional[Mapping[str, int]] = None,
    horizon: Optional[int] = None,
) -> WeightedAutomaton:
    """Minimal DFA accepting the residue words and every family member.

    Each family becomes a lasso: optional prefix letter, ``ρ`` warm-up loop
    steps, a cycle of length ``T`` and suffix exits on the states whose
    exponent lies in the SML set.  With ``horizon`` set, distinctness of all
    produced words up to that degree is checked first.
    """
    for fam in families:
        if not fam.determined:
            raise ValueError(f"family {fam.prefix}|{fam.loop}|{fam.suffix} has no SML set")
    if horizon is not None:
        seen: dict[Word, str] = {}
        for w in residue:
            if w in seen:
                raise FitDefect(f"residue lists {w} twice")
            seen[w] = "residue"
        for fam in families:
            for w in fam.words(horizon):
                if w in seen:
                    raise FitDefect(f"word {w} produced twice")
                seen[w] = "family"
    wt: dict[Word, int] = {}
    nfa = _NFA()
    start = nfa.new()
    final = nfa.new()
    nfa.accept.add(final)

    def letter(x: Word) -> Word:
        wt[x] = _wdeg(x, weights)
        return x

    for w in residue:
        w = tuple(w)
        if not w:
            nfa.accept.add(start)
        else:
            nfa.add(start, letter(w), final)
    for fam in families:
        ex: SMLSet = fam.exponents
        rho, T = ex.preperiod, ex.period
        entry = nfa.new()
        if fam.prefix:
            nfa.add(start, letter(fam.prefix), entry)
        else:
            nfa.eps[start].append(entry)
        spine = [entry] + [nfa.new() for _ in range(rho + T - 1)]
        c = letter(fam.loop)
        for k in range(rho + T - 1):
            nfa.add(spine[k], c, spine[k + 1])
        nfa.add(spine[rho + T - 1], c, spine[rho])
        for k in range(rho + T):
            if k in ex:
                if fam.suffix:
                    nfa.add(spine[k], letter(fam.suffix), final)
                else:
                    nfa.eps[spine[k]].append(final)
    return _determinize(nfa, start, wt)


# -- generating functions -----------------------------------------------------------


@dataclass(frozen=True)
class RationalSeries:
    """``num(z) / den(z)`` with integer coefficients, ``den[0] = 1``, coprime."""

    num: tuple[int, ...]
    den: tuple[int, ...]

    def __post_init__(self):
        if not self.den or self.den[0] != 1:
            raise ValueError("denominator must have constant term 1")

    @classmethod
    def from_fractions(cls, num, den) -> "RationalSeries":
        num, den = _poly.trim(num), _poly.trim(den)
        g = _poly.gcd(num, den, None) if num else (Fraction(1),)
        num = _poly.divmod_(num, g, None)[0]
        den = _poly.divmod_(den, g, None)[0]
        if not num:
            return cls((), (1,))
        c0 = Fraction(den[0])
        num = [Fraction(x) / c0 for x in num]
        den = [Fraction(x) / c0 for x in den]
        for x in num + den:
            if x.denominator != 1:
                raise ValueError("series does not have integer coefficients")
        return cls(tuple(int(x) for x in num), tuple(int(x) for x in den))

    def coefficients(self, n: int) -> list[int]:
        """Taylor coefficients ``0..n-1``."""
        out: list[int] = []
        for k in range(n):
            acc = self.num[k] if k < len(self.num) else 0
            for i in range(1, min(k, len(self.den) - 1) + 1):
                acc -= self.den[i] * out[k - i]
            out.append(acc)
        return out

    def to_json(self) -> dict:
        return {"num": list(self.num), "den": list(self.den)}

    def __str__(self) -> str:
        return f"({_fmt(self.num)}) / ({_fmt(self.den)})"


def _fmt(coeffs: Sequence[int]) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mon = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
        if mon and abs(c) == 1:
            term = mon
        else:
            term = f"{abs(c)}{mon}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, term))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(f" {s} {t}" for s, t in parts[1:])


class _RF:
    """Rational function over Q kept in lowest terms (den monic)."""

    __slots__ = ("n", "d")

    def __init__(self, n, d=(Fraction(1),)):
        n, d = _poly.trim(n), _poly.trim(d)
        if not n:
            self.n, self.d = (), (Fraction(1),)
            return
        g = _poly.gcd(n, d, None)
        if len(g) > 1:
            n, d = _poly.divmod_(n, g, None)[0], _poly.divmod_(d, g, None)[0]
        lc = Fraction(d[-1])
        self.n = tuple(Fraction(x) / lc for x in n)
        self.d = tuple(Fraction(x) / lc for x in d)

    def __bool__(self):
        return bool(self.n)

    def __add__(self, o: "_RF") -> "_RF":
        if not o.n:
            return self
        if not self.n:
            return o
        if self.d == o.d:
            return _RF(_poly.add(self.n, o.n, None), self.d)
        return _RF(
            _poly.add(_poly.mul(self.n, o.d, None), _poly.mul(o.n, self.d, None), None),
            _poly.mul(self.d, o.d, None),
        )

    def __neg__(self) -> "_RF":
        return _RF(_poly.neg(self.n, None), self.d)

    def __sub__(self, o: "_RF") -> "_RF":
        return self + (-o)

    def __mul__(self, o: "_RF") -> "_RF":
        if not self.n or not o.n:
            return _RF(())
        return _RF(_poly.mul(self.n, o.n, None), _poly.mul(self.d, o.d, None))

    def __truediv__(self, o: "_RF") -> "_RF":
        if not o.n:
            raise ZeroDivisionError("division by zero rational function")
        return _RF(_poly.mul(self.n, o.d, None), _poly.mul(self.d, o.n, None))


def generating_function(auto: WeightedAutomaton) -> RationalSeries:
    """``Σ_f [(I − T(z))⁻¹]_{0,f}`` by sparse elimination over Q(z).

    The unknown ``y_q`` is the series of accepted continuations from ``q``;
    ``y_q − Σ z^w y_t = [q accepting]``.  Every principal minor of
    ``I − T(z)`` is 1 at ``z = 0`` (weights are positive), so diagonal
    pivots never vanish and states can be eliminated in any order.
    """
    n = auto.n_states
    rows: list[dict[int, _RF]] = [defaultdict(lambda: _RF(())) for _ in range(n)]
    rhs = [_RF((Fraction(1),)) if q in auto.accepting else _RF(()) for q in range(n)]
    for q in range(n):
        rows[q][q] = _RF((Fraction(1),))
    for (q, x), t in auto.transitions.items():
        w = auto.weights[x]
        zw = _RF((Fraction(0),) * w + (Fraction(1),))
        rows[q][t] = rows[q][t] - zw
    rows = [{j: v for j, v in r.items() if v} for r in rows]
    occurs: dict[int, set] = defaultdict(set)
    for i, r in enumerate(rows):
        for j in r:
            occurs[j].add(i)
    alive = set(range(n))
    while len(alive) > 1:
        k = min((q for q in alive if q != 0), key=lambda q: (len(occurs[q]) * len(rows[q]), q))
        pivot = rows[k][k]
        rk = {j: v / pivot for j, v in rows[k].items() if j != k}
        bk = rhs[k] / pivot
        for i in list(occurs[k]):
            if i == k or i not in alive:
                continue
            f = rows[i].pop(k)
            for j, v in rk.items():
                nv = rows[i].get(j, _RF(())) - f * v
                if nv:
                    rows[i][j] = nv
                    occurs[j].add(i)
                else:
                    rows[i].pop(j, None)
                    occurs[j].discard(i)
            rhs[i] = rhs[i] - f * bk
        for j in rows[k]:
            occurs[j].discard(k)
        alive.discard(k)
        occurs.pop(k, None)
    y0 = rhs[0] / rows[0][0]
    return RationalSeries.from_fractions(y0.n, y0.d)


def rational_guess(h: Union[HilbertData, Sequence[int]], max_order: int) -> Optional[RationalSeries]:
    """Rational series with denominator degree ``≤ max_order`` matching all of
    ``h``, found by Berlekamp-Massey over Q; ``None`` when none exists."""
    vals = list(h.values if isinstance(h, HilbertData) else h)
    if max_order < 1:
        raise ValueError("max_order must be positive")
    if len(vals) < 2 * max_order:
        raise ValueError(f"{len(vals)} terms cannot decide order {max_order}")
    seq = [QQ.from_int(v) for v in vals]
    L, C = berlekamp_massey(seq)
    if L > max_order:
        return None
    den = [c.value for c in C]
    prod = _poly.mul(tuple(Fraction(v) for v in vals), tuple(den), None)
    num = prod[:L]
    out = RationalSeries.from_fractions(num, den) if any(num) else RationalSeries((), (1,))
    assert out.coefficients(len(vals)) == vals
    return out


# -- certification -------------------------------------------------------------------


class Verdict(str, Enum):
    CERTIFIED = "CERTIFIED"
    UNDETERMINED = "UNDETERMINED"
    FIT_FAILED = "FIT_FAILED"
    MISMATCH = "MISMATCH"


@dataclass
class Certificate:
    verdict: Verdict
    horizon: int
    counts: list[int]
    fit: Union[FitResult, FitFailure, None] = None
    families: tuple[NormalWordFamily, ...] = ()
    automaton: Optional[WeightedAutomaton] = None
    series: Optional[RationalSeries] = None
    offending: tuple[NormalWordFamily, ...] = ()
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict.value,
            "horizon": self.horizon,
            "counts": self.counts,
            "notes": self.notes,
        }
        if isinstance(self.fit, FitResult):
            out["split_degree"] = self.fit.split_degree
            out["residue"] = [list(w) for w in self.fit.residue]
        if isinstance(self.fit, FitFailure):
            out["failure"] = {"reason": self.fit.reason, "unfit": [list(w) for w in self.fit.unfit]}
        out["families"] = [f.to_json() for f in self.families]
        if self.offending:
            out["undetermined"] = [
                {"prefix": list(f.prefix), "loop": list(f.loop), "suffix": list(f.suffix),
                 "exponent_prefix": list(f.observed)}
                for f in self.offending
            ]
        if self.automaton is not None:
            out["automaton"] = self.automaton.to_json()
        if self.series is not None:
            out["series"] = self.series.to_json()
        return out


def certify_words(
    words_by_degree: Sequence[Sequence[Word]],
    guard: int = 3,
    min_evidence: int = 3,
    weights: Optional[Mapping[str, int]] = None,
) -> Certificate:
    """Fit, attach SML sets, build the automaton and compare its series with
    the word counts through the horizon."""
    N = len(words_by_degree) - 1
    counts = [len(lv) for lv in words_by_degree]
    fit = fit_families(words_by_degree, min_evidence, weights)
    if isinstance(fit, FitFailure):
        return Certificate(Verdict.FIT_FAILED, N, counts, fit, notes=[fit.reason])
    fams = tuple(attach_sml(f, guard) for f in fit.families)
    bad = tuple(f for f in fams if not f.determined)
    if bad:
        return Certificate(Verdict.UNDETERMINED, N, counts, fit, fams, offending=bad,
                           notes=[f"{len(bad)} famil{'y' if len(bad) == 1 else 'ies'} without SML explanation at guard {guard}"])
    try:
        auto = build_automaton(fams, fit.residue, weights, horizon=N)
    except FitDefect as exc:
        return Certificate(Verdict.FIT_FAILED, N, counts, fit, fams, notes=[str(exc)])
    series = generating_function(auto)
    got = series.coefficients(N + 1)
    if got != counts:
        first = next(d for d in range(N + 1) if got[d] != counts[d])
        return Certificate(Verdict.MISMATCH, N, counts, fit, fams, auto, series,
                           notes=[f"series differs from counts at degree {first}"])
    return Certificate(Verdict.CERTIFIED, N, counts, fit, fams, auto, series)


def certify(p: Presentation, N: int = 30, guard: int = 3, min_evidence: int = 3, order=None) -> Certificate:
    from .ncgroebner import truncated_groebner

    gb = truncated_groebner(p, order, N)
    return certify_words(gb.normal_words(), guard, min_evidence, p.weights)


def denominator_divides(series: RationalSeries, modulus: Sequence[int]) -> bool:
    """Whether ``series.den`` divides ``modulus`` in Q[z]."""
    r = _poly.divmod_(tuple(Fraction(x) for x in modulus), tuple(Fraction(x) for x in series.den), None)[1]
    return not r
