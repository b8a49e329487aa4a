"""Degree-truncated noncommutative Buchberger completion.

Works for any presentation whose relations are homogeneous with respect to
the generator degrees.  Completion proceeds degree by degree: at degree
``d`` the input relations of degree ``d`` and the S-polynomials of all
overlaps of total degree ``d`` are reduced against the basis found so far
and inter-reduced among themselves.  Elements of lower degree never change
afterwards, so the basis is reduced and canonical at every truncation.

Words are stored internally as tuples of letter indices, index 0 being the
highest letter of the order; among words of equal degree the larger word
is the *smaller* tuple.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .presentation import HilbertData, NCPolynomial, Presentation, PresentationError


@dataclass(frozen=True)
class MonomialOrder:
    """Degree-lexicographic order; ``precedence`` lists generators from highest."""

    precedence: tuple[str, ...]
    kind: str = "deglex"

    def __post_init__(self):
        if self.kind != "deglex":
            raise ValueError(f"unsupported order {self.kind!r}")
        if len(set(self.precedence)) != len(self.precedence):
            raise ValueError("precedence lists a generator twice")

    @classmethod
    def for_presentation(cls, p: Presentation, precedence: Optional[Sequence[str]] = None) -> "MonomialOrder":
        order = cls(tuple(precedence) if precedence is not None else p.names)
        if set(order.precedence) != set(p.names):
            raise ValueError("precedence must list exactly the generators")
        return order

    def key(self, word: Sequence[str], weights: Optional[Mapping[str, int]] = None):
        """Sort key; sorting ascending lists words from largest to smallest."""
        rank = {n: i for i, n in enumerate(self.precedence)}
        deg = sum(weights[x] for x in word) if weights else len(word)
        return (-deg, tuple(rank[x] for x in word))


class DegreeOverflow(ValueError):
    pass


class TruncatedGroebnerBasis:
    """Reduced Gröbner basis through ``degree_bound``.

    ``elements`` maps each leading word (tuple of names) to its monic
    polynomial.
    """

    def __init__(self, presentation: Presentation, order: MonomialOrder, degree_bound: int):
        self.presentation = presentation
        self.order = order
        self.degree_bound = degree_bound
        self.field = presentation.field
        self._names = order.precedence
        self._idx = {n: i for i, n in enumerate(self._names)}
        w = presentation.weights
        self._wt = tuple(w[n] for n in self._names)
        self._lead: dict[tuple, int] = {}  # leading word -> degree
        self._tails: dict[tuple, list] = {}  # leading word -> [(word, coeff)]
        self._lens: list[int] = []
        self._prefix: dict[tuple, list] = defaultdict(list)
        self._suffix: dict[tuple, list] = defaultdict(list)

    # -- word helpers ---------------------------------------------------
    def _deg(self, word: tuple) -> int:
        wt = self._wt
        return sum(wt[i] for i in word)

    def _encode(self, poly: NCPolynomial) -> dict:
        idx = self._idx
        return {tuple(idx[x] for x in w): c for w, c in poly.terms.items()}

    def _decode_word(self, word: tuple) -> tuple[str, ...]:
        names = self._names
        return tuple(names[i] for i in word)

    def _decode(self, terms: Mapping) -> NCPolynomial:
        return NCPolynomial(self.field, {self._decode_word(w): c for w, c in terms.items()})

    def _find(self, word: tuple, rightmost: bool = False):
        lead = self._lead
        n = len(word)
        positions = range(n - 1, -1, -1) if rightmost else range(n)
        for i in positions:
            for ln in self._lens:
                if i + ln > n:
                    break
                sub = word[i : i + ln]
                if sub in lead:
                    return i, sub
        return None

    def _normal_form(self, terms: Mapping, rightmost: bool = False, homogeneous: bool = True) -> dict:
        work = dict(terms)
        out = {}
        if homogeneous:
            pick = lambda: min(work)  # noqa: E731
        else:
            deg = self._deg
            pick = lambda: min(work, key=lambda w: (-deg(w), w))  # noqa: E731
        while work:
            w = pick()
            c = work.pop(w)
            hit = self._find(w, rightmost)
            if hit is None:
                out[w] = c
                continue
            i, lw = hit
            pre, post = w[:i], w[i + len(lw) :]
            for tw, tc in self._tails[lw]:
                nw = pre + tw + post
                delta = c * tc
                old = work.get(nw)
                new = -delta if old is None else old - delta
                if new.is_zero():
                    work.pop(nw, None)
                else:
                    work[nw] = new
        return out

    def _insert(self, lw: tuple, terms: dict) -> None:
        self._lead[lw] = self._deg(lw)
        self._tails[lw] = [(w, c) for w, c in terms.items() if w != lw]
        if len(lw) not in self._lens:
            self._lens.append(len(lw))
            self._lens.sort()
        for k in range(1, len(lw) + 1):
            self._prefix[lw[:k]].append(lw)
            self._suffix[lw[-k:]].append(lw)

    def _poly(self, lw: tuple) -> dict:
        out = {lw: self.field.one()}
        out.update(self._tails[lw])
        return out

    def _s_poly(self, U: tuple, V: tuple, k: int) -> dict:
        """``f·V[k:] − U[:-k]·g`` for the overlap ``U = U'w``, ``V = wV'``, ``|w| = k``."""
        right, left = V[k:], U[:-k]
        out: dict = {}
        for tw, tc in self._tails[U]:
            out[tw + right] = tc
        for tw, tc in self._tails[V]:
            nw = left + tw
            old = out.get(nw)
            new = -tc if old is None else old - tc
            if new.is_zero():
                out.pop(nw, None)
            else:
                out[nw] = new
        return out

    def _overlaps(self, U: tuple):
        """Overlaps of ``U`` with every inserted word (itself included), both orders."""
        N = self.degree_bound
        degU = self._lead[U]
        for k in range(1, len(U)):
            for V in self._prefix.get(U[-k:], ()):
                if len(V) > k:
                    d = degU + self._deg(V[k:])
                    if d <= N:
                        yield d, U, V, k
            for V in self._suffix.get(U[:k], ()):
                if len(V) > k and V != U:
                    d = self._lead[V] + self._deg(U[k:])
                    if d <= N:
                        yield d, V, U, k

    # -- completion -----------------------------------------------------
    def _complete(self) -> None:
        N = self.degree_bound
        weights = self.presentation.weights
        by_degree: dict[int, list] = defaultdict(list)
        for rel in self.presentation.relations:
            d = rel.degree(weights)
            if d == 0:
                raise PresentationError("constant relation: the algebra is zero")
            if d <= N:
                by_degree[d].append(self._encode(rel))
        pending: dict[int, list] = defaultdict(list)
        for d in range(1, N + 1):
            fresh: list[tuple] = []
            for cand in by_degree.get(d, []) + [self._s_poly(*p) for p in pending.pop(d, [])]:
                nf = self._normal_form(cand)
                if not nf:
                    continue
                lw = min(nf)
                inv = nf[lw].inv()
                nf = {w: c * inv for w, c in nf.items()}
                for other in fresh:
                    tails = self._tails[other]
                    hit = next((c for w, c in tails if w == lw), None)
                    if hit is None:
                        continue
                    merged = dict(tails)
                    del merged[lw]
                    for w, c in nf.items():
                        if w == lw:
                            continue
                        old = merged.get(w)
                        new = -(hit * c) if old is None else old - hit * c
                        if new.is_zero():
                            merged.pop(w, None)
                        else:
                            merged[w] = new
                    self._tails[other] = list(merged.items())
                self._insert(lw, nf)
                fresh.append(lw)
            for lw in fresh:
                for d2, U, V, k in self._overlaps(lw):
                    if self._tails[U] or self._tails[V]:
                        pending[d2].append((U, V, k))
        for lw in self._tails:
            self._tails[lw].sort()

    # -- public views -----------------------------------------------------
    @property
    def elements(self) -> dict[tuple, NCPolynomial]:
        out = {}
        for lw in sorted(self._lead, key=lambda w: (self._lead[w], w)):
            out[self._decode_word(lw)] = self._decode(self._poly(lw))
        return out

    @property
    def leading_words(self) -> list[tuple[str, ...]]:
        return list(self.elements)

    def __len__(self) -> int:
        return len(self._lead)

    def restrict(self, d: int) -> dict[tuple, NCPolynomial]:
        """Elements of degree ``≤ d``."""
        weights = self.presentation.weights
        return {w: f for w, f in self.elements.items() if sum(weights[x] for x in w) <= d}

    def reduce(self, f: NCPolynomial, strategy: str = "left") -> NCPolynomial:
        """Normal form of ``f``; ``strategy`` picks the leftmost or rightmost
        reducible occurrence inside the largest reducible term."""
        if strategy not in ("left", "right"):
            raise ValueError("strategy must be 'left' or 'right'")
        if f.field != self.field:
            raise ValueError("polynomial over a different field")
        if f.degree(self.presentation.weights) > self.degree_bound:
            raise DegreeOverflow(f"degree {f.degree(self.presentation.weights)} exceeds bound {self.degree_bound}")
        terms = self._encode(f)
        homog = f.is_homogeneous(self.presentation.weights)
        return self._decode(self._normal_form(terms, strategy == "right", homogeneous=homog))

    def is_normal(self, word: Sequence[str]) -> bool:
        return self._find(tuple(self._idx[x] for x in word)) is None

    def normal_words(self, N: Optional[int] = None) -> list[list[tuple[str, ...]]]:
        """Normal words of each degree ``0..N``, largest first within a degree."""
        N = self.degree_bound if N is None else N
        if N > self.degree_bound:
            raise DegreeOverflow(f"degree {N} exceeds bound {self.degree_bound}")
        lead, lens, wt = self._lead, self._lens, self._wt
        levels: list[list[tuple]] = [[()]]
        letters = range(len(self._names))
        for d in range(1, N + 1):
            level = []
            for x in letters:
                if wt[x] > d:
                    continue
                for w in levels[d - wt[x]]:
                    cand = w + (x,)
                    if not any(ln <= len(cand) and cand[-ln:] in lead for ln in lens):
                        level.append(cand)
            level.sort()
            levels.append(level)
        return [[self._decode_word(w) for w in lv] for lv in levels]

    def hilbert(self, N: Optional[int] = None) -> HilbertData:
        return HilbertData(tuple(len(lv) for lv in self.normal_words(N)), "groebner")

    def to_json(self) -> list:
        return [
            {"leading_word": list(lw), "polynomial": f.to_json()}
            for lw, f in self.elements.items()
        ]


def _resolve_order(p: Presentation, order) -> MonomialOrder:
    if order is None:
        return MonomialOrder.for_presentation(p)
    if isinstance(order, MonomialOrder):
        if set(order.precedence) != set(p.names):
            raise ValueError("order precedence must list exactly the generators")
        return order
    return MonomialOrder.for_presentation(p, order)


def truncated_groebner(p: Presentation, order=None, N: int = 10) -> TruncatedGroebnerBasis:
    """Complete ``p``'s relations through degree ``N``.

    ``order`` is a :class:`MonomialOrder`, a precedence list, or ``None`` for
    the generators' declaration order (``x1 > … > xm > c > b > a`` for the
    quadratic algebras built in :mod:`lingrowth.presentation`).
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    gb = TruncatedGroebnerBasis(p, _resolve_order(p, order), N)
    gb._complete()
    return gb


def normal_words(p: Presentation, order=None, N: int = 10) -> list[list[tuple[str, ...]]]:
    return truncated_groebner(p, order, N).normal_words()


def hilbert_oracle(p: Presentation, order=None, N: int = 10) -> HilbertData:
    return truncated_groebner(p, order, N).hilbert()


def reduce(f: NCPolynomial, gb: TruncatedGroebnerBasis, strategy: str = "left") -> NCPolynomial:
    return gb.reduce(f, strategy)


def random_polynomial(gb: TruncatedGroebnerBasis, rng, degree: int, n_terms: int = 4) -> NCPolynomial:
    """Random homogeneous polynomial of length-``degree`` words (unit weights)."""
    names = gb.order.precedence
    terms: dict = {}
    for _ in range(n_terms):
        w = tuple(rng.choice(names) for _ in range(degree))
        terms[w] = gb.field.random_element(rng)
    return NCPolynomial(gb.field, terms)
