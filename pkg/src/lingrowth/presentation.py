"""Quadratic algebras A(V, L, R, σ) and their Hilbert functions.

For ``V = K^m`` with basis ``x1..xm``, subspaces ``L, R ⊆ V`` and an
operator ``σ``, the algebra is generated by ``x1..xm, c, b, a`` (all of
degree 1) subject to

* every product ``xi xj``;
* every word ending in ``a`` and every word starting with ``b``;
* ``a·ℓ`` for ℓ in the basis of L and ``ρ·b`` for ρ in the basis of R;
* ``xi c − c σ(xi)``.

Its degree ``n + 3`` component splits into four pieces of dimensions
``m + 4``, ``m − r``, ``m − dim σⁿ⁺¹L`` and ``m − dim(R + σⁿL)``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .exactfield import QQ, FieldDescriptor, FieldElement, FieldError, parse_field
from .linalg import (
    IntersectionProfile,
    Matrix,
    ShapeError,
    Subspace,
    block_diag,
    kernel,
    orbit_profile,
)
from .recurrence import LinearRecurrence, companion_matrix, from_orbit

Word = tuple


class PresentationError(ValueError):
    pass


# -- noncommutative polynomials -----------------------------------------------


class NCPolynomial:
    """Linear combination of words (tuples of generator names)."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field: FieldDescriptor, terms: Mapping[Word, object] = ()):
        clean = {}
        for w, c in dict(terms).items():
            c = field.coerce(c)
            if not c.is_zero():
                clean[tuple(w)] = c
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("NCPolynomial is immutable")

    @classmethod
    def monomial(cls, fd: FieldDescriptor, word: Iterable[str], coeff=1) -> "NCPolynomial":
        return cls(fd, {tuple(word): coeff})

    @classmethod
    def linear_form(
        cls, fd: FieldDescriptor, coeffs: Sequence, names: Sequence[str],
        left: Word = (), right: Word = (),
    ) -> "NCPolynomial":
        """``left · (Σ coeffs[i] names[i]) · right``."""
        return cls(fd, {tuple(left) + (n,) + tuple(right): c for c, n in zip(coeffs, names)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degrees(self, weights: Optional[Mapping[str, int]] = None) -> set[int]:
        if weights is None:
            return {len(w) for w in self.terms}
        return {sum(weights[x] for x in w) for w in self.terms}

    def degree(self, weights: Optional[Mapping[str, int]] = None) -> int:
        return max(self.degrees(weights), default=-1)

    def is_homogeneous(self, weights: Optional[Mapping[str, int]] = None) -> bool:
        return len(self.degrees(weights)) <= 1

    def letters(self) -> set[str]:
        return {x for w in self.terms for x in w}

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return NCPolynomial(self.field, out)

    def __neg__(self) -> "NCPolynomial":
        return NCPolynomial(self.field, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + (-other)

    def scale(self, c) -> "NCPolynomial":
        c = self.field.coerce(c)
        return NCPolynomial(self.field, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: "NCPolynomial") -> "NCPolynomial":
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                out[w] = out[w] + a * b if w in out else a * b
        return NCPolynomial(self.field, out)

    def __eq__(self, other):
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.field, frozenset(self.terms.items()))))
        return self._hash

    def __repr__(self) -> str:
        return f"NCPolynomial({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            c = self.terms[w]
            word = "*".join(w) if w else "1"
            parts.append(word if c.is_one() else f"({c})*{word}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [{"coeff": str(self.terms[w]), "word": list(w)} for w in sorted(self.terms)]

    @classmethod
    def from_json(cls, fd: FieldDescriptor, obj: Sequence[Mapping]) -> "NCPolynomial":
        out: dict = {}
        for t in obj:
            w = tuple(t["word"])
            c = fd.parse(str(t["coeff"]))
            out[w] = out[w] + c if w in out else c
        return cls(fd, out)


@dataclass(frozen=True)
class Presentation:
    """Finitely presented graded algebra: generators with degrees, relations."""

    field: FieldDescriptor
    generators: tuple  # ((name, degree), ...)
    relations: tuple  # (NCPolynomial, ...)

    def __post_init__(self):
        names = [n for n, _ in self.generators]
        if len(set(names)) != len(names):
            raise PresentationError("generator names must be unique")
        for n, d in self.generators:
            if not isinstance(n, str) or not n:
                raise PresentationError(f"bad generator name {n!r}")
            if int(d) < 1:
                raise PresentationError(f"generator {n} must have positive degree")
        known = set(names)
        weights = self.weights
        for rel in self.relations:
            if rel.field != self.field:
                raise FieldError("relation over a different field")
            if rel.is_zero():
                raise PresentationError("zero relation")
            stray = rel.letters() - known
            if stray:
                raise PresentationError(f"relation uses undeclared generators {sorted(stray)}")
            if not rel.is_homogeneous(weights):
                raise PresentationError(f"relation {rel} is not homogeneous")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.generators)

    @property
    def weights(self) -> dict[str, int]:
        return {n: int(d) for n, d in self.generators}

    @property
    def g(self) -> int:
        return len(self.generators)

    @property
    def s(self) -> int:
        return len(self.relations)

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "generators": [{"name": n, "degree": int(d)} for n, d in self.generators],
            "relations": [r.to_json() for r in self.relations],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "Presentation":
        fd = parse_field(obj["field"])
        gens = tuple((g["name"], int(g.get("degree", 1))) for g in obj["generators"])
        rels = tuple(NCPolynomial.from_json(fd, r) for r in obj["relations"])
        return cls(fd, gens, rels)


@dataclass(frozen=True)
class HilbertData:
    values: tuple[int, ...]
    method: str

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "h", "method"])
        for n, h in enumerate(self.values):
            w.writerow([n, h, self.method])
        return buf.getvalue()


# -- the quadruple (V, L, R, σ) ----------------------------------------------


@dataclass(frozen=True)
class VLRSData:
    field: FieldDescriptor
    m: int
    L: Subspace
    R: Subspace
    sigma: Matrix

    def __post_init__(self):
        if self.m < 1:
            raise ShapeError("m must be positive")
        for name, sub in (("L", self.L), ("R", self.R)):
            if sub.ambient_dim != self.m:
                raise ShapeError(f"{name} lives in dimension {sub.ambient_dim}, expected {self.m}")
            if sub.field != self.field:
                raise FieldError(f"{name} is over {sub.field}, expected {self.field}")
        if self.sigma.shape != (self.m, self.m):
            raise ShapeError(f"sigma has shape {self.sigma.shape}, expected {(self.m, self.m)}")
        if self.sigma.field != self.field:
            raise FieldError(f"sigma is over {self.sigma.field}, expected {self.field}")

    @classmethod
    def make(cls, fd: FieldDescriptor, L: Iterable, R: Iterable, sigma: Iterable) -> "VLRSData":
        sig = Matrix.from_rows(fd, sigma)
        m = sig.nrows
        return cls(fd, m, Subspace.span(fd, m, L), Subspace.span(fd, m, R), sig)

    @property
    def l(self) -> int:  # noqa: E743
        return self.L.dim

    @property
    def r(self) -> int:
        return self.R.dim

    @property
    def t(self) -> int:
        return orbit_profile(self, self.m).image_dims[self.m]

    @property
    def g(self) -> int:
        return self.m + 3

    @property
    def s(self) -> int:
        return self.m * self.m + 3 * self.m + 5 + self.r + self.l

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "m": self.m,
            "L": [[str(e) for e in v] for v in self.L.basis],
            "R": [[str(e) for e in v] for v in self.R.basis],
            "sigma": [[str(e) for e in row] for row in self.sigma.rows],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "VLRSData":
        fd = parse_field(obj["field"])
        sig = Matrix.from_rows(fd, obj["sigma"])
        m = int(obj.get("m", sig.nrows))
        return cls(fd, m, Subspace.span(fd, m, obj.get("L", [])),
                   Subspace.span(fd, m, obj.get("R", [])), sig)


def default_names(m: int) -> tuple[str, ...]:
    """``x1..xm, c, b, a`` -- listed in decreasing monomial precedence."""
    return tuple(f"x{i}" for i in range(1, m + 1)) + ("c", "b", "a")


def build_vlrs(data: VLRSData, names: Optional[Sequence[str]] = None) -> Presentation:
    """Emit the ``m² + 3m + 5 + r + l`` quadratic relations of A(V, L, R, σ)."""
    m, fd = data.m, data.field
    names = tuple(names) if names is not None else default_names(m)
    if len(names) != m + 3:
        raise PresentationError(f"need {m + 3} generator names, got {len(names)}")
    xs, (c, b, a) = names[:m], names[m:]
    mono = lambda *w: NCPolynomial.monomial(fd, w)  # noqa: E731
    rels: list[NCPolynomial] = []
    rels += [mono(xi, xj) for xi in xs for xj in xs]
    rels += [mono(y, a) for y in names]
    rels += [mono(b, y) for y in names if y != a]
    rels += [NCPolynomial.linear_form(fd, v, xs, left=(a,)) for v in data.L.basis]
    rels += [NCPolynomial.linear_form(fd, v, xs, right=(b,)) for v in data.R.basis]
    for i, xi in enumerate(xs):
        image = data.sigma.column(i)
        rels.append(mono(xi, c) - NCPolynomial.linear_form(fd, image, xs, left=(c,)))
    pres = Presentation(fd, tuple((n, 1) for n in names), tuple(rels))
    assert pres.s == data.s
    return pres


def component_dims(profile: IntersectionProfile, m: int, r: int, n: int) -> tuple[int, int, int, int]:
    """Sizes of the four pieces of the degree ``n + 3`` component."""
    return (
        m + 4,
        m - r,
        m - profile.image_dims[n + 1],
        m - profile.sum_dims[n],
    )


def hilbert_closed(data: VLRSData, n_max: int) -> HilbertData:
    """Hilbert values 0..n_max from the four component dimensions."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    m, r, l = data.m, data.r, data.l
    vals = [1, m + 3, 3 * m + 4 - r - l][: n_max + 1]
    if n_max >= 3:
        prof = orbit_profile(data, n_max - 2)
        for n in range(n_max - 2):
            vals.append(sum(component_dims(prof, m, r, n)))
    return HilbertData(tuple(vals), "closed")


# -- the recurrence correspondences ------------------------------------------


def from_recurrence(rec: LinearRecurrence) -> VLRSData:
    """``V = K^d``, σ the companion matrix, ``L = K·v0``, R = first coordinate zero."""
    if not rec.invertible_companion:
        raise PresentationError("last recurrence coefficient must be nonzero")
    if all(a.is_zero() for a in rec.initial):
        raise PresentationError("initial vector must be nonzero")
    fd, d = rec.field, rec.order
    sigma = companion_matrix(rec)
    L = Subspace.span(fd, d, [rec.initial])
    R = Subspace.span(fd, d, [[1 if j == i else 0 for j in range(d)] for i in range(1, d)])
    return VLRSData(fd, d, L, R, sigma)


def annihilator(R: Subspace) -> tuple:
    """A vector ``u`` with ``(u, ρ) = 0`` for all ρ in a hyperplane R."""
    fd, m = R.field, R.ambient_dim
    if R.dim != m - 1:
        raise PresentationError("annihilator needs a hyperplane")
    if not R.basis:
        return (fd.one(),)
    ker = kernel(Matrix(fd, R.basis))
    return ker.basis[0]


def to_recurrence(data: VLRSData, n_max: int) -> LinearRecurrence:
    """Recurrence ``a_n = uᵀ σⁿ v`` vanishing exactly where ``σⁿL ⊆ R``."""
    if data.l != 1 or data.r != data.m - 1:
        raise PresentationError("need dim L = 1 and dim R = m - 1")
    u = annihilator(data.R)
    v = data.L.basis[0]
    return from_orbit(u, data.sigma, v, n_max)[1]


# -- named families -------------------------------------------------------------


def _field_of(*vals, field: Optional[FieldDescriptor] = None) -> FieldDescriptor:
    if field is not None:
        return field
    for v in vals:
        if isinstance(v, FieldElement):
            return v.field
    return QQ


def family_fermat(alpha, beta, field: Optional[FieldDescriptor] = None) -> VLRSData:
    """σ = diag(α, β, 1), L = K(1,1,1), R = K{(1,−1,0), (1,0,1)}: ``c_n = [αⁿ + βⁿ = 1]``."""
    fd = _field_of(alpha, beta, field=field)
    alpha, beta = fd.coerce(alpha), fd.coerce(beta)
    if alpha.is_zero() or beta.is_zero():
        raise PresentationError("Fermat parameters must be nonzero")
    return VLRSData.make(
        fd,
        L=[[1, 1, 1]],
        R=[[1, -1, 0], [1, 0, 1]],
        sigma=[[alpha, 0, 0], [0, beta, 0], [0, 0, 1]],
    )


def family_lech(p: int) -> VLRSData:
    """σ = diag(x+1, x, 1) over F_p(x); ``c_n = 1`` exactly at powers of p."""
    fd = FieldDescriptor.rational_functions(p)
    x = fd.gen()
    return VLRSData.make(
        fd,
        L=[[1, 1, 1]],
        R=[[1, 1, 0], [1, 0, 1]],
        sigma=[[x + 1, 0, 0], [0, x, 0], [0, 0, 1]],
    )


def family_segment(rho: int, alpha, field: Optional[FieldDescriptor] = None) -> VLRSData:
    """σ = diag(α, 1), R = K(1, −α^ρ), L = K(1, 1); ``c_n = [α^{n+ρ} = −1]``."""
    fd = _field_of(alpha, field=field)
    alpha = fd.coerce(alpha)
    if alpha.is_zero():
        raise PresentationError("alpha must be nonzero")
    if rho <= 0:
        raise PresentationError("rho must be positive")
    return VLRSData.make(
        fd,
        L=[[1, 1]],
        R=[[1, -(alpha ** rho)]],
        sigma=[[alpha, 0], [0, 1]],
    )


def direct_sum(a: VLRSData, b: VLRSData) -> VLRSData:
    """Block-diagonal quadruple; intersection profiles add."""
    if a.field != b.field:
        raise FieldError("direct sum of data over different fields")
    fd = a.field
    z = fd.zero()
    left = lambda v: tuple(v) + (z,) * b.m  # noqa: E731
    right = lambda v: (z,) * a.m + tuple(v)  # noqa: E731
    m = a.m + b.m
    L = Subspace.span(fd, m, [left(v) for v in a.L.basis] + [right(v) for v in b.L.basis])
    R = Subspace.span(fd, m, [left(v) for v in a.R.basis] + [right(v) for v in b.R.basis])
    return VLRSData(fd, m, L, R, block_diag(a.sigma, b.sigma))


def add_polynomial_summands(p: Presentation, t: int) -> Presentation:
    """Adjoin ``t`` polynomial lines ``K[u_i]`` sharing the unit.

    Each new generator ``u_i`` annihilates every other generator from both
    sides, so ``h(n)`` grows by exactly ``t`` in every positive degree.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return p
    taken = set(p.names)
    new: list[str] = []
    k = 1
    while len(new) < t:
        name = f"u{k}"
        if name not in taken:
            new.append(name)
        k += 1
    all_names = p.names + tuple(new)
    fd = p.field
    seen: set = set()
    rels = list(p.relations)
    for u in new:
        for y in all_names:
            if y == u:
                continue
            for w in ((u, y), (y, u)):
                if w not in seen:
                    seen.add(w)
                    rels.append(NCPolynomial.monomial(fd, w))
    gens = p.generators + tuple((u, 1) for u in new)
    return Presentation(fd, gens, tuple(rels))
