"""Exact linear algebra over a :class:`FieldDescriptor`.

Vectors are tuples of :class:`FieldElement`; matrices act on column vectors.
Subspaces always carry their reduced row-echelon basis, so two subspaces are
equal exactly when their dataclass fields are equal.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from typing import TYPE_CHECKING, Iterable, Sequence

from .exactfield import FieldDescriptor, FieldElement, FieldError, parse_field

if TYPE_CHECKING:  # pragma: no cover
    from .presentation import VLRSData

Vector = tuple

# Second, kernel-based intersection computation; enabled by env or per call.
DEBUG = bool(os.environ.get("LINGROWTH_DEBUG"))


class ShapeError(ValueError):
    pass


def vector(fd: FieldDescriptor, entries: Iterable) -> Vector:
    return tuple(fd.coerce(e) for e in entries)


def dot(u: Sequence[FieldElement], v: Sequence[FieldElement]) -> FieldElement:
    if len(u) != len(v):
        raise ShapeError(f"dot of lengths {len(u)} and {len(v)}")
    acc = u[0].field.zero() if u else None
    for a, b in zip(u, v):
        if a.is_zero() or b.is_zero():
            continue
        acc = acc + a * b
    return acc


@dataclass(frozen=True)
class Matrix:
    field: FieldDescriptor
    rows: tuple

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ShapeError("matrix dimensions must be positive")
        width = len(self.rows[0])
        for row in self.rows:
            if len(row) != width:
                raise ShapeError("ragged matrix")
            for e in row:
                if not isinstance(e, FieldElement) or e.field != self.field:
                    raise FieldError("matrix entries must share the matrix descriptor")

    @classmethod
    def from_rows(cls, fd: FieldDescriptor, rows: Iterable[Iterable]) -> "Matrix":
        return cls(fd, tuple(vector(fd, r) for r in rows))

    @classmethod
    def identity(cls, fd: FieldDescriptor, n: int) -> "Matrix":
        return cls.from_rows(fd, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, fd: FieldDescriptor, n: int, k: int | None = None) -> "Matrix":
        return cls.from_rows(fd, [[0] * (n if k is None else k) for _ in range(n)])

    @classmethod
    def diag(cls, fd: FieldDescriptor, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls.from_rows(fd, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(self.column(j) for j in range(self.ncols)))

    def apply(self, v: Sequence[FieldElement]) -> Vector:
        if len(v) != self.ncols:
            raise ShapeError(f"{self.shape} matrix applied to length-{len(v)} vector")
        return tuple(dot(row, v) for row in self.rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            cols = [other.column(j) for j in range(other.ncols)]
            return Matrix(self.field, tuple(tuple(dot(r, c) for c in cols) for r in self.rows))
        return self.apply(other)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and rank(self.rows) == self.nrows

    def to_json(self) -> dict:
        return {"field": str(self.field), "rows": [[str(e) for e in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj: dict) -> "Matrix":
        fd = parse_field(obj["field"])
        return cls.from_rows(fd, obj["rows"])


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    if a.field != b.field:
        raise FieldError("block_diag of matrices over different fields")
    z = a.field.zero()
    rows = [tuple(r) + (z,) * b.ncols for r in a.rows]
    rows += [(z,) * a.ncols + tuple(r) for r in b.rows]
    return Matrix(a.field, tuple(rows))


def _echelon(rows: Sequence[Sequence[FieldElement]], width: int):
    """Reduced row-echelon form of ``rows``; returns (nonzero rows, pivots)."""
    work = [list(r) for r in rows]
    pivots: list[int] = []
    out: list[list[FieldElement]] = []
    col = 0
    while work and col < width:
        pick = next((i for i, r in enumerate(work) if not r[col].is_zero()), None)
        if pick is None:
            col += 1
            continue
        row = work.pop(pick)
        inv = row[col].inv()
        row = [e * inv for e in row]
        for target in (work, out):
            for r in target:
                f = r[col]
                if not f.is_zero():
                    for j in range(col, width):
                        if not row[j].is_zero():
                            r[j] = r[j] - f * row[j]
        out.append(row)
        pivots.append(col)
        col += 1
    return [tuple(r) for r in out], pivots


def rank(rows: Sequence[Sequence[FieldElement]]) -> int:
    if not rows:
        return 0
    return len(_echelon(rows, len(rows[0]))[1])


@dataclass(frozen=True)
class Subspace:
    """Subspace of K^m held as its canonical RREF basis (rows)."""

    field: FieldDescriptor
    ambient_dim: int
    basis: tuple = dc_field(default=())

    @classmethod
    def span(cls, fd: FieldDescriptor, m: int, vectors: Iterable[Iterable]) -> "Subspace":
        rows = [vector(fd, v) for v in vectors]
        for r in rows:
            if len(r) != m:
                raise ShapeError(f"vector of length {len(r)} in ambient dimension {m}")
        basis, _ = _echelon(rows, m)
        return cls(fd, m, tuple(basis))

    @classmethod
    def zero(cls, fd: FieldDescriptor, m: int) -> "Subspace":
        return cls(fd, m, ())

    @classmethod
    def full(cls, fd: FieldDescriptor, m: int) -> "Subspace":
        return cls.span(fd, m, [[1 if i == j else 0 for j in range(m)] for i in range(m)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, e in enumerate(r) if not e.is_zero()) for r in self.basis)

    def contains(self, v: Sequence) -> bool:
        v = vector(self.field, v)
        return subspace_sum(self, Subspace.span(self.field, self.ambient_dim, [v])).dim == self.dim

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "ambient_dim": self.ambient_dim,
            "basis": [[str(e) for e in r] for r in self.basis],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Subspace":
        fd = parse_field(obj["field"])
        return cls.span(fd, int(obj["ambient_dim"]), obj["basis"])


def rref(mat: Matrix) -> tuple[Subspace, int]:
    """Row space of ``mat`` in canonical form, with its rank."""
    basis, piv = _echelon(mat.rows, mat.ncols)
    return Subspace(mat.field, mat.ncols, tuple(basis)), len(piv)


def _check_compatible(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise ShapeError(f"ambient mismatch: {a.ambient_dim} vs {b.ambient_dim}")
    if a.field != b.field:
        raise FieldError(f"descriptor mismatch: {a.field} vs {b.field}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_compatible(a, b)
    if not b.basis:
        return a
    if not a.basis:
        return b
    basis, _ = _echelon(a.basis + b.basis, a.ambient_dim)
    return Subspace(a.field, a.ambient_dim, tuple(basis))


def kernel(mat: Matrix) -> Subspace:
    """Null space ``{v : mat v = 0}`` as a subspace of K^ncols."""
    fd, n = mat.field, mat.ncols
    basis, pivots = _echelon(mat.rows, n)
    free = [j for j in range(n) if j not in pivots]
    vecs = []
    for f in free:
        v = [fd.zero()] * n
        v[f] = fd.one()
        for row, pc in zip(basis, pivots):
            v[pc] = -row[f]
        vecs.append(v)
    return Subspace.span(fd, n, vecs)


def intersection(a: Subspace, b: Subspace) -> Subspace:
    """Explicit basis of ``a ∩ b`` from the kernel of the stacked system.

    Solves ``x·A = y·B``: kernel vectors ``(x, -y)`` of ``[A; B]^T`` map to
    intersection vectors ``x·A``.
    """
    _check_compatible(a, b)
    fd, m = a.field, a.ambient_dim
    if not a.basis or not b.basis:
        return Subspace.zero(fd, m)
    stacked = Matrix(fd, a.basis + b.basis).transpose()
    ker = kernel(stacked)
    vecs = []
    for k in ker.basis:
        coeffs = k[: a.dim]
        vecs.append([dot(coeffs, [row[j] for row in a.basis]) for j in range(m)])
    return Subspace.span(fd, m, vecs)


def subspace_intersection_dim(a: Subspace, b: Subspace, check: bool | None = None) -> int:
    """``dim(a ∩ b)`` by the modular law; ``check`` cross-validates via :func:`intersection`."""
    d = a.dim + b.dim - subspace_sum(a, b).dim
    if DEBUG if check is None else check:
        other = intersection(a, b).dim
        if other != d:
            raise AssertionError(f"intersection dimension mismatch: rank formula {d}, kernel {other}")
    return d


def apply(sigma: Matrix, s: Subspace) -> Subspace:
    """Image ``σ(s)`` in canonical form."""
    if sigma.shape != (s.ambient_dim, s.ambient_dim):
        raise ShapeError(f"{sigma.shape} operator on ambient dimension {s.ambient_dim}")
    if sigma.field != s.field:
        raise FieldError(f"descriptor mismatch: {sigma.field} vs {s.field}")
    if not s.basis:
        return s
    basis, _ = _echelon([sigma.apply(v) for v in s.basis], s.ambient_dim)
    return Subspace(s.field, s.ambient_dim, tuple(basis))


@dataclass(frozen=True)
class IntersectionProfile:
    """Per-``n`` dimensions for ``n = 0..n_max``."""

    image_dims: tuple[int, ...]  # dim σⁿL
    sum_dims: tuple[int, ...]  # dim (R + σⁿL)
    intersection_dims: tuple[int, ...]  # c_n = dim (R ∩ σⁿL)
    images: tuple[Subspace, ...] = dc_field(repr=False, compare=False, default=())

    @property
    def c(self) -> tuple[int, ...]:
        return self.intersection_dims

    def __len__(self) -> int:
        return len(self.image_dims)


def orbit_profile(data: "VLRSData", n_max: int) -> IntersectionProfile:
    """Iterate ``σⁿ⁺¹L = σ(σⁿL)`` and record the three dimensions at each step."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    cur = data.L
    images, dims, sums, caps = [], [], [], []
    for n in range(n_max + 1):
        if n:
            cur = apply(data.sigma, cur)
        s = subspace_sum(data.R, cur)
        images.append(cur)
        dims.append(cur.dim)
        sums.append(s.dim)
        caps.append(data.R.dim + cur.dim - s.dim)
        if DEBUG:
            subspace_intersection_dim(data.R, cur, check=True)
    return IntersectionProfile(tuple(dims), tuple(sums), tuple(caps), tuple(images))


def orbit_subvariety_set(
    phi: Matrix,
    alpha: Sequence[Sequence],
    R: Subspace,
    h: int,
    n_max: int,
) -> set[int]:
    """``{n ≤ n_max : dim(R + span{Φⁿα₁, …, Φⁿα_t}) ≤ h}``, Φ acting componentwise."""
    m = R.ambient_dim
    if phi.shape != (m, m):
        raise ShapeError(f"{phi.shape} operator on ambient dimension {m}")
    points = [vector(R.field, a) for a in alpha]
    for pt in points:
        if len(pt) != m:
            raise ShapeError(f"point of length {len(pt)} in ambient dimension {m}")
    hits = set()
    for n in range(n_max + 1):
        if n:
            points = [phi.apply(pt) for pt in points]
        if subspace_sum(R, Subspace.span(R.field, m, points)).dim <= h:
            hits.add(n)
    return hits
