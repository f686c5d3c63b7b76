"""Exact linear algebra over the rationals.

Vectors are sparse dicts ``{column: Fraction}`` with no zero entries.  Every
public function also accepts dense sequences.  Matrices act on column
vectors, so ``M`` with ``cols`` columns is a map ``Q^cols -> Q^rows``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

Vector = dict  # dict[int, Fraction]
VectorLike = Union[Mapping[int, object], Sequence[object]]


def as_vector(v: VectorLike) -> Vector:
    """Normalise ``v`` to a sparse vector with Fraction entries."""
    items = v.items() if isinstance(v, Mapping) else enumerate(v)
    out = {}
    for i, c in items:
        c = Fraction(c)
        if c:
            out[i] = c
    return out


def to_dense(v: Mapping[int, Fraction], n: int) -> list:
    return [v.get(i, Fraction(0)) for i in range(n)]


def axpy(a: Fraction, x: Mapping[int, Fraction], y: Vector) -> Vector:
    """In place ``y += a*x``; returns ``y``."""
    if not a:
        return y
    for i, c in x.items():
        s = y.get(i, 0) + a * c
        if s:
            y[i] = s
        else:
            y.pop(i, None)
    return y


def scale(a: Fraction, x: Mapping[int, Fraction]) -> Vector:
    if not a:
        return {}
    return {i: a * c for i, c in x.items()}


class RationalMatrix:
    """Sparse row-stored matrix with exact rational entries."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, rows: Iterable[VectorLike] = ()):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix shape must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        data = [as_vector(r) for r in rows]
        if not data:
            data = [{} for _ in range(nrows)]
        if len(data) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(data)}")
        for r in data:
            if r and (min(r) < 0 or max(r) >= ncols):
                raise ValueError("entry column out of range")
        self._rows = data

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]],
                   ncols: int | None = None) -> "RationalMatrix":
        rows = list(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[VectorLike], nrows: int) -> "RationalMatrix":
        data = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, c in as_vector(col).items():
                data[i][j] = c
        return cls(nrows, len(columns), data)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [{i: Fraction(1)} for i in range(n)])

    @property
    def shape(self) -> tuple:
        return self.nrows, self.ncols

    def row(self, i: int) -> Vector:
        return dict(self._rows[i])

    def rows(self) -> list:
        return [dict(r) for r in self._rows]

    def to_dense(self) -> list:
        return [to_dense(r, self.ncols) for r in self._rows]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix.from_columns(self._rows, self.ncols)

    def __matmul__(self, v: VectorLike) -> Vector:
        v = as_vector(v)
        out = {}
        for i, r in enumerate(self._rows):
            s = sum((c * v[j] for j, c in r.items() if j in v), Fraction(0))
            if s:
                out[i] = s
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __repr__(self) -> str:
        return f"RationalMatrix({self.nrows}x{self.ncols}, {self.to_dense()})"


def _integer_row(r: Mapping[int, Fraction]) -> dict:
    den = lcm(*(c.denominator for c in r.values())) if r else 1
    return {j: int(c * den) for j, c in r.items()}


def _primitive(r: dict) -> dict:
    g = 0
    for c in r.values():
        g = gcd(g, c)
    if g > 1:
        return {j: c // g for j, c in r.items()}
    return r


def rref(M: RationalMatrix) -> tuple:
    """Reduced row echelon form and pivot columns.

    Elimination runs on integer rows (each kept primitive) and is normalised
    to reduced fractions at the end.  Pivot rule: leftmost column with a
    nonzero entry, taking the smallest available row index.
    """
    rows = [_integer_row(r) for r in M._rows]
    pivots = []
    top = 0
    for col in range(M.ncols):
        if top == len(rows):
            break
        src = next((i for i in range(top, len(rows)) if rows[i].get(col)), None)
        if src is None:
            continue
        rows[top], rows[src] = rows[src], rows[top]
        prow = rows[top]
        p = prow[col]
        for i in range(len(rows)):
            if i == top:
                continue
            c = rows[i].get(col)
            if not c:
                continue
            new = {j: p * x for j, x in rows[i].items()}
            for j, x in prow.items():
                s = new.get(j, 0) - c * x
                if s:
                    new[j] = s
                else:
                    new.pop(j, None)
            rows[i] = _primitive(new)
        pivots.append(col)
        top += 1
    out = []
    for i, r in enumerate(rows):
        if i < len(pivots):
            p = r[pivots[i]]
            out.append({j: Fraction(x, p) for j, x in r.items()})
        else:
            out.append({})
    return RationalMatrix(M.nrows, M.ncols, out), pivots


def rank(M: RationalMatrix) -> int:
    return len(rref(M)[1])


class SubspaceBasis:
    """A subspace of ``Q^ambient`` held by its reduced echelon basis."""

    __slots__ = ("ambient", "vectors", "pivots")

    def __init__(self, ambient: int, vectors: Iterable[VectorLike] = ()):
        vecs = [as_vector(v) for v in vectors]
        for v in vecs:
            if v and max(v) >= ambient:
                raise ValueError("vector exceeds ambient dimension")
        if vecs:
            R, piv = rref(RationalMatrix(len(vecs), ambient, vecs))
            self.vectors = tuple(R.row(i) for i in range(len(piv)))
            self.pivots = tuple(piv)
        else:
            self.vectors = ()
            self.pivots = ()
        self.ambient = ambient

    @classmethod
    def full(cls, n: int) -> "SubspaceBasis":
        return cls(n, [{i: 1} for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def reduce(self, v: VectorLike) -> Vector:
        """Residue of ``v`` after clearing every pivot column."""
        v = as_vector(v)
        for p, b in zip(self.pivots, self.vectors):
            c = v.get(p)
            if c:
                axpy(-c, b, v)
        return v

    def __contains__(self, v: VectorLike) -> bool:
        return membership(v, self)

    def is_subspace_of(self, other: "SubspaceBasis") -> bool:
        return all(membership(v, other) for v in self.vectors)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return self.ambient == other.ambient and self.vectors == other.vectors

    def __repr__(self) -> str:
        return f"SubspaceBasis(ambient={self.ambient}, dim={self.dim})"


def kernel_basis(M: RationalMatrix) -> SubspaceBasis:
    R, pivots = rref(M)
    pivset = set(pivots)
    vecs = []
    for f in range(M.ncols):
        if f in pivset:
            continue
        v = {f: Fraction(1)}
        for i, p in enumerate(pivots):
            c = R._rows[i].get(f)
            if c:
                v[p] = -c
        vecs.append(v)
    return SubspaceBasis(M.ncols, vecs)


def image_basis(M: RationalMatrix) -> SubspaceBasis:
    return SubspaceBasis(M.nrows, M.transpose()._rows)


def membership(v: VectorLike, W: SubspaceBasis) -> bool:
    if isinstance(v, (list, tuple)) and len(v) != W.ambient:
        raise ValueError(f"vector of length {len(v)} does not live in Q^{W.ambient}")
    v = as_vector(v)
    if v and max(v) >= W.ambient:
        raise ValueError(f"vector does not live in Q^{W.ambient}")
    return not W.reduce(v)


class Echelon:
    """Incrementally grown independent set with optional coefficient tracking.

    Rows are kept zero on the pivots of all earlier rows, so a single pass
    in insertion order reduces any vector.
    """

    def __init__(self, ambient: int | None = None, track: bool = False):
        self.ambient = ambient
        self.track = track
        self._rows = []     # (pivot, row, combo)
        self.count = 0      # vectors offered via add()

    def __len__(self) -> int:
        return len(self._rows)

    def _reduce(self, v: Vector, combo: Vector | None) -> None:
        for p, row, rc in self._rows:
            c = v.get(p)
            if c:
                axpy(-c, row, v)
                if combo is not None:
                    axpy(-c, rc, combo)

    def reduce(self, v: VectorLike) -> Vector:
        v = as_vector(v)
        self._reduce(v, None)
        return v

    def contains(self, v: VectorLike) -> bool:
        return not self.reduce(v)

    def add(self, v: VectorLike) -> bool:
        """Offer ``v``; keep it when independent.  Returns True if kept."""
        v = as_vector(v)
        idx = self.count
        self.count += 1
        combo = {idx: Fraction(1)} if self.track else None
        self._reduce(v, combo)
        if not v:
            self.last_relation = combo
            return False
        p = min(v)
        inv = 1 / v[p]
        v = scale(inv, v)
        if combo is not None:
            combo = scale(inv, combo)
        self._rows.append((p, v, combo))
        return True

    def relation(self) -> Vector | None:
        """Dependency among offered vectors found by the last failed add()."""
        return getattr(self, "last_relation", None)

    def coordinates(self, v: VectorLike) -> Vector | None:
        """Coefficients on the offered vectors expressing ``v``, or None."""
        if not self.track:
            raise ValueError("coordinates need track=True")
        v = as_vector(v)
        combo = {}
        for p, row, rc in self._rows:
            c = v.get(p)
            if c:
                axpy(-c, row, v)
                axpy(c, rc, combo)
        return None if v else combo

    def basis(self, ambient: int | None = None) -> SubspaceBasis:
        n = self.ambient if ambient is None else ambient
        return SubspaceBasis(n, [row for _, row, _ in self._rows])


class QuotientMap:
    """Projection ``V -> V/W`` onto the span of chosen representatives."""

    def __init__(self, V: SubspaceBasis, W: SubspaceBasis):
        if V.ambient != W.ambient:
            raise ValueError("V and W live in different ambient spaces")
        if not W.is_subspace_of(V):
            raise ValueError("W is not contained in V")
        self.V = V
        self.W = W
        solver = Echelon(V.ambient, track=True)
        for w in W.vectors:
            solver.add(w)
        reps, slots = [], []
        for v in V.vectors:
            slot = solver.count
            if solver.add(v):
                reps.append(dict(v))
                slots.append(slot)
        self.representatives = reps
        self._solver = solver
        self._slots = slots

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def __call__(self, v: VectorLike) -> list:
        combo = self._solver.coordinates(v)
        if combo is None:
            raise ValueError("vector is not in V")
        return [combo.get(s, Fraction(0)) for s in self._slots]

    def lift(self, coords: Sequence[object]) -> Vector:
        out = {}
        for c, r in zip(coords, self.representatives):
            axpy(Fraction(c), r, out)
        return out


def quotient_map(V: SubspaceBasis, W: SubspaceBasis) -> QuotientMap:
    return QuotientMap(V, W)
