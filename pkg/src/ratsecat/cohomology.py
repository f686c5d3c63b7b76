"""Truncated cohomology rings, induced maps and graded ideals with their powers."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import cached_property
from typing import Iterator

from .algebra import Cdga, CdgaMorphism, Element, default_truncation
from .errors import CdgaError
from .linalg import (
    Echelon,
    QuotientMap,
    RationalMatrix,
    SubspaceBasis,
    as_vector,
    axpy,
    image_basis,
    kernel_basis,
)
from .results import EXACT, LOWER_BOUND, InvariantResult, Witness

_ATOM = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class GradedRing:
    """Common surface of the rings ideals live in.

    Elements are sparse coordinate vectors per degree.  Subclasses provide
    ``window`` (largest reliable degree), ``dim`` and ``_mul_basis``.
    """

    window: int

    def __init__(self):
        self._products = {}

    def dim(self, k: int) -> int:
        raise NotImplementedError

    def _mul_basis(self, i: int, a: int, j: int, b: int) -> dict:
        raise NotImplementedError

    @property
    def complete(self) -> bool:
        """Every nonzero degree of the ring lies inside the window."""
        raise NotImplementedError

    def dims(self) -> dict:
        return {k: self.dim(k) for k in range(self.window + 1)}

    def basis_product(self, i: int, a: int, j: int, b: int) -> dict:
        key = (i, a, j, b)
        try:
            return self._products[key]
        except KeyError:
            out = self._mul_basis(i, a, j, b)
            self._products[key] = out
            return out

    def mul(self, i: int, u: dict, j: int, v: dict) -> dict:
        if i + j > self.window:
            raise ValueError(f"product lands in degree {i + j}, beyond the window {self.window}")
        out = {}
        for a, ca in u.items():
            for b, cb in v.items():
                axpy(ca * cb, self.basis_product(i, a, j, b), out)
        return out

    def ring_generators(self) -> list:
        """``(degree, vector)`` pairs generating the positive part as an algebra."""
        raise NotImplementedError

    def format(self, k: int, v: dict) -> str:
        raise NotImplementedError


class AlgebraRing(GradedRing):
    """An algebra viewed in its monomial basis, degrees 0..N."""

    def __init__(self, algebra: Cdga, N: int):
        super().__init__()
        self.algebra = algebra
        self.window = N

    @property
    def complete(self) -> bool:
        A = self.algebra
        return A.is_finite and A.top_degree <= self.window

    def dim(self, k: int) -> int:
        return self.algebra.dim(k)

    def _mul_basis(self, i, a, j, b):
        A = self.algebra
        res = A.monomial_product(A.basis(i)[a], A.basis(j)[b])
        if res is None:
            return {}
        sign, w = res
        return {A.index_of(w): Fraction(sign)}

    def ring_generators(self) -> list:
        A = self.algebra
        out = []
        for g in A.generators:
            e = A.gen(g.index)
            if e and g.degree <= self.window:
                out.append((g.degree, A.vector(e)))
        return out

    def element(self, k: int, v: dict) -> Element:
        return self.algebra.from_vector(k, v)

    def format(self, k: int, v: dict) -> str:
        return str(self.element(k, v))


class CohomologyRing(GradedRing):
    """Cohomology of a Cdga in degrees 0..N-1 with a lazily filled product table.

    Degree N is never certified: its cycles are computable but products
    landing there are not, so the window stops at N-1.
    """

    def __init__(self, algebra: Cdga, N: int):
        super().__init__()
        if N < 1:
            raise ValueError("cohomology needs N >= 1")
        self.algebra = algebra
        self.N = N
        self.window = N - 1
        self.cycles = {}
        self.boundaries = {}
        self.quotients = {}
        self.representatives = {}
        prev = None
        for k in range(N):
            dk = algebra.differential_matrix(k)
            Z = kernel_basis(dk)
            B = image_basis(prev) if prev is not None else SubspaceBasis(algebra.dim(k))
            q = QuotientMap(Z, B)
            self.cycles[k] = Z
            self.boundaries[k] = B
            self.quotients[k] = q
            self.representatives[k] = [algebra.from_vector(k, r) for r in q.representatives]
            prev = dk

    @property
    def complete(self) -> bool:
        A = self.algebra
        return A.is_finite and A.top_degree <= self.window

    def dim(self, k: int) -> int:
        if k < 0 or k > self.window:
            return 0
        return self.quotients[k].dim

    def class_of(self, z: Element, k: int | None = None) -> dict:
        """Coordinates of the class of a cycle ``z`` in the representative basis."""
        if k is None:
            k = z.degree
        if k is None:
            return {}
        if k > self.window:
            raise ValueError(f"degree {k} is outside the certified window")
        v = self.algebra.vector(z, k)
        try:
            return as_vector(self.quotients[k](v))
        except ValueError:
            raise CdgaError(f"{z} is not a cycle") from None

    def is_boundary(self, k: int, v: dict) -> bool:
        return v in self.boundaries[k]

    def cycle(self, k: int, v: dict) -> Element:
        """Representative cycle for the class with coordinates ``v``."""
        out = self.algebra.zero()
        for i, c in v.items():
            out = out + c * self.representatives[k][i]
        return out

    def _mul_basis(self, i, a, j, b):
        z = self.representatives[i][a] * self.representatives[j][b]
        return self.class_of(z, i + j)

    @property
    def product_table(self) -> dict:
        """Structure constants ``{(i, a, j, b): class vector}`` for i+j within the window."""
        for i in range(self.window + 1):
            for j in range(self.window + 1 - i):
                for a in range(self.dim(i)):
                    for b in range(self.dim(j)):
                        self.basis_product(i, a, j, b)
        return dict(self._products)

    @cached_property
    def _generators(self) -> list:
        gens = []
        for k in range(1, self.window + 1):
            ech = Echelon()
            for dg, g in gens:
                for a in range(self.dim(k - dg)):
                    ech.add(self.mul(k - dg, {a: Fraction(1)}, dg, g))
            for a in range(self.dim(k)):
                v = {a: Fraction(1)}
                if ech.add(v):
                    gens.append((k, v))
        return gens

    def ring_generators(self) -> list:
        return list(self._generators)

    def format(self, k: int, v: dict) -> str:
        return str(self.cycle(k, v))

    def __repr__(self) -> str:
        dims = {k: d for k, d in self.dims().items() if d}
        return f"CohomologyRing({self.algebra.name}, N={self.N}, dims={dims})"


def compute_cohomology(A: Cdga, N: int | None = None) -> CohomologyRing:
    return CohomologyRing(A, N if N is not None else default_truncation(A))


class InducedMap:
    """``H(phi)`` as one matrix per degree of the window."""

    def __init__(self, phi: CdgaMorphism, source: CohomologyRing, target: CohomologyRing):
        if source.N != target.N:
            raise ValueError("source and target cohomology must share the truncation")
        self.phi = phi
        self.source = source
        self.target = target
        self.matrices = {}
        for k in range(source.window + 1):
            for b in source.boundaries[k].vectors:
                img = phi(source.algebra.from_vector(k, b))
                if not target.is_boundary(k, target.algebra.vector(img, k)):
                    raise CdgaError(f"{phi.name} does not map boundaries to boundaries")
            cols = [target.class_of(phi(z), k) for z in source.representatives[k]]
            self.matrices[k] = RationalMatrix.from_columns(cols, target.dim(k))

    def __call__(self, k: int, v: dict) -> dict:
        return self.matrices[k] @ v

    def is_multiplicative(self) -> bool:
        S, T = self.source, self.target
        for i in range(S.window + 1):
            for j in range(S.window + 1 - i):
                for a in range(S.dim(i)):
                    for b in range(S.dim(j)):
                        lhs = self(i + j, S.basis_product(i, a, j, b))
                        rhs = T.mul(i, self(i, {a: 1}), j, self(j, {b: 1}))
                        if as_vector(lhs) != rhs:
                            return False
        return True


def induced_map(phi: CdgaMorphism, N: int | None = None) -> InducedMap:
    N = N if N is not None else default_truncation(phi.source)
    return InducedMap(phi, CohomologyRing(phi.source, N), CohomologyRing(phi.target, N))


class GradedIdeal:
    """Per-degree subspaces of a graded ring, closed under multiplication.

    ``products`` optionally records, for each basis vector, a factorisation
    as a tuple of ``(degree, vector)`` ideal elements.
    """

    def __init__(self, ambient: GradedRing, spaces: dict, products: dict | None = None,
                 power: int = 1):
        self.ambient = ambient
        n = ambient.window
        self.spaces = {k: spaces.get(k, SubspaceBasis(ambient.dim(k))) for k in range(n + 1)}
        self.power = power
        if products is None:
            products = {k: [(((k, v),), v) for v in S.vectors] for k, S in self.spaces.items()}
        self.products = products

    @property
    def window(self) -> int:
        return self.ambient.window

    def dim(self, k: int) -> int:
        S = self.spaces.get(k)
        return S.dim if S is not None else 0

    def dims(self) -> dict:
        return {k: S.dim for k, S in self.spaces.items()}

    def is_zero(self) -> bool:
        return all(S.dim == 0 for S in self.spaces.values())

    def contains(self, k: int, v: dict) -> bool:
        return v in self.spaces[k]

    def is_subideal_of(self, other: "GradedIdeal") -> bool:
        return all(S.is_subspace_of(other.spaces[k]) for k, S in self.spaces.items())

    def check_closed(self) -> bool:
        """Closure under multiplication by ring generators, within the window."""
        R = self.ambient
        for k, S in self.spaces.items():
            for dg, g in R.ring_generators():
                if k + dg > self.window:
                    continue
                for v in S.vectors:
                    if not self.contains(k + dg, R.mul(dg, g, k, v)):
                        return False
        return True

    @cached_property
    def generators(self) -> list:
        """A minimal set of ``(degree, vector)`` ideal generators."""
        R = self.ambient
        gens = []
        for k in range(self.window + 1):
            S = self.spaces[k]
            if not S.dim:
                continue
            ech = Echelon()
            for dg, g in gens:
                for a in range(R.dim(k - dg)):
                    ech.add(R.mul(k - dg, {a: Fraction(1)}, dg, g))
            for v in S.vectors:
                if ech.add(v):
                    gens.append((k, dict(v)))
        return gens

    def lowest_product(self) -> tuple | None:
        """First recorded product in the lowest nonzero degree."""
        for k in sorted(self.products):
            if self.products[k]:
                return k, self.products[k][0]
        return None

    def __repr__(self) -> str:
        dims = {k: d for k, d in self.dims().items() if d}
        return f"GradedIdeal(power={self.power}, dims={dims})"


def ideal_powers(I: GradedIdeal) -> Iterator[GradedIdeal]:
    """Yield ``I, I^2, I^3, ...`` computed as ``I^p = sum_g I^(p-1) * g``.

    The sum runs over minimal ideal generators ``g``; each basis vector of a
    power is kept in product form so it can serve as a witness.
    """
    R = I.ambient
    if I.dim(0):
        raise ValueError("ideal contains units; its powers never vanish")
    gens = I.generators
    current = I
    yield current
    while True:
        echs = {}
        prods = {}
        for j in sorted(current.products):
            for factors, vec in current.products[j]:
                for dg, g in gens:
                    k = j + dg
                    if k > R.window:
                        continue
                    w = R.mul(j, vec, dg, g)
                    if not w:
                        continue
                    ech = echs.setdefault(k, Echelon(R.dim(k)))
                    if ech.add(w):
                        prods.setdefault(k, []).append((factors + ((dg, g),), w))
        spaces = {k: ech.basis() for k, ech in echs.items()}
        current = GradedIdeal(R, spaces, {k: prods.get(k, []) for k in range(R.window + 1)},
                              power=current.power + 1)
        yield current


def ideal_power(I: GradedIdeal, p: int) -> GradedIdeal:
    if p < 1:
        raise ValueError("ideal power needs p >= 1")
    for P in ideal_powers(I):
        if P.power == p:
            return P
    raise AssertionError("unreachable")


def render_product(ring: GradedRing, factors: tuple) -> str:
    """Render factors as ``(f)^k*g ...`` grouping consecutive repeats."""
    groups = []
    for k, v in factors:
        text = ring.format(k, v)
        if groups and groups[-1][0] == text:
            groups[-1][1] += 1
        else:
            groups.append([text, 1])
    parts = []
    for text, n in groups:
        if n == 1:
            parts.append(f"({text})" if " " in text else text)
        else:
            parts.append(f"{text}^{n}" if _ATOM.fullmatch(text) else f"({text})^{n}")
    return "*".join(parts)


def product_witness(I: GradedIdeal) -> Witness | None:
    found = I.lowest_product()
    if found is None:
        return None
    k, (factors, vec) = found
    return Witness("nonzero-product", k, I.power, render_product(I.ambient, factors),
                   ring=I.ambient, factors=factors, vector=vec)


def kernel_ideal(phi: CdgaMorphism, N: int | None = None, level: str = "cohomology",
                 source_ring: GradedRing | None = None, target_ring: GradedRing | None = None
                 ) -> GradedIdeal:
    """``ker H(phi)`` (level="cohomology") or ``ker phi`` (level="algebra")."""
    N = N if N is not None else default_truncation(phi.source)
    if level == "algebra":
        R = source_ring or AlgebraRing(phi.source, N)
        spaces = {k: kernel_basis(phi.matrix(k)) for k in range(N + 1)}
    elif level == "cohomology":
        R = source_ring or CohomologyRing(phi.source, N)
        T = target_ring or CohomologyRing(phi.target, N)
        H = InducedMap(phi, R, T)
        spaces = {k: kernel_basis(H.matrices[k]) for k in range(R.window + 1)}
    else:
        raise ValueError(f"unknown level {level!r}")
    I = GradedIdeal(R, spaces)
    if not I.check_closed():
        raise CdgaError("kernel is not closed under multiplication")
    return I


def nilpotency(I: GradedIdeal, name: str = "nilpotency", instance: str = "") -> InvariantResult:
    """Largest m with ``I^m != 0`` (``I^0`` the whole ring), so the zero ideal gives 0.

    Exact when the ambient ring lies wholly inside the window; otherwise a
    lower bound.
    """
    R = I.ambient
    last = None
    value = 0
    for P in ideal_powers(I):
        if P.is_zero():
            value = P.power - 1
            break
        last = P
    witness = product_witness(last) if last is not None else None
    status = EXACT if R.complete else LOWER_BOUND
    return InvariantResult(name, value, status, _truncation(R), witness=witness, instance=instance)


def _truncation(R: GradedRing) -> int:
    return R.N if isinstance(R, CohomologyRing) else R.window
