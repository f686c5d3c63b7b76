"""Free graded-commutative algebras over Q with monomial relations and a differential.

Monomials are exponent tuples indexed by generator declaration order.  The
canonical factor order is (degree, declaration index); signs of products
come from counting transpositions of odd generators against that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    ChainMapError,
    CdgaError,
    DegreeMismatchError,
    DifferentialSquareError,
    ParentMismatchError,
    RelationError,
)
from .linalg import RationalMatrix

Monomial = tuple  # tuple[int, ...]

TRUNCATION_CAP = 40


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    index: int

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


class Element:
    """Finite Q-linear combination of monomials of one algebra."""

    __slots__ = ("parent", "terms")

    def __init__(self, parent: "Cdga", terms: dict):
        # terms are assumed normalised; use Cdga.element() for raw input
        self.parent = parent
        self.terms = terms

    @property
    def degrees(self) -> set:
        deg = self.parent.monomial_degree
        return {deg(m) for m in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    @property
    def degree(self) -> int | None:
        """Degree of a homogeneous element; None for zero, error when mixed."""
        ds = self.degrees
        if not ds:
            return None
        if len(ds) > 1:
            raise CdgaError(f"element {self} is not homogeneous")
        return next(iter(ds))

    def _check(self, other: "Element") -> None:
        if other.parent is not self.parent:
            raise ParentMismatchError("elements belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, Element):
            if other == 0:
                return self
            other = self.parent.scalar(other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Element(self.parent, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.parent, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        c = Fraction(other)
        if not c:
            return Element(self.parent, {})
        return Element(self.parent, {m: c * v for m, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        out = self.parent.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.parent is other.parent and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def d(self) -> "Element":
        return self.parent.d(self)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def __str__(self) -> str:
        return self.parent.format_element(self)

    def __repr__(self) -> str:
        return f"<{self.parent.name}: {self}>"


class Cdga:
    """Graded-commutative algebra over Q with monomial relations and differential.

    ``generators`` is a sequence of ``(name, degree)`` pairs.  ``relations``
    is a sequence of monomials declared zero.  ``differential`` maps
    generator names to raw term dicts ``{exponent tuple: coefficient}`` or
    to Elements of an algebra with the same generators.  Validation (degree
    +1, stability of the relation ideal, d∘d = 0) runs at construction.
    """

    def __init__(
        self,
        generators: Sequence,
        relations: Iterable = (),
        differential: Mapping | None = None,
        truncation: int | None = None,
        name: str | None = None,
        *,
        blocks: Sequence | None = None,
        display: Sequence | None = None,
        factors: tuple = (),
        check: bool = True,
    ):
        gens = []
        seen = set()
        for i, g in enumerate(generators):
            gname, deg = (g.name, g.degree) if isinstance(g, Generator) else g
            if not isinstance(deg, int) or deg < 1:
                raise DegreeMismatchError(f"generator {gname} must have degree >= 1", gname)
            if gname in seen:
                raise CdgaError(f"duplicate generator name {gname}")
            seen.add(gname)
            gens.append(Generator(gname, deg, i))
        self.generators = tuple(gens)
        self.ngens = len(gens)
        self.name = name or "A"
        self.truncation = truncation
        self._by_name = {g.name: g for g in gens}
        self.order = tuple(sorted(range(self.ngens), key=lambda i: (gens[i].degree, i)))
        self.position = tuple(self.order.index(i) for i in range(self.ngens))
        self._odd = tuple(g.odd for g in gens)
        self._degs = tuple(g.degree for g in gens)
        self.blocks = tuple(blocks) if blocks else ((0, self.ngens),)
        self.display = tuple(display) if display else tuple(g.name for g in gens)
        self.factors = factors
        self.relations = self._normalise_relations(relations)
        self._mul_cache = {}
        self._d_cache = {}
        self._basis_cache = {}
        self._d = {}
        differential = differential or {}
        for key, value in differential.items():
            g = self.generator(key)
            raw = value.terms if isinstance(value, Element) else value
            self._d[g.index] = self.element(raw)
        if check:
            self._validate()

    # -- construction helpers -------------------------------------------------

    def _normalise_relations(self, relations) -> tuple:
        rels = set()
        for r in relations:
            if isinstance(r, Mapping):
                exps = [0] * self.ngens
                for key, e in r.items():
                    exps[self.generator(key).index] = e
                r = tuple(exps)
            r = tuple(r)
            if len(r) != self.ngens or any(e < 0 for e in r):
                raise RelationError(f"malformed relation monomial {r}")
            if not any(r):
                raise RelationError("the unit cannot be a relation")
            if any(e > 1 and odd for e, odd in zip(r, self._odd)):
                continue  # already zero by graded commutativity
            rels.add(r)
        minimal = [r for r in rels if not any(s != r and _divides(s, r) for s in rels)]
        return tuple(sorted(minimal, key=self.monomial_key))

    def _validate(self) -> None:
        for i, dg in self._d.items():
            g = self.generators[i]
            if dg and dg.degrees != {g.degree + 1}:
                raise DegreeMismatchError(
                    f"d{g.name} must have degree {g.degree + 1}", g.name)
        if self.relations and self._d:
            free = Cdga([(g.name, g.degree) for g in self.generators],
                        differential={g.name: self._d[g.index].terms for g in self.generators
                                      if g.index in self._d},
                        check=False)
            for r in self.relations:
                for m in free.d(Element(free, {r: Fraction(1)})).terms:
                    if not self.is_killed(m):
                        raise RelationError(
                            f"d({self.format_monomial(r)}) leaves the relation ideal")
        for g in self.generators:
            ddg = self.d(self.d(self.gen(g.name)))
            if ddg:
                raise DifferentialSquareError(f"d(d{g.name}) = {ddg} != 0", g.name)

    # -- generators, monomials, elements -------------------------------------

    def generator(self, key) -> Generator:
        if isinstance(key, Generator):
            key = key.index
        if isinstance(key, int):
            return self.generators[key]
        try:
            return self._by_name[key]
        except KeyError:
            raise CdgaError(f"unknown generator {key!r}") from None

    def monomial(self, **exps) -> Monomial:
        out = [0] * self.ngens
        for key, e in exps.items():
            out[self.generator(key).index] = e
        return tuple(out)

    def monomial_degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self._degs))

    def monomial_key(self, m: Monomial) -> tuple:
        """Graded-lex sort key: degree first, then larger canonical exponents first."""
        return (self.monomial_degree(m),) + tuple(-m[i] for i in self.order)

    def factors_of(self, m: Monomial) -> list:
        """``(Generator, exponent)`` pairs in canonical order."""
        return [(self.generators[i], m[i]) for i in self.order if m[i]]

    def is_killed(self, m: Monomial) -> bool:
        if any(e > 1 and odd for e, odd in zip(m, self._odd)):
            return True
        return any(_divides(r, m) for r in self.relations)

    def element(self, terms: Mapping) -> Element:
        out = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != self.ngens or any(e < 0 for e in m):
                raise CdgaError(f"monomial {m} does not belong to {self.name}")
            c = Fraction(c)
            if not c or self.is_killed(m):
                continue
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Element(self, out)

    @property
    def unit(self) -> Monomial:
        return (0,) * self.ngens

    def one(self) -> Element:
        return Element(self, {self.unit: Fraction(1)})

    def zero(self) -> Element:
        return Element(self, {})

    def scalar(self, c) -> Element:
        return self.element({self.unit: c})

    def gen(self, key) -> Element:
        g = self.generator(key)
        m = [0] * self.ngens
        m[g.index] = 1
        return self.element({tuple(m): 1})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.ngens)]

    def mono_element(self, m: Monomial, c=1) -> Element:
        return self.element({tuple(m): c})

    # -- arithmetic ------------------------------------------------------------

    def monomial_product(self, u: Monomial, v: Monomial):
        """``(sign, w)`` with ``u*v = sign*w``, or None when the product vanishes."""
        key = (u, v)
        try:
            return self._mul_cache[key]
        except KeyError:
            pass
        odd, pos = self._odd, self.position
        result = None
        if not any(odd[i] and u[i] and v[i] for i in range(self.ngens)):
            w = tuple(a + b for a, b in zip(u, v))
            if not self.is_killed(w):
                upos = [pos[i] for i in range(self.ngens) if odd[i] and u[i]]
                inversions = 0
                if upos:
                    for j in range(self.ngens):
                        if odd[j] and v[j]:
                            pj = pos[j]
                            inversions += sum(1 for p in upos if p > pj)
                result = (-1 if inversions % 2 else 1, w)
        self._mul_cache[key] = result
        return result

    def _d_monomial(self, m: Monomial) -> Element:
        try:
            return self._d_cache[m]
        except KeyError:
            pass
        first = next((i for i in self.order if m[i]), None)
        if first is None:
            res = self.zero()
        else:
            rest = list(m)
            rest[first] -= 1
            rest = tuple(rest)
            g = self.mono_element(tuple(1 if i == first else 0 for i in range(self.ngens)))
            r = self.mono_element(rest)
            dg = self._d.get(first, self.zero())
            res = dg * r
            tail = self._d_monomial(rest)
            if tail:
                res = res + (-1 if self._odd[first] else 1) * (g * tail)
        self._d_cache[m] = res
        return res

    def d(self, u: Element) -> Element:
        if u.parent is not self:
            raise ParentMismatchError("element does not belong to this algebra")
        out = self.zero()
        for m, c in u.terms.items():
            out = out + c * self._d_monomial(m)
        return out

    def differential_of(self, key) -> Element:
        return self._d.get(self.generator(key).index, self.zero())

    @property
    def has_zero_differential(self) -> bool:
        return not any(self._d.values())

    # -- bases -------------------------------------------------------------------

    def basis(self, k: int) -> list:
        """Standard monomials of degree exactly ``k`` in canonical order."""
        if k in self._basis_cache:
            return self._basis_cache[k][0]
        if k < 0:
            return []
        out = []
        order, degs, odd = self.order, self._degs, self._odd
        caps = [k // degs[i] if not odd[i] else 1 for i in range(self.ngens)]
        for r in self.relations:
            support = [i for i, e in enumerate(r) if e]
            if len(support) == 1:
                i = support[0]
                caps[i] = min(caps[i], r[i] - 1)
        exps = [0] * self.ngens

        def rec(j: int, remaining: int) -> None:
            if remaining == 0:
                m = tuple(exps)
                if not self.is_killed(m):
                    out.append(m)
                return
            if j == len(order):
                return
            i = order[j]
            top = min(caps[i], remaining // degs[i])
            for e in range(top, -1, -1):
                exps[i] = e
                rec(j + 1, remaining - e * degs[i])
            exps[i] = 0

        rec(0, k)
        out.sort(key=self.monomial_key)
        self._basis_cache[k] = (out, {m: i for i, m in enumerate(out)})
        return out

    def index_of(self, m: Monomial) -> int:
        self.basis(self.monomial_degree(m))
        return self._basis_cache[self.monomial_degree(m)][1][m]

    def dim(self, k: int) -> int:
        return len(self.basis(k))

    def vector(self, u: Element, k: int | None = None) -> dict:
        """Coordinates of a homogeneous element in the degree-k monomial basis."""
        if u.parent is not self:
            raise ParentMismatchError("element does not belong to this algebra")
        if k is None:
            k = u.degree
        if k is None:
            return {}
        self.basis(k)
        index = self._basis_cache[k][1]
        out = {}
        for m, c in u.terms.items():
            try:
                out[index[m]] = c
            except KeyError:
                raise CdgaError(f"{self.format_monomial(m)} does not lie in degree {k}") from None
        return out

    def from_vector(self, k: int, v: Mapping) -> Element:
        b = self.basis(k)
        return Element(self, {b[i]: Fraction(c) for i, c in v.items() if c})

    def differential_matrix(self, k: int) -> RationalMatrix:
        """Matrix of ``d: A^k -> A^{k+1}``."""
        src, dst = self.basis(k), self.basis(k + 1)
        cols = [self.vector(self._d_monomial(m), k + 1) for m in src]
        return RationalMatrix.from_columns(cols, len(dst))

    @cached_property
    def is_finite(self) -> bool:
        """True when every even generator is bounded by a pure-power relation."""
        bounded = set()
        for r in self.relations:
            support = [i for i, e in enumerate(r) if e]
            if len(support) == 1:
                bounded.add(support[0])
        return all(g.odd or g.index in bounded for g in self.generators)

    @cached_property
    def top_degree(self) -> int | None:
        """Largest degree with a nonzero basis element; None when infinite."""
        if not self.is_finite:
            return None
        caps = [1] * self.ngens
        for r in self.relations:
            support = [i for i, e in enumerate(r) if e]
            if len(support) == 1:
                caps[support[0]] = r[support[0]] - 1
        bound = sum(c * d for c, d in zip(caps, self._degs))
        return max(k for k in range(bound + 1) if self.basis(k))

    @property
    def top_generator_degree(self) -> int:
        return max(self._degs, default=0)

    # -- display ---------------------------------------------------------------

    def block_of(self, i: int) -> int:
        for b, (lo, hi) in enumerate(self.blocks):
            if lo <= i < hi:
                return b
        raise IndexError(i)

    def _plain(self, idxs: Sequence[int], m: Monomial) -> str:
        parts = []
        for i in idxs:
            e = m[i]
            if e == 1:
                parts.append(self.display[i])
            elif e > 1:
                parts.append(f"{self.display[i]}^{e}")
        return "*".join(parts) if parts else "1"

    def format_monomial(self, m: Monomial) -> tuple:
        """String for ``m`` in tensor-position notation, with the reordering sign.

        Returns ``(sign, text)`` such that ``m = sign * text``.  Single-block
        algebras need no reordering and always give sign +1.
        """
        if len(self.blocks) == 1:
            return 1, self._plain(self.order, m)
        target = sorted(self.order, key=lambda i: (self.block_of(i), self.position[i]))
        odd_seq = [self.position[i] for i in target if m[i] and self._odd[i]]
        inv = sum(1 for a in range(len(odd_seq)) for b in range(a + 1, len(odd_seq))
                  if odd_seq[a] > odd_seq[b])
        pieces = []
        for lo, hi in self.blocks:
            idxs = [i for i in self.order if lo <= i < hi]
            pieces.append(self._plain(idxs, m))
        return (-1 if inv % 2 else 1), "@".join(pieces)

    def format_element(self, u: Element) -> str:
        if not u.terms:
            return "0"
        out = []
        for m in sorted(u.terms, key=self.monomial_key):
            sign, text = self.format_monomial(m)
            c = u.terms[m] * sign
            mag = abs(c)
            unit = not any(m)
            if unit:
                body = str(mag)
            elif mag == 1:
                body = text
            else:
                body = f"{mag}*{text}"
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    # -- equality ----------------------------------------------------------------

    def signature(self) -> tuple:
        return (
            tuple((g.name, g.degree) for g in self.generators),
            self.relations,
            tuple(sorted((i, tuple(sorted(e.terms.items()))) for i, e in self._d.items() if e)),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cdga):
            return NotImplemented
        return self.signature() == other.signature()

    def __hash__(self) -> int:
        return hash(self.signature())

    def __repr__(self) -> str:
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"Cdga({self.name}; {gens})"

    # -- tensor structure --------------------------------------------------------

    def include(self, side: int, u: Element) -> Element:
        """Image of ``u`` under ``A -> A⊗B`` (side 0) or ``B -> A⊗B`` (side 1)."""
        if not self.factors:
            raise CdgaError(f"{self.name} is not a tensor product")
        A, B = self.factors
        src = (A, B)[side]
        if u.parent is not src:
            raise ParentMismatchError("element does not belong to that tensor factor")
        if side == 0:
            pad = (0,) * B.ngens
            return Element(self, {m + pad: c for m, c in u.terms.items()})
        pad = (0,) * A.ngens
        return Element(self, {pad + m: c for m, c in u.terms.items()})

    def tensor(self, a: Element, b: Element) -> Element:
        """The element ``a⊗b``."""
        return self.include(0, a) * self.include(1, b)


def _divides(r: Monomial, m: Monomial) -> bool:
    return all(a <= b for a, b in zip(r, m))


def multiply(u: Element, v: Element) -> Element:
    """Graded-commutative product with Koszul signs."""
    if u.parent is not v.parent:
        raise ParentMismatchError("cannot multiply elements of different algebras")
    A = u.parent
    out = {}
    for m1, c1 in u.terms.items():
        for m2, c2 in v.terms.items():
            res = A.monomial_product(m1, m2)
            if res is None:
                continue
            sign, w = res
            s = out.get(w, 0) + sign * c1 * c2
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return Element(A, out)


def apply_differential(u: Element) -> Element:
    return u.parent.d(u)


def basis_up_to(A: Cdga, N: int) -> dict:
    """Standard monomials per degree 0..N; empty degrees are omitted."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    return {k: A.basis(k) for k in range(N + 1) if A.basis(k)}


def default_truncation(A: Cdga) -> int:
    """Eight times the top generator degree, capped at 40.

    Finite-dimensional algebras are always given room for their whole top
    degree plus one, so every class sits in the certified window.
    """
    N = min(8 * A.top_generator_degree, TRUNCATION_CAP)
    N = max(N, 1)
    if A.is_finite:
        N = max(N, A.top_degree + 1)
    return N


def ground_field(name: str = "Q") -> Cdga:
    return Cdga([], name=name)


def tensor_product(A: Cdga, B: Cdga, name: str | None = None) -> Cdga:
    display = A.display + B.display
    names = [g.name for g in A.generators] + [g.name for g in B.generators]
    if len(set(names)) != len(names):
        blocks = A.blocks + tuple((lo + A.ngens, hi + A.ngens) for lo, hi in B.blocks)
        names = []
        for b, (lo, hi) in enumerate(blocks):
            names.extend(f"{display[i]}_{b + 1}" for i in range(lo, hi))
        if len(set(names)) != len(names):
            names = [f"{n}_{i}" for i, n in enumerate(names)]
    gens = [(n, g.degree) for n, g in zip(names, A.generators + B.generators)]
    padA, padB = (0,) * B.ngens, (0,) * A.ngens
    rels = [r + padA for r in A.relations] + [padB + r for r in B.relations]
    diff = {}
    for g in A.generators:
        dg = A.differential_of(g.index)
        if dg:
            diff[names[g.index]] = {m + padA: c for m, c in dg.terms.items()}
    for g in B.generators:
        dg = B.differential_of(g.index)
        if dg:
            diff[names[A.ngens + g.index]] = {padB + m: c for m, c in dg.terms.items()}
    blocks = A.blocks + tuple((lo + A.ngens, hi + A.ngens) for lo, hi in B.blocks)
    return Cdga(gens, rels, diff, name=name or f"{A.name}⊗{B.name}",
                blocks=blocks, display=display, factors=(A, B))


def tensor_power(A: Cdga, n: int, name: str | None = None) -> Cdga:
    if n < 1:
        raise ValueError("tensor power needs n >= 1")
    out = A
    if n == 1:
        return Cdga([(g.name, g.degree) for g in A.generators], A.relations,
                    {g.name: A.differential_of(g.index).terms for g in A.generators},
                    truncation=A.truncation, name=name or A.name,
                    blocks=A.blocks, display=A.display, factors=A.factors)
    for _ in range(n - 1):
        out = tensor_product(out, A)
    out.name = name or f"{A.name}^{n}"
    return out


class CdgaMorphism:
    """Degree-preserving algebra map commuting with d, given on generators.

    ``images`` maps generator names (or indices) of ``source`` to Elements of
    ``target``; unlisted generators go to zero.
    """

    def __init__(self, source: Cdga, target: Cdga, images: Mapping, name: str | None = None):
        self.source = source
        self.target = target
        self.name = name or "phi"
        imgs = [target.zero() for _ in source.generators]
        for key, val in images.items():
            g = source.generator(key)
            if not isinstance(val, Element):
                val = target.element(val) if isinstance(val, Mapping) else target.scalar(val)
            if val.parent is not target:
                raise ParentMismatchError(f"image of {g.name} is not in {target.name}")
            imgs[g.index] = val
        self.images = tuple(imgs)
        self._cache = {}
        self._validate()

    def _validate(self) -> None:
        for g, img in zip(self.source.generators, self.images):
            if img and img.degrees != {g.degree}:
                raise DegreeMismatchError(
                    f"{self.name}({g.name}) must have degree {g.degree}", g.name)
        for r in self.source.relations:
            if self._image_of_monomial(r):
                raise ChainMapError(
                    f"{self.name} does not kill the relation {self.source.format_monomial(r)[1]}")
        for g in self.source.generators:
            lhs = self(self.source.differential_of(g.index))
            rhs = self.target.d(self.images[g.index])
            if lhs != rhs:
                raise ChainMapError(f"{self.name} does not commute with d on {g.name}", g.name)

    def _image_of_monomial(self, m: Monomial) -> Element:
        try:
            return self._cache[m]
        except KeyError:
            pass
        out = self.target.one()
        for g, e in self.source.factors_of(m):
            for _ in range(e):
                out = out * self.images[g.index]
                if not out:
                    break
        self._cache[m] = out
        return out

    def __call__(self, u: Element) -> Element:
        if u.parent is not self.source:
            raise ParentMismatchError(f"element is not in the source of {self.name}")
        out = self.target.zero()
        for m, c in u.terms.items():
            out = out + c * self._image_of_monomial(m)
        return out

    def matrix(self, k: int) -> RationalMatrix:
        cols = [self.target.vector(self._image_of_monomial(m), k) for m in self.source.basis(k)]
        return RationalMatrix.from_columns(cols, self.target.dim(k))

    def first_non_surjective_degree(self, N: int) -> int | None:
        from .linalg import rank

        for k in range(N + 1):
            if rank(self.matrix(k)) != self.target.dim(k):
                return k
        return None

    def __repr__(self) -> str:
        return f"CdgaMorphism({self.name}: {self.source.name} -> {self.target.name})"


def apply_morphism(phi: CdgaMorphism, u: Element) -> Element:
    return phi(u)


def identity(A: Cdga) -> CdgaMorphism:
    return CdgaMorphism(A, A, {g.name: A.gen(g.index) for g in A.generators}, name=f"id({A.name})")


def augmentation(A: Cdga, target: Cdga | None = None) -> CdgaMorphism:
    return CdgaMorphism(A, target or ground_field(), {}, name=f"aug({A.name})")


def multiplication(A: Cdga, n: int) -> CdgaMorphism:
    """The n-fold multiplication ``A^{⊗n} -> A``, a surjective model of the diagonal."""
    if n < 1:
        raise ValueError("multiplication needs n >= 1")
    T = tensor_power(A, n)
    images = {g.index: A.gen(g.index % A.ngens) for g in T.generators}
    return CdgaMorphism(T, A, images, name=f"mult({A.name},{n})")


def tensor_morphism(f: CdgaMorphism, g: CdgaMorphism) -> CdgaMorphism:
    S = tensor_product(f.source, g.source)
    T = tensor_product(f.target, g.target)
    images = {}
    for gen, img in zip(f.source.generators, f.images):
        images[gen.index] = T.include(0, img)
    for gen, img in zip(g.source.generators, g.images):
        images[f.source.ngens + gen.index] = T.include(1, img)
    return CdgaMorphism(S, T, images, name=f"{f.name}⊗{g.name}")
