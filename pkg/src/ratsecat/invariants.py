"""Sectional-category invariants computable from a surjective model.

hsecat scans the projections ``A -> A/K^(m+1)``, ``K = ker phi``, for the
first one injective in cohomology.  msecat is only ever reported through
the Poincaré duality equality msecat = hsecat.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (
    Cdga,
    CdgaMorphism,
    Element,
    augmentation,
    default_truncation,
    multiplication,
)
from .cohomology import (
    AlgebraRing,
    CohomologyRing,
    GradedIdeal,
    ideal_powers,
    kernel_ideal,
    nilpotency,
    render_product,
)
from .errors import CdgaError, NotSurjectiveError, PoincareDualityError
from .linalg import Echelon, QuotientMap, RationalMatrix, SubspaceBasis, rank
from .results import EXACT, LOWER_BOUND, InvariantResult, Witness


def require_surjective(phi: CdgaMorphism, N: int) -> None:
    k = phi.first_non_surjective_degree(N)
    if k is not None:
        raise NotSurjectiveError(k)


class QuotientCdga:
    """``A / K^(m+1)`` in degrees 0..N with the induced differential.

    Each degree is the quotient of the full monomial space by the ideal
    power, with coset representatives chosen by :class:`QuotientMap`.
    """

    def __init__(self, parent: Cdga, ideal: GradedIdeal, m: int):
        self.parent = parent
        self.ideal = ideal
        self.m = m
        self.N = ideal.window
        self.quotients = {
            k: QuotientMap(SubspaceBasis.full(parent.dim(k)), ideal.spaces[k])
            for k in range(self.N + 1)
        }
        for k in range(self.N):
            for v in ideal.spaces[k].vectors:
                dv = parent.d(parent.from_vector(k, v))
                if not ideal.contains(k + 1, parent.vector(dv, k + 1)):
                    raise CdgaError(f"ideal power is not stable under d in degree {k}")

    def dim(self, k: int) -> int:
        return self.quotients[k].dim if 0 <= k <= self.N else 0

    def project(self, u: Element, k: int | None = None) -> dict:
        k = u.degree if k is None else k
        if k is None:
            return {}
        return {i: c for i, c in enumerate(self.quotients[k](self.parent.vector(u, k))) if c}

    def lift(self, k: int, v: dict) -> Element:
        coords = [v.get(i, 0) for i in range(self.dim(k))]
        return self.parent.from_vector(k, self.quotients[k].lift(coords))

    def differential_matrix(self, k: int) -> RationalMatrix:
        """``dbar: Q^k -> Q^(k+1)`` for ``k < N``."""
        cols = []
        for i in range(self.dim(k)):
            cols.append(self.project(self.parent.d(self.lift(k, {i: 1})), k + 1))
        return RationalMatrix.from_columns(cols, self.dim(k + 1))

    def multiply(self, i: int, u: dict, j: int, v: dict) -> dict:
        return self.project(self.lift(i, u) * self.lift(j, v), i + j)

    def cohomology_dims(self) -> dict:
        """Betti numbers of the quotient in degrees 0..N-1."""
        out = {}
        prev_rank = 0
        for k in range(self.N):
            r = rank(self.differential_matrix(k))
            out[k] = self.dim(k) - r - prev_rank
            prev_rank = r
        return out

    def homology_kernel(self, H: CohomologyRing, k: int) -> SubspaceBasis:
        """Classes of ``H^k(A)`` sent to zero in ``H^k`` of the quotient."""
        if k == 0:
            return SubspaceBasis(H.dim(0))
        ech = Echelon(self.dim(k), track=True)
        prev = self.differential_matrix(k - 1).transpose()
        nb = prev.nrows
        for i in range(nb):
            ech.add(prev.row(i))
        dead = []
        for a, z in enumerate(H.representatives[k]):
            if not ech.add(self.project(z, k)):
                rel = ech.relation()
                dead.append({a2 - nb: c for a2, c in rel.items() if a2 >= nb})
        return SubspaceBasis(H.dim(k), dead)

    def is_homology_injective(self, H: CohomologyRing) -> bool:
        return all(self.homology_kernel(H, k).dim == 0 for k in range(H.window + 1))


class Projection:
    """The cdga projection ``rho_m: A -> A/K^(m+1)``."""

    def __init__(self, quotient: QuotientCdga):
        self.quotient = quotient
        self.source = quotient.parent

    def __call__(self, u: Element) -> dict:
        return self.quotient.project(u)

    def is_chain_map(self) -> bool:
        Q, A = self.quotient, self.source
        for k in range(Q.N):
            D = Q.differential_matrix(k)
            for mono in A.basis(k):
                u = A.mono_element(mono)
                if Q.project(A.d(u), k + 1) != D @ Q.project(u, k):
                    return False
        return True

    def is_multiplicative(self) -> bool:
        Q, A = self.quotient, self.source
        for i in range(Q.N + 1):
            for j in range(Q.N + 1 - i):
                for a in A.basis(i):
                    for b in A.basis(j):
                        u, v = A.mono_element(a), A.mono_element(b)
                        prod = Q.multiply(i, Q.project(u, i), j, Q.project(v, j))
                        if Q.project(u * v, i + j) != prod:
                            return False
        return True

    def is_surjective(self) -> bool:
        Q, A = self.quotient, self.source
        for k in range(Q.N + 1):
            cols = [Q.project(A.mono_element(m), k) for m in A.basis(k)]
            if rank(RationalMatrix.from_columns(cols, Q.dim(k))) != Q.dim(k):
                return False
        return True


def _kernel_power(phi: CdgaMorphism, m: int, N: int) -> GradedIdeal:
    K = kernel_ideal(phi, N, level="algebra")
    for P in ideal_powers(K):
        if P.power == m + 1:
            return P
    raise AssertionError("unreachable")


def quotient_rho(phi: CdgaMorphism, m: int, N: int | None = None) -> tuple:
    """``(A/(ker phi)^(m+1), rho_m)`` for a surjective ``phi``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    N = N if N is not None else default_truncation(phi.source)
    require_surjective(phi, N)
    Q = QuotientCdga(phi.source, _kernel_power(phi, m, N), m)
    return Q, Projection(Q)


def _injectivity_failure(H: CohomologyRing, P: GradedIdeal, m: int) -> Witness | None:
    """First class of ``H(A)`` killed by ``rho_m``, lowest degree first.

    A class dies iff its cycle lies in ``K^(m+1) + B``.  A single recorded
    product of ``K^(m+1)`` that is itself a non-bounding cycle is preferred,
    since it renders as a product.
    """
    A = H.algebra
    for k in range(1, H.window + 1):
        if not H.dim(k) or not P.dim(k):
            continue
        for factors, vec in P.products[k]:
            z = A.from_vector(k, vec)
            if not A.d(z) and not H.is_boundary(k, vec):
                return Witness("injectivity-failure", k, m, render_product(P.ambient, factors),
                               ring=P.ambient, factors=factors, vector=vec)
        W = Echelon(A.dim(k))
        for b in H.boundaries[k].vectors:
            W.add(b)
        for v in P.spaces[k].vectors:
            W.add(v)
        residues = Echelon(A.dim(k), track=True)
        for a, z in enumerate(H.representatives[k]):
            if not residues.add(W.reduce(A.vector(z, k))):
                combo = residues.relation()
                cyc = A.zero()
                for i, c in sorted(combo.items()):
                    cyc = cyc + c * H.representatives[k][i]
                return Witness("injectivity-failure", k, m, str(cyc),
                               ring=P.ambient, vector=A.vector(cyc, k))
    return None


def hsecat(phi: CdgaMorphism, N: int | None = None) -> InvariantResult:
    """Smallest m with ``rho_m`` injective in cohomology on the certified window."""
    N = N if N is not None else default_truncation(phi.source)
    require_surjective(phi, N)
    A = phi.source
    H = CohomologyRing(A, N)
    K = kernel_ideal(phi, N, level="algebra", source_ring=AlgebraRing(A, N))
    failures = []
    for P in ideal_powers(K):
        m = P.power - 1
        w = _injectivity_failure(H, P, m)
        if w is None:
            break
        failures.append(w)
    status = EXACT if H.complete else LOWER_BOUND
    return InvariantResult("hsecat", m, status, N, witness=failures[-1] if failures else None,
                           failures=tuple(failures), instance=phi.name)


def nil_ker_H(phi: CdgaMorphism, N: int | None = None) -> InvariantResult:
    N = N if N is not None else default_truncation(phi.source)
    I = kernel_ideal(phi, N, level="cohomology")
    return nilpotency(I, name="nil-ker-H", instance=phi.name)


def cup_length(A: Cdga, N: int | None = None) -> InvariantResult:
    eps = augmentation(A)
    return nil_ker_H(eps, N).relabel("cup-length")


def htc(A: Cdga, n: int, N: int | None = None) -> InvariantResult:
    """hsecat of the n-fold multiplication, the model of the diagonal."""
    if n < 2:
        raise ValueError("higher topological complexity needs n >= 2")
    mu = multiplication(A, n)
    N = N if N is not None else default_truncation(mu.source)
    return hsecat(mu, N).relabel(f"htc_{n}")


@dataclass(frozen=True)
class PoincareDualityReport:
    is_pd: bool
    formal_dimension: int | None
    fundamental_class: Element | None = field(compare=False)
    pairing_ranks: dict = field(default_factory=dict)
    conclusive: bool = True
    reason: str = ""


def check_poincare_duality(A: Cdga, N: int | None = None,
                           H: CohomologyRing | None = None) -> PoincareDualityReport:
    """Decide whether ``H(A)`` is a Poincaré duality algebra.

    Finite dimensionality is settled either syntactically (bounded algebra
    whose top degree fits in the window) or by an empty top third of the
    window; otherwise the report is inconclusive and ``is_pd`` is False.
    """
    N = N if N is not None else default_truncation(A)
    H = H or CohomologyRing(A, N)
    W = H.window
    present = [k for k in range(W + 1) if H.dim(k)]
    if not H.complete and any(3 * k > 2 * W for k in present):
        return PoincareDualityReport(False, None, None, conclusive=False,
                                     reason="classes in the top third of the window")
    n = max(present)
    if H.dim(n) != 1:
        return PoincareDualityReport(False, n, None, reason=f"dim H^{n} = {H.dim(n)}")
    ranks = {}
    ok = True
    for k in range(n + 1):
        a, b = H.dim(k), H.dim(n - k)
        rows = []
        for i in range(a):
            rows.append([H.basis_product(k, i, n - k, j).get(0, 0) for j in range(b)])
        r = rank(RationalMatrix.from_dense(rows, b)) if a and b else 0
        ranks[k] = r
        if not (a == b == r):
            ok = False
    return PoincareDualityReport(ok, n, H.representatives[n][0], ranks,
                                 reason="" if ok else "degenerate pairing")


MSECAT_NOTE = "msecat equals hsecat over a Poincaré duality base"


def msecat_pd(phi: CdgaMorphism, N: int | None = None) -> InvariantResult:
    N = N if N is not None else default_truncation(phi.source)
    report = check_poincare_duality(phi.source, N)
    if not report.is_pd:
        raise PoincareDualityError(
            f"msecat not computable by this tool without PD ({report.reason or 'not PD'})")
    return hsecat(phi, N).relabel("msecat", MSECAT_NOTE)


def mtc(A: Cdga, n: int, N: int | None = None) -> InvariantResult:
    if n < 2:
        raise ValueError("higher topological complexity needs n >= 2")
    mu = multiplication(A, n)
    N = N if N is not None else default_truncation(mu.source)
    return msecat_pd(mu, N).relabel(f"mtc_{n}")


def validate_witness(w: Witness, ideal: GradedIdeal | None = None,
                     H: CohomologyRing | None = None) -> bool:
    """Re-check a witness with plain element arithmetic.

    Nonzero products are recomputed factor by factor; an injectivity
    failure must be a cycle with nonzero class lying in ``ideal + B``.
    """
    R = w.ring
    if w.factors:
        if isinstance(R, AlgebraRing):
            A = R.algebra
            prod = A.one()
            for k, v in w.factors:
                prod = prod * A.from_vector(k, v)
            value = A.vector(prod, w.degree) if prod else {}
        else:
            k0, value = w.factors[0]
            for k, v in w.factors[1:]:
                value = R.mul(k0, value, k, v)
                k0 += k
        if value != w.vector or not value:
            return False
        if ideal is not None and w.kind == "nonzero-product":
            if not all(ideal.contains(k, v) for k, v in w.factors):
                return False
    if w.kind == "injectivity-failure":
        if H is None:
            raise ValueError("injectivity witnesses need the cohomology ring")
        A = H.algebra
        z = A.from_vector(w.degree, w.vector)
        if A.d(z) or H.is_boundary(w.degree, w.vector):
            return False
        if ideal is not None:
            W = Echelon(A.dim(w.degree))
            for b in H.boundaries[w.degree].vectors:
                W.add(b)
            for v in ideal.spaces[w.degree].vectors:
                W.add(v)
            if not W.contains(w.vector):
                return False
    return True
