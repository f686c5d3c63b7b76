"""Checks of the product inequalities for hsecat, nil ker H and msecat.

A check only passes when uncertified values sit on the side where they
cannot flip the verdict; otherwise it is reported inconclusive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

from .algebra import (
    Cdga,
    CdgaMorphism,
    default_truncation,
    tensor_morphism,
    tensor_product,
)
from .cohomology import AlgebraRing, GradedIdeal, ideal_power, kernel_ideal
from .errors import PoincareDualityError
from .invariants import (
    MSECAT_NOTE,
    check_poincare_duality,
    hsecat,
    mtc,
    nil_ker_H,
    require_surjective,
)
from .linalg import Echelon
from .results import InvariantResult

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Check:
    claim: str
    relation: str
    lhs: int | None
    rhs: int | None
    verdict: str
    slack: int | None = None


@dataclass
class VerificationReport:
    kind: str
    instance: str
    truncation: int
    values: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        verdicts = {c.verdict for c in self.checks}
        if FAIL in verdicts:
            return FAIL
        if INCONCLUSIVE in verdicts:
            return INCONCLUSIVE
        return PASS

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def check(self, claim: str) -> Check:
        return next(c for c in self.checks if c.claim == claim)


def _side(results) -> tuple:
    return sum(r.value for r in results), all(r.exact for r in results)


def compare(claim: str, lhs: list, relation: str, rhs: list) -> Check:
    """Compare sums of results under the certification rule.

    Lower-bound values may certify a ``>=`` claim from the left and a
    ``<=`` claim from the right, never the other way around.
    """
    l, l_exact = _side(lhs)
    r, r_exact = _side(rhs)
    if relation == "<=":
        if l <= r:
            verdict = PASS if l_exact else INCONCLUSIVE
        else:
            verdict = FAIL if r_exact else INCONCLUSIVE
        return Check(claim, relation, l, r, verdict, r - l)
    if relation == ">=":
        if l >= r:
            verdict = PASS if r_exact else INCONCLUSIVE
        else:
            verdict = FAIL if l_exact else INCONCLUSIVE
        return Check(claim, relation, l, r, verdict, l - r)
    if relation == "==":
        a = compare(claim, lhs, "<=", rhs).verdict
        b = compare(claim, lhs, ">=", rhs).verdict
        if FAIL in (a, b):
            verdict = FAIL
        elif a == b == PASS:
            verdict = PASS
        else:
            verdict = INCONCLUSIVE
        return Check(claim, relation, l, r, verdict, abs(l - r))
    raise ValueError(f"unknown relation {relation!r}")


def _tensor_span(T: Cdga, k: int, left: GradedIdeal | None, right: GradedIdeal | None) -> Echelon:
    """Degree-k span of ``left⊗A2 + A1⊗right`` inside ``T = A1⊗A2``."""
    A1, A2 = T.factors
    ech = Echelon(T.dim(k))
    for i in range(k + 1):
        j = k - i
        if left is not None and i <= left.window:
            for v in left.spaces[i].vectors:
                a = A1.from_vector(i, v)
                for mono in A2.basis(j):
                    w = T.tensor(a, A2.mono_element(mono))
                    if w:
                        ech.add(T.vector(w, k))
        if right is not None and j <= right.window:
            for v in right.spaces[j].vectors:
                b = A2.from_vector(j, v)
                for mono in A1.basis(i):
                    w = T.tensor(A1.mono_element(mono), b)
                    if w:
                        ech.add(T.vector(w, k))
    return ech


class ProductInstance:
    """A pair of surjective morphisms with lazily computed invariants."""

    def __init__(self, phi1: CdgaMorphism, phi2: CdgaMorphism, N: int | None = None):
        self.phi1 = phi1
        self.phi2 = phi2
        self.tensor = tensor_morphism(phi1, phi2)
        self.N = N if N is not None else default_truncation(self.tensor.source)
        for phi in (phi1, phi2, self.tensor):
            require_surjective(phi, self.N)
        self.name = f"{phi1.name} | {phi2.name}"

    @cached_property
    def h1(self) -> InvariantResult:
        return hsecat(self.phi1, self.N)

    @cached_property
    def h2(self) -> InvariantResult:
        return hsecat(self.phi2, self.N)

    @cached_property
    def h12(self) -> InvariantResult:
        return hsecat(self.tensor, self.N)

    @cached_property
    def nk2(self) -> InvariantResult:
        return nil_ker_H(self.phi2, self.N)

    @cached_property
    def pd(self) -> tuple:
        return (check_poincare_duality(self.phi1.source, self.N).is_pd,
                check_poincare_duality(self.phi2.source, self.N).is_pd)

    @property
    def zero_differential(self) -> bool:
        return self.phi1.source.has_zero_differential and self.phi2.source.has_zero_differential

    @cached_property
    def kernels(self) -> tuple:
        R = AlgebraRing(self.tensor.source, self.N)
        K1 = kernel_ideal(self.phi1, self.N, level="algebra")
        K2 = kernel_ideal(self.phi2, self.N, level="algebra")
        L = kernel_ideal(self.tensor, self.N, level="algebra", source_ring=R)
        return K1, K2, L

    def kernel_decomposition(self) -> Check:
        """``L = K1⊗A2 + A1⊗K2`` degreewise, by membership both ways."""
        K1, K2, L = self.kernels
        T = self.tensor.source
        ok = True
        for k in range(self.N + 1):
            span = _tensor_span(T, k, K1, K2)
            if len(span) != L.dim(k) or not all(span.contains(v) for v in L.spaces[k].vectors):
                ok = False
                break
        return Check("L = K1⊗A2 + A1⊗K2", "==", None, None, PASS if ok else FAIL)

    def power_inclusion(self, m: int, n: int) -> Check:
        """``L^(m+n+1) ⊆ K1^(m+1)⊗A2 + A1⊗K2^(n+1)`` degreewise."""
        K1, K2, L = self.kernels
        T = self.tensor.source
        K1p, K2p, Lp = ideal_power(K1, m + 1), ideal_power(K2, n + 1), ideal_power(L, m + n + 1)
        ok = True
        for k in range(self.N + 1):
            if not Lp.dim(k):
                continue
            span = _tensor_span(T, k, K1p, K2p)
            if not all(span.contains(v) for v in Lp.spaces[k].vectors):
                ok = False
                break
        claim = f"L^{m + n + 1} ⊆ K1^{m + 1}⊗A2 + A1⊗K2^{n + 1}"
        return Check(claim, "subset", None, None, PASS if ok else FAIL)


def _report(kind: str, inst: ProductInstance) -> VerificationReport:
    return VerificationReport(kind, inst.name, inst.N)


def _subadditivity_checks(inst: ProductInstance, rep: VerificationReport) -> None:
    rep.values.update({"hsecat(phi1)": inst.h1, "hsecat(phi2)": inst.h2,
                       "hsecat(phi1⊗phi2)": inst.h12})
    rep.checks.append(compare("hsecat(phi1⊗phi2) <= hsecat(phi1) + hsecat(phi2)",
                              [inst.h12], "<=", [inst.h1, inst.h2]))
    if inst.zero_differential:
        rep.checks.append(inst.kernel_decomposition())
        rep.checks.append(inst.power_inclusion(inst.h1.value, inst.h2.value))


def _lower_chain_checks(inst: ProductInstance, rep: VerificationReport) -> None:
    rep.values.update({"hsecat(phi1)": inst.h1, "nil-ker-H(phi2)": inst.nk2,
                       "hsecat(phi1⊗phi2)": inst.h12})
    rep.checks.append(compare("hsecat(phi1⊗phi2) >= hsecat(phi1) + nil-ker-H(phi2)",
                              [inst.h12], ">=", [inst.h1, inst.nk2]))
    if all(inst.pd):
        m1 = inst.h1.relabel("msecat", MSECAT_NOTE)
        m2 = inst.h2.relabel("msecat", MSECAT_NOTE)
        m12 = inst.h12.relabel("msecat", MSECAT_NOTE)
        rep.values.update({"msecat(phi1)": m1, "msecat(phi2)": m2, "msecat(phi1⊗phi2)": m12})
        rep.checks.append(compare("msecat(phi1) + hsecat(phi2) <= msecat(phi1⊗phi2)",
                                  [m1, inst.h2], "<=", [m12]))
        rep.checks.append(compare("msecat(phi1⊗phi2) <= msecat(phi1) + msecat(phi2)",
                                  [m12], "<=", [m1, m2]))
        rep.checks.append(compare("msecat(phi1⊗phi2) == msecat(phi1) + msecat(phi2)",
                                  [m12], "==", [m1, m2]))


def verify_subadditivity(phi1: CdgaMorphism, phi2: CdgaMorphism, N: int | None = None
                         ) -> VerificationReport:
    inst = ProductInstance(phi1, phi2, N)
    rep = _report("subadditivity", inst)
    _subadditivity_checks(inst, rep)
    return rep


def verify_lower_chain(phi1: CdgaMorphism, phi2: CdgaMorphism, N: int | None = None
                       ) -> VerificationReport:
    inst = ProductInstance(phi1, phi2, N)
    rep = _report("lower-chain", inst)
    _lower_chain_checks(inst, rep)
    return rep


def verify_pair(phi1: CdgaMorphism, phi2: CdgaMorphism, N: int | None = None
                ) -> VerificationReport:
    """Both suites on one instance, sharing the computed invariants."""
    inst = ProductInstance(phi1, phi2, N)
    rep = _report("product", inst)
    _subadditivity_checks(inst, rep)
    _lower_chain_checks(inst, rep)
    return rep


def verify_sphere_additivity(A: Cdga, k: int, n: int, N: int | None = None
                             ) -> VerificationReport:
    """``mtc_n(A⊗H(S^k)) = mtc_n(A) + mtc_n(S^k)`` by direct computation."""
    from .catalog import cohomology_sphere

    if not check_poincare_duality(A, N).is_pd:
        raise PoincareDualityError(f"{A.name} is not a Poincaré duality algebra")
    S = cohomology_sphere(k).algebra
    X = tensor_product(A, S)
    ta, ts, tx = mtc(A, n, N), mtc(S, n, N), mtc(X, n, N)
    rep = VerificationReport("sphere-additivity", f"{A.name} x S^{k}, n={n}",
                             max(ta.truncation, ts.truncation, tx.truncation))
    rep.values.update({f"mtc_{n}({A.name})": ta, f"mtc_{n}(S^{k})": ts,
                       f"mtc_{n}({A.name} x S^{k})": tx})
    rep.checks.append(compare(f"mtc_{n}(X x S^{k}) == mtc_{n}(X) + mtc_{n}(S^{k})",
                              [tx], "==", [ta, ts]))
    return rep


def _random_algebra(rng: random.Random, tag: str, max_generators: int, max_degree: int,
                    max_exponent: int, max_dim: int) -> tuple:
    while True:
        g = rng.randint(1, max_generators)
        gens = [(f"{tag}{i}", rng.randint(1, max_degree)) for i in range(g)]
        rels = []
        for i, (_, deg) in enumerate(gens):
            if deg % 2 == 0:
                e = rng.randint(2, max(2, max_exponent))
                rels.append(tuple(e if j == i else 0 for j in range(g)))
        if g > 1 and rng.random() < 0.3:
            rels.append(tuple(rng.randint(0, 1) for _ in range(g)))
            if not any(rels[-1]):
                rels.pop()
        A = Cdga(gens, rels, name=tag.upper())
        total = sum(A.dim(k) for k in range(A.top_degree + 1))
        if total <= max_dim:
            return A, gens, rels


def random_instance(seed: int, max_generators: int = 4, max_degree: int = 6,
                    max_exponent: int = 4, max_dim: int = 24) -> tuple:
    """Two seeded quotient projections ``A -> A/J`` with zero differential.

    ``J`` is a random monomial ideal of positive degree, so each projection
    is surjective and every invariant is certified exact.  ``max_dim``
    bounds the total dimension of each source algebra.
    """
    if not (1 <= max_generators <= 4 and 1 <= max_degree <= 6 and 1 <= max_exponent <= 4):
        raise ValueError("size parameters outside the tractable envelope")
    rng = random.Random(seed)
    pair = []
    for tag in ("a", "b"):
        A, gens, rels = _random_algebra(rng, tag, max_generators, max_degree, max_exponent,
                                        max_dim)
        positive = [m for k in range(1, A.top_degree + 1) for m in A.basis(k)]
        chosen = rng.sample(positive, rng.randint(1, min(3, len(positive)))) if positive else []
        B = Cdga(gens, rels + chosen, name=f"{tag.upper()}J{seed}")
        phi = CdgaMorphism(A, B, {name: B.gen(name) for name, _ in gens},
                           name=f"q{tag}{seed}")
        pair.append(phi)
    return tuple(pair)
