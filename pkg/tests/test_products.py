import pytest
from hypothesis import given
from hypothesis import strategies as st

from ratsecat.algebra import (
    Cdga,
    CdgaMorphism,
    augmentation,
    ground_field,
    identity,
    multiplication,
)
from ratsecat.catalog import cohomology_sphere, cpn
from ratsecat.errors import NotSurjectiveError, PoincareDualityError
from ratsecat.invariants import hsecat
from ratsecat.products import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    ProductInstance,
    compare,
    random_instance,
    verify_lower_chain,
    verify_pair,
    verify_sphere_additivity,
    verify_subadditivity,
)
from ratsecat.results import EXACT, LOWER_BOUND, InvariantResult

HS2 = cohomology_sphere(2).algebra
HS3 = cohomology_sphere(3).algebra
CP2 = cpn(2).algebra
Q = ground_field()

SUB = "hsecat(phi1⊗phi2) <= hsecat(phi1) + hsecat(phi2)"
LOW = "hsecat(phi1⊗phi2) >= hsecat(phi1) + nil-ker-H(phi2)"


def result(value, status=EXACT):
    return InvariantResult("r", value, status, 10)


def test_compare_certification_rule():
    exact, lower = result(3), result(3, LOWER_BOUND)
    assert compare("c", [exact], "<=", [result(4)]).verdict == PASS
    assert compare("c", [lower], "<=", [result(4)]).verdict == INCONCLUSIVE
    assert compare("c", [result(5)], "<=", [lower]).verdict == INCONCLUSIVE
    assert compare("c", [result(5)], "<=", [exact]).verdict == FAIL
    assert compare("c", [lower], ">=", [result(2)]).verdict == PASS
    assert compare("c", [result(1, LOWER_BOUND)], ">=", [exact]).verdict == INCONCLUSIVE
    assert compare("c", [exact], "==", [result(1), result(2)]).verdict == PASS


def test_subadditivity_identity():
    rep = verify_subadditivity(identity(Q), identity(Q))
    assert rep.passed and rep.check(SUB).lhs == 0


def test_subadditivity_two_even_spheres():
    rep = verify_subadditivity(augmentation(HS2), augmentation(HS2))
    c = rep.check(SUB)
    assert (c.lhs, c.rhs, c.slack, c.verdict) == (2, 2, 0, PASS)


def test_subadditivity_sphere_zero_divisors():
    rep = verify_subadditivity(multiplication(HS2, 2), multiplication(HS3, 2))
    c = rep.check(SUB)
    assert (c.lhs, c.rhs, c.verdict) == (3, 3, PASS)


def test_subadditivity_kernel_checks():
    rep = verify_subadditivity(multiplication(HS2, 2), augmentation(HS3))
    assert rep.passed
    assert any(c.relation == "subset" for c in rep.checks)


def test_lower_chain_with_identity():
    phi = augmentation(CP2)
    rep = verify_lower_chain(phi, identity(HS3))
    c = rep.check(LOW)
    assert c.lhs == c.rhs == 2 and c.verdict == PASS


def test_lower_chain_sphere_squared():
    rep = verify_lower_chain(multiplication(HS2, 2), multiplication(HS2, 2))
    assert rep.passed
    assert rep.check(LOW).lhs == 4
    equality = [c for c in rep.checks if c.relation == "=="]
    assert equality and all(c.lhs == c.rhs == 4 for c in equality)


def test_lower_chain_projective_times_sphere():
    rep = verify_lower_chain(multiplication(CP2, 2), multiplication(HS3, 2))
    assert rep.passed and rep.check(LOW).lhs == 5


def test_non_surjective_rejected():
    zero = CdgaMorphism(HS2, HS2, {}, name="zero")
    with pytest.raises(NotSurjectiveError):
        verify_subadditivity(zero, identity(Q))


def test_sphere_additivity_point():
    rep = verify_sphere_additivity(Q, 3, 2)
    assert rep.passed


def test_sphere_additivity_even_sphere():
    rep = verify_sphere_additivity(HS2, 3, 2)
    (c,) = rep.checks
    assert (c.lhs, c.rhs, c.verdict) == (3, 3, PASS)


def test_sphere_additivity_needs_pd():
    wedge = Cdga([("x", 2), ("y", 3)], [(2, 0), (1, 1)])
    with pytest.raises(PoincareDualityError):
        verify_sphere_additivity(wedge, 2, 2)


def test_random_instance_seed_zero_minimal():
    phi, _ = random_instance(0, max_generators=1, max_degree=1, max_exponent=1)
    assert phi.source.ngens == 1
    assert phi.target.dim(1) == 0 and phi.source.dim(1) == 1


def test_random_instance_deterministic():
    a, b = random_instance(17), random_instance(17)
    for f, g in zip(a, b):
        assert f.source == g.source and f.target == g.target
        assert [img.terms for img in f.images] == [img.terms for img in g.images]


def test_random_instance_envelope():
    with pytest.raises(ValueError):
        random_instance(0, max_generators=5)


@given(st.integers(0, 5000))
def test_random_instances_pass(seed):
    phi1, phi2 = random_instance(seed)
    rep = verify_pair(phi1, phi2)
    assert rep.verdict == PASS
    assert all(r.status == EXACT for r in rep.values.values())


@given(st.integers(0, 5000))
def test_swap_symmetry(seed):
    phi1, phi2 = random_instance(seed)
    a, b = ProductInstance(phi1, phi2), ProductInstance(phi2, phi1)
    assert a.h12.value == b.h12.value
    assert {a.h1.value, a.h2.value} == {b.h1.value, b.h2.value}
    assert hsecat(phi1).value == a.h1.value
