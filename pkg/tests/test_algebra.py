from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ratsecat.algebra import (
    Cdga,
    CdgaMorphism,
    apply_differential,
    apply_morphism,
    augmentation,
    basis_up_to,
    default_truncation,
    ground_field,
    identity,
    multiplication,
    multiply,
    tensor_morphism,
    tensor_power,
    tensor_product,
)
from ratsecat.catalog import cohomology_sphere, cpn, sphere
from ratsecat.errors import (
    ChainMapError,
    DegreeMismatchError,
    DifferentialSquareError,
    ParentMismatchError,
    RelationError,
)
from oracles import OracleAlgebra
from strategies import finite_algebras, koszul_algebras

HS2 = cohomology_sphere(2).algebra
HS3 = cohomology_sphere(3).algebra
S2 = sphere(2).algebra


def dims(A, N):
    return {k: len(b) for k, b in basis_up_to(A, N).items() if b}


def names(A, N):
    return {k: [A.format_monomial(m)[1] for m in b] for k, b in basis_up_to(A, N).items() if b}


# -- basis enumeration ---------------------------------------------------------------

def test_basis_even_generator():
    A = Cdga([("x", 2)])
    assert names(A, 5) == {0: ["1"], 2: ["x"], 4: ["x^2"]}


def test_basis_odd_generator():
    A = Cdga([("y", 3)])
    assert names(A, 9) == {0: ["1"], 3: ["y"]}


def test_basis_two_generators():
    assert names(S2, 7) == {0: ["1"], 2: ["x"], 3: ["y"], 4: ["x^2"], 5: ["x*y"],
                            6: ["x^3"], 7: ["x^2*y"]}


@given(koszul_algebras())
def test_basis_deterministic_and_matches_oracle(A):
    O = OracleAlgebra.of(A)
    for k in range(12):
        assert A.basis(k) == Cdga(A.generators, A.relations,
                                  {g.name: A.differential_of(g.index) for g in A.generators}
                                  ).basis(k)
        assert sorted(A.basis(k)) == O.basis(k)


# -- multiplication --------------------------------------------------------------------

def test_odd_square_vanishes():
    assert HS3.gen("x") * HS3.gen("x") == 0


def test_odd_transposition_sign():
    A = Cdga([("x", 1), ("y", 1)])
    x, y = A.gen("x"), A.gen("y")
    assert multiply(y, x) == -(x * y)


def test_zero_divisor_square():
    T = tensor_power(HS2, 2)
    a, b = T.gen(0), T.gen(1)
    z = a - b
    assert z * z == -2 * (a * b)
    assert str(z * z) == "-2*x@x"


def test_parent_mismatch():
    with pytest.raises(ParentMismatchError):
        multiply(HS2.gen("x"), HS3.gen("x"))


@given(finite_algebras(), st.data())
def test_graded_commutativity(A, data):
    N = 8
    mons = [m for k in range(N // 2 + 1) for m in A.basis(k)]
    u = A.mono_element(data.draw(st.sampled_from(mons)))
    v = A.mono_element(data.draw(st.sampled_from(mons)))
    sign = -1 if (u.degree * v.degree) % 2 else 1
    assert u * v == sign * (v * u)


@given(finite_algebras(), st.data())
def test_associativity(A, data):
    mons = [m for k in range(5) for m in A.basis(k)]
    u, v, w = (A.mono_element(data.draw(st.sampled_from(mons))) for _ in range(3))
    assert (u * v) * w == u * (v * w)


@given(finite_algebras(), st.data())
def test_product_matches_oracle(A, data):
    O = OracleAlgebra.of(A)
    mons = [m for k in range(7) for m in A.basis(k)]
    a = data.draw(st.sampled_from(mons))
    b = data.draw(st.sampled_from(mons))
    ours = A.monomial_product(a, b)
    theirs = O.mul({a: Fraction(1)}, {b: Fraction(1)})
    if ours is None:
        assert theirs == {}
    else:
        sign, w = ours
        assert theirs == {w: sign}


# -- differential ----------------------------------------------------------------------

def test_sphere_model_differential():
    x, y = S2.gen("x"), S2.gen("y")
    assert apply_differential(x) == 0
    assert apply_differential(y) == x ** 2
    assert apply_differential(x * y) == x ** 3


def test_degree_mismatch_rejected():
    with pytest.raises(DegreeMismatchError):
        Cdga([("x", 2), ("y", 4)], differential={"y": {(2, 0): 1}})


def test_d_squared_rejected():
    with pytest.raises(DifferentialSquareError):
        Cdga([("a", 1), ("b", 2), ("c", 3)],
             differential={"a": {(0, 1, 0): 1}, "b": {(0, 0, 1): 1}})


def test_unstable_relation_rejected():
    with pytest.raises(RelationError):
        Cdga([("x", 2), ("y", 3)], [(0, 1)], {"y": {(2, 0): 1}})


@given(koszul_algebras())
def test_d_squared_zero(A):
    N = 10
    for k in range(N - 1):
        for m in A.basis(k):
            assert A.d(A.d(A.mono_element(m))) == 0


@given(koszul_algebras(), st.data())
def test_leibniz(A, data):
    mons = [m for k in range(8) for m in A.basis(k)]
    u = A.mono_element(data.draw(st.sampled_from(mons)))
    v = A.mono_element(data.draw(st.sampled_from(mons)))
    sign = -1 if u.degree % 2 else 1
    assert A.d(u * v) == A.d(u) * v + sign * (u * A.d(v))


@given(koszul_algebras())
def test_differential_matches_oracle(A):
    O = OracleAlgebra.of(A)
    for k in range(9):
        for m in A.basis(k):
            assert dict(A.d(A.mono_element(m)).terms) == O.d({m: Fraction(1)})


# -- tensor products ---------------------------------------------------------------------

def test_tensor_with_ground_field():
    A = tensor_product(ground_field(), S2)
    assert dims(A, 10) == dims(S2, 10)


def test_tensor_dimension_examples():
    assert dims(tensor_product(HS2, HS3), 12) == {0: 1, 2: 1, 3: 1, 5: 1}
    assert dims(tensor_product(HS2, HS2), 12) == {0: 1, 2: 2, 4: 1}
    assert dims(tensor_power(HS3, 2), 12) == {0: 1, 3: 2, 6: 1}
    assert dims(tensor_power(HS2, 3), 12) == {0: 1, 2: 3, 4: 3, 6: 1}


def test_tensor_power_one_is_copy():
    T = tensor_power(S2, 1)
    assert T == S2 and T is not S2


def test_tensor_power_rejects_zero():
    with pytest.raises(ValueError):
        tensor_power(S2, 0)


@given(finite_algebras(), koszul_algebras())
def test_dimension_convolution(A, B):
    T = tensor_product(A, B)
    N = 10
    for n in range(N + 1):
        assert T.dim(n) == sum(A.dim(i) * B.dim(n - i) for i in range(n + 1))


@given(koszul_algebras(), koszul_algebras())
def test_tensor_differential(A, B):
    T = tensor_product(A, B)
    for g in A.generators:
        assert T.d(T.include(0, A.gen(g.index))) == T.include(0, A.d(A.gen(g.index)))
    for g in B.generators:
        assert T.d(T.include(1, B.gen(g.index))) == T.include(1, B.d(B.gen(g.index)))


# -- morphisms ---------------------------------------------------------------------------

def test_identity_morphism():
    u = S2.gen("x") * S2.gen("y") + 3 * S2.gen("x")
    assert apply_morphism(identity(S2), u) == u


def test_augmentation_kills_positive_degree():
    eps = augmentation(S2)
    assert apply_morphism(eps, S2.one() + 3 * S2.gen("x")) == eps.target.one()


def test_multiplication_zero_divisor():
    mu = multiplication(HS2, 2)
    T = mu.source
    assert apply_morphism(mu, T.gen(0) - T.gen(1)) == 0


def test_morphism_must_commute_with_d():
    with pytest.raises(ChainMapError):
        CdgaMorphism(S2, S2, {"x": S2.gen("x")})


def test_morphism_degree_checked():
    A = Cdga([("a", 2), ("b", 4)])
    with pytest.raises(DegreeMismatchError):
        CdgaMorphism(A, A, {"a": A.gen("b")})


def test_morphism_must_kill_relations():
    A = Cdga([("x", 2)])
    with pytest.raises(ChainMapError):
        CdgaMorphism(cpn(2).algebra, A, {"x": A.gen("x")})


def test_tensor_of_identities_is_identity():
    f = tensor_morphism(identity(HS2), identity(HS3))
    assert f.source == f.target
    assert all(img == f.target.gen(i) for i, img in enumerate(f.images))


def test_tensor_of_augmentations_is_augmentation():
    f = tensor_morphism(augmentation(HS2), augmentation(HS3))
    assert f.source == tensor_product(HS2, HS3)
    assert all(img == 0 for img in f.images)


def test_tensor_of_multiplications_kernel():
    f = tensor_morphism(multiplication(HS2, 2), multiplication(HS3, 2))
    T = f.source
    z = T.gen(0) - T.gen(1)
    assert f(z) == 0


def test_default_truncation_rule():
    assert default_truncation(S2) == 24
    assert default_truncation(cpn(2).algebra) == 16
    assert default_truncation(Cdga([("x", 7)])) == 40
    assert default_truncation(ground_field()) == 1
