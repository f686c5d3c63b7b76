import json

import pytest
from hypothesis import given

from ratsecat.algebra import augmentation, identity, multiplication
from ratsecat.catalog import CatalogError, catalog, resolve
from ratsecat.emit import emit
from ratsecat.invariants import hsecat, mtc
from ratsecat.models import (
    ModelError,
    ParseError,
    UnknownIdentifierError,
    parse,
    serialize,
    serialize_algebra,
    serialize_morphism,
    serialize_morphisms,
)
from ratsecat.results import EXACT, LOWER_BOUND
from strategies import finite_algebras, koszul_algebras

CATALOG_REFS = [
    "point", "sphere:1", "sphere:2", "sphere:3", "sphere:4", "cohomology-sphere:2",
    "cohomology-sphere:5", "cpn:1", "cpn:3", "product(cpn:2,cohomology-sphere:3)",
    "product(sphere:2,sphere:2)", "mult-model(cohomology-sphere:2,2)", "mult-model(cpn:2,3)",
]


# -- parser --------------------------------------------------------------------------------

def test_ground_field_declaration():
    m = parse("algebra Q {}")
    Q = m.algebras["Q"]
    assert Q.ngens == 0 and Q.dim(0) == 1


def test_sphere_model_declaration():
    m = parse("algebra S2m { gen x:2; gen y:3; d y = x^2; }")
    A = m.algebras["S2m"]
    assert A == resolve("sphere:2").algebra
    assert str(A.d(A.gen("y"))) == "x^2"


def test_augmentation_defaults_to_zero():
    m = parse("algebra CP2 { gen x:2; rel x^3; }  morphism aug : CP2 -> Q {}")
    phi = m.morphisms["aug"]
    assert phi.target.ngens == 0
    assert all(img == 0 for img in phi.images)


def test_unlisted_generator_maps_to_same_name():
    text = """
    algebra A { gen x:2; gen y:3; rel x^2; }
    algebra B { gen x:2; gen y:5; rel x^2; }
    morphism f : A -> B {}
    """
    f = parse(text).morphisms["f"]
    assert str(f.images[0]) == "x" and f.images[1] == 0


def test_comments_rationals_and_zero():
    text = """# two spheres
    algebra T {
      gen a:3;  # odd
      gen b:2; gen c:5;
      d c = 3/2*b^3 - 0;
    }
    morphism f : T -> T { a |-> -a; b |-> 0; c |-> 0; }
    """
    m = parse(text)
    T = m.algebras["T"]
    assert str(T.d(T.gen("c"))) == "3/2*b^3"
    assert str(m.morphisms["f"].images[0]) == "-a"


def test_forward_reference_inside_body():
    A = parse("algebra A { d y = x^2; gen x:2; gen y:3; }").algebras["A"]
    assert str(A.d(A.gen("y"))) == "x^2"


@pytest.mark.parametrize("text,error,code,where", [
    ("algebra A { gen x:2 }", ParseError, "syntax", (1, 21)),
    ("algebra A {\n  gen x:2;\n  rel z^2;\n}", UnknownIdentifierError, "unknown-identifier",
     (3, 7)),
    ("morphism f : A -> B {}", UnknownIdentifierError, "unknown-identifier", (1, 14)),
    ("algebra A { gen x:2; d x = x; }", ModelError, "degree-mismatch", (1, 22)),
    ("algebra A { gen a:1; gen b:2; gen c:3; d a = b; d b = c; }", ModelError, "d-squared",
     (1, 40)),
    ("algebra A { gen x:1; gen y:2; d x = y; }\nmorphism f : A -> A { y |-> 0; }", ModelError,
     "not-chain-map", (2, 1)),
    ("algebra A { gen x:2; gen y:3; rel y; d y = x^2; }", ModelError, "relation", (1, 1)),
    ("algebra A { gen x:2; gen x:3; }", ModelError, "duplicate", (1, 26)),
    ("algebra A { gen x:2; }\nmorphism f : A -> A { x |-> x*x; }", ModelError,
     "degree-mismatch", (2, 23)),
    ("algebra A { gen x:2; d x = 1/0; }", ParseError, "syntax", (1, 30)),
    ("algebra A { gen x:2; } $", ParseError, "syntax", (1, 24)),
])
def test_diagnostics(text, error, code, where):
    with pytest.raises(error) as info:
        parse(text)
    assert info.value.code == code
    assert (info.value.line, info.value.col) == where


def test_diagnostic_codes_distinct():
    codes = set()
    for text in ("algebra A {", "algebra A { rel z; }", "algebra A { gen x:2; d x = x; }",
                 "algebra A { gen a:1; gen b:2; gen c:3; d a = b; d b = c; }",
                 "algebra A { gen x:1; gen y:2; d x = y; }\nmorphism f : A -> A { y |-> 0; }"):
        with pytest.raises(ModelError) as info:
            parse(text)
        codes.add(info.value.code)
    assert len(codes) == 5


# -- round trips ----------------------------------------------------------------------------

@pytest.mark.parametrize("ref", CATALOG_REFS)
def test_catalog_round_trip(ref):
    entry = resolve(ref)
    text = serialize_algebra(entry.algebra, "X")
    first = parse(text)
    second = parse(serialize(first))
    assert first.structure() == second.structure()
    assert first.algebras["X"] == entry.algebra
    if entry.morphism is not None:
        m = parse(serialize_morphisms(entry.morphism))
        again = parse(serialize(m))
        assert m.structure() == again.structure()
        (phi,) = m.morphisms.values()
        assert phi.source == entry.morphism.source
        assert [i.terms for i in phi.images] == [i.terms for i in entry.morphism.images]


@given(finite_algebras())
def test_round_trip_finite(A):
    m = parse(serialize_algebra(A) + serialize_morphism(augmentation(A), "e", "F", "Q"))
    assert m.algebras["F"] == A
    assert parse(serialize(m)).structure() == m.structure()


@given(koszul_algebras())
def test_round_trip_differential(A):
    m = parse(serialize_algebra(A) + serialize_morphism(identity(A), "i", "K", "K"))
    assert m.algebras["K"] == A
    assert parse(serialize(m)).structure() == m.structure()


# -- catalog ----------------------------------------------------------------------------------

def test_catalog_odd_sphere():
    A = catalog("sphere", 3).algebra
    assert [(g.name, g.degree) for g in A.generators] == [("x", 3)]
    assert A.has_zero_differential


def test_catalog_projective_plane():
    A = catalog("cpn", 2).algebra
    assert A.relations == ((3,),)


def test_catalog_mult_model():
    entry = resolve("mult-model(cohomology-sphere:2,2)")
    mu = multiplication(catalog("cohomology-sphere", 2).algebra, 2)
    assert entry.morphism.source == mu.source and entry.morphism.target == mu.target
    assert entry.known["hsecat"] == 2


def test_catalog_errors():
    with pytest.raises(CatalogError):
        catalog("torus", 2)
    with pytest.raises(CatalogError):
        resolve("sphere:0")
    with pytest.raises(CatalogError):
        resolve("cpn(")


@pytest.mark.parametrize("ref", CATALOG_REFS)
def test_catalog_entries_validate(ref):
    entry = resolve(ref)
    assert entry.ref == ref or ref == "point"
    A = entry.algebra
    for g in A.generators:
        assert A.d(A.d(A.gen(g.index))) == 0


# -- emit --------------------------------------------------------------------------------------

def test_emit_identity_record():
    (line,) = emit(hsecat(identity(resolve("cpn:2").algebra)), "records").splitlines()
    rec = json.loads(line)
    assert rec["value"] == 0 and rec["status"] == EXACT


def test_emit_mtc_record():
    rec = json.loads(emit(mtc(resolve("cohomology-sphere:2").algebra, 2), "records"))
    assert (rec["name"], rec["value"], rec["status"]) == ("mtc_2", 2, EXACT)
    assert rec["witness"] == "(x@1 - 1@x)^2"


def test_emit_lower_bound_record():
    rec = json.loads(emit(hsecat(augmentation(resolve("sphere:2").algebra), 12), "records"))
    assert rec["status"] == LOWER_BOUND
    assert rec["failing_degree"] == 2 and rec["truncation"] == 12


def test_emit_human_table_aligned():
    results = [hsecat(augmentation(resolve("cpn:2").algebra)),
               mtc(resolve("cohomology-sphere:3").algebra, 2)]
    lines = emit(results, "human").splitlines()
    header, rule = lines[0], lines[1]
    assert header.split()[:3] == ["name", "value", "status"]
    assert set(rule.replace(" ", "")) == {"-"}
    col = header.index("value")
    assert lines[2][col] == "2" and lines[3][col] == "1"


def test_emit_is_byte_stable():
    r = hsecat(multiplication(resolve("cpn:2").algebra, 2))
    assert emit(r, "records") == emit(hsecat(multiplication(resolve("cpn:2").algebra, 2)),
                                      "records")


def test_emit_rejects_unknown_format():
    with pytest.raises(ValueError):
        emit([], "xml")
