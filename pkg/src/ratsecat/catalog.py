"""Built-in models: spheres, their cohomology, complex projective spaces, products.

References such as ``sphere:2``, ``cpn:3``, ``product(cpn:2,cohomology-sphere:3)``
and ``mult-model(cohomology-sphere:2,2)`` resolve to catalog entries.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .algebra import (
    Cdga,
    CdgaMorphism,
    augmentation,
    ground_field,
    identity,
    multiplication,
    tensor_product,
)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: tuple
    algebra: Cdga
    morphism: CdgaMorphism | None = None
    known: dict = field(default_factory=dict)
    provenance: str = ""

    @property
    def ref(self) -> str:
        args = ",".join(a.ref if isinstance(a, CatalogEntry) else str(a) for a in self.params)
        if not self.params:
            return self.name
        if len(self.params) == 1 and not isinstance(self.params[0], CatalogEntry):
            return f"{self.name}:{args}"
        return f"{self.name}({args})"


def point() -> CatalogEntry:
    known = {"cup-length": 0, "htc_2": 0, "htc_3": 0, "htc_4": 0}
    return CatalogEntry("point", (), ground_field("Q"), known=known,
                        provenance="contractible space")


def sphere(k: int) -> CatalogEntry:
    """Minimal Sullivan model of ``S^k``."""
    _check_positive(k, "sphere")
    if k % 2:
        A = Cdga([("x", k)], name=f"S{k}")
    else:
        A = Cdga([("x", k), ("y", 2 * k - 1)], differential={"y": {(2, 0): 1}}, name=f"S{k}")
    return CatalogEntry("sphere", (k,), A, known=_sphere_known(k),
                        provenance="cat(S^k) = 1; tc_n(S^k) = n-1 for k odd, n for k even")


def cohomology_sphere(k: int) -> CatalogEntry:
    """``H(S^k)`` with zero differential."""
    _check_positive(k, "cohomology-sphere")
    rels = [] if k % 2 else [(2,)]
    A = Cdga([("x", k)], rels, name=f"HS{k}")
    return CatalogEntry("cohomology-sphere", (k,), A, known=_sphere_known(k),
                        provenance="spheres are formal; values as for sphere")


def _sphere_known(k: int) -> dict:
    out = {"cup-length": 1}
    for n in (2, 3, 4):
        out[f"htc_{n}"] = n - 1 if k % 2 else n
    return out


def cpn(n: int) -> CatalogEntry:
    """``H(CP^n) = Q[x]/x^(n+1)``, x in degree 2."""
    _check_positive(n, "cpn")
    A = Cdga([("x", 2)], [(n + 1,)], name=f"CP{n}")
    known = {"cup-length": n}
    for m in (2, 3, 4):
        known[f"htc_{m}"] = m * n
    return CatalogEntry("cpn", (n,), A, known=known,
                        provenance="cat(CP^n) = n; tc_m(CP^n) = m*n")


def product(e1: CatalogEntry, e2: CatalogEntry) -> CatalogEntry:
    A = tensor_product(e1.algebra, e2.algebra, name=f"{e1.algebra.name}x{e2.algebra.name}")
    known = {k: e1.known[k] + e2.known[k] for k in e1.known if k in e2.known}
    return CatalogEntry("product", (e1, e2), A, known=known,
                        provenance="additivity over products of formal PD spaces")


def mult_model(entry: CatalogEntry, n: int) -> CatalogEntry:
    if n < 1:
        raise ValueError("mult-model needs n >= 1")
    mu = multiplication(entry.algebra, n)
    known = {"hsecat": entry.known[f"htc_{n}"]} if f"htc_{n}" in entry.known else {}
    return CatalogEntry("mult-model", (entry, n), mu.source, morphism=mu, known=known,
                        provenance=entry.provenance)


def _check_positive(k, what: str) -> None:
    if not isinstance(k, int) or k < 1:
        raise CatalogError(f"{what} needs a positive integer parameter, got {k!r}")


class CatalogError(ValueError):
    pass


_BUILDERS = {
    "point": point,
    "sphere": sphere,
    "cohomology-sphere": cohomology_sphere,
    "cpn": cpn,
    "product": product,
    "mult-model": mult_model,
}


def catalog(name: str, *params) -> CatalogEntry:
    try:
        build = _BUILDERS[name]
    except KeyError:
        raise CatalogError(f"unknown catalog entry {name!r}") from None
    try:
        return build(*params)
    except TypeError as exc:
        raise CatalogError(f"bad parameters for {name}: {exc}") from None


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_\-]*)|(?P<sym>[():,]))")


def parse_ref(text: str) -> tuple:
    """Parse ``name``, ``name:int`` or ``name(arg, ...)`` into ``(name, args)``.

    Integer arguments stay ints; nested references become tuples.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise CatalogError(f"cannot parse reference {text!r} at offset {pos}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    tokens.append(("end", None))
    i = 0

    def expect(kind, value=None):
        nonlocal i
        k, v = tokens[i]
        if k != kind or (value is not None and v != value):
            raise CatalogError(f"malformed reference {text!r}")
        i += 1
        return v

    def arg():
        if tokens[i][0] == "num":
            return int(expect("num"))
        return ref()

    def ref():
        name = expect("name")
        k, v = tokens[i]
        if k == "sym" and v == ":":
            expect("sym", ":")
            return (name, (int(expect("num")),))
        if k == "sym" and v == "(":
            expect("sym", "(")
            args = [arg()]
            while tokens[i] == ("sym", ","):
                expect("sym", ",")
                args.append(arg())
            expect("sym", ")")
            return (name, tuple(args))
        return (name, ())

    out = ref()
    expect("end")
    return out


def build(tree: tuple) -> CatalogEntry:
    name, args = tree
    params = [build(a) if isinstance(a, tuple) else a for a in args]
    return catalog(name, *params)


def resolve(text: str) -> CatalogEntry:
    return build(parse_ref(text))


MORPHISM_BUILDERS = {
    "id": lambda A: identity(A),
    "aug": lambda A: augmentation(A),
    "mult": lambda A, n: multiplication(A, n),
}
