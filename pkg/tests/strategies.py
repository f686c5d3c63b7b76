"""Hypothesis strategies for small algebras and matrices."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from ratsecat.algebra import Cdga

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    entries = st.one_of(st.just(Fraction(0)), small_rationals)
    return [[draw(entries) for _ in range(c)] for _ in range(r)]


@st.composite
def finite_algebras(draw, max_generators=3, max_degree=4):
    """Zero-differential algebras with every even generator truncated."""
    g = draw(st.integers(1, max_generators))
    degs = [draw(st.integers(1, max_degree)) for _ in range(g)]
    rels = []
    for i, d in enumerate(degs):
        if d % 2 == 0:
            e = draw(st.integers(2, 3))
            rels.append(tuple(e if j == i else 0 for j in range(g)))
    if g > 1 and draw(st.booleans()):
        mixed = tuple(draw(st.integers(0, 1)) for _ in range(g))
        if any(mixed):
            rels.append(mixed)
    return Cdga([(f"g{i}", d) for i, d in enumerate(degs)], rels, name="F")


@st.composite
def koszul_algebras(draw):
    """Free algebras on degree-2 generators x_i and odd y_j with dy_j in Q[x]."""
    nx = draw(st.integers(1, 2))
    ny = draw(st.integers(1, 2))
    gens = [(f"x{i}", 2) for i in range(nx)]
    ydegs = [draw(st.sampled_from([3, 5])) for _ in range(ny)]
    gens += [(f"y{j}", d) for j, d in enumerate(ydegs)]
    diff = {}
    for j, d in enumerate(ydegs):
        target = (d + 1) // 2
        terms = {}
        for _ in range(draw(st.integers(0, 2))):
            a = draw(st.integers(0, target))
            exps = (a, target - a) if nx == 2 else (target,)
            exps = exps + (0,) * ny
            terms[exps] = terms.get(exps, 0) + draw(st.integers(-2, 2))
        diff[f"y{j}"] = {m: c for m, c in terms.items() if c}
    return Cdga(gens, (), diff, name="K")
