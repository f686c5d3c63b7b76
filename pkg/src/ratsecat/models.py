"""Text format for algebras and morphisms.

    algebra S2m { gen x:2; gen y:3; d y = x^2; }
    algebra CP2 { gen x:2; rel x^3; }
    morphism aug : CP2 -> Q {}

Omitted differentials are zero.  A generator with no image line maps to the
same-named target generator of equal degree when there is one, else to 0.
``Q`` names the ground field unless the file declares it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Cdga, CdgaMorphism, ground_field
from .errors import CdgaError


class ModelError(ValueError):
    """Diagnostic with a source location; ``code`` names the failure kind."""

    code = "invalid"

    def __init__(self, message: str, line: int, col: int, code: str | None = None):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col
        if code is not None:
            self.code = code


class ParseError(ModelError):
    code = "syntax"


class UnknownIdentifierError(ModelError):
    code = "unknown-identifier"


class ModelValidationError(ModelError):
    """Declaration parsed but failed algebraic validation."""


@dataclass
class ModelFile:
    algebras: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    locations: dict = field(default_factory=dict)

    def structure(self) -> tuple:
        """Comparable form: algebra signatures and morphism images."""
        algs = tuple((n, A.signature()) for n, A in self.algebras.items())
        mors = tuple(
            (n, f.source.signature(), f.target.signature(),
             tuple(tuple(sorted(img.terms.items())) for img in f.images))
            for n, f in self.morphisms.items())
        return algs, mors


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<mapsto>\|->) | (?P<arrow>->)
  | (?P<num>\d+) | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>[{}:;=+\-*^/])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    out = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, m.group(), line, m.start() - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.model = ModelFile()

    # -- token helpers -------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def expect(self, text: str | None = None, kind: str | None = None) -> Token:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind) \
                or t.kind == "eof" and (text or kind != "eof"):
            want = repr(text) if text is not None else kind
            got = "end of input" if t.kind == "eof" else repr(t.text)
            raise ParseError(f"expected {want}, got {got}", t.line, t.col)
        self.i += 1
        return t

    # -- grammar -------------------------------------------------------------

    def parse(self) -> ModelFile:
        while self.tok.kind != "eof":
            if self.at("algebra"):
                self.algebra()
            elif self.at("morphism"):
                self.morphism()
            else:
                t = self.tok
                raise ParseError(f"expected 'algebra' or 'morphism', got {t.text!r}", t.line, t.col)
        return self.model

    def _declare(self, name_tok: Token) -> None:
        if name_tok.text in self.model.algebras or name_tok.text in self.model.morphisms:
            raise ModelValidationError(f"{name_tok.text} is already declared",
                                       name_tok.line, name_tok.col, code="duplicate")

    def algebra(self) -> None:
        kw = self.expect("algebra")
        name = self.expect(kind="ident")
        self._declare(name)
        self.expect("{")
        gens, diffs, rels = [], [], []
        while not self.at("}"):
            t = self.tok
            if self.at("gen"):
                self.i += 1
                g = self.expect(kind="ident")
                self.expect(":")
                deg = self.expect(kind="num")
                self.expect(";")
                gens.append((g, int(deg.text)))
            elif self.at("d"):
                self.i += 1
                g = self.expect(kind="ident")
                self.expect("=")
                poly = self.poly()
                self.expect(";")
                diffs.append((t, g, poly))
            elif self.at("rel"):
                self.i += 1
                mono = self.mono()
                self.expect(";")
                rels.append((t, mono))
            else:
                raise ParseError(f"expected 'gen', 'd', 'rel' or '}}', got {t.text!r}",
                                 t.line, t.col)
        self.expect("}")
        self.model.algebras[name.text] = self._build_algebra(kw, name, gens, diffs, rels)
        self.model.locations[name.text] = (kw.line, kw.col)

    def _build_algebra(self, kw, name, gens, diffs, rels) -> Cdga:
        index = {}
        degs = {}
        for g, deg in gens:
            if g.text in index:
                raise ModelValidationError(f"generator {g.text} declared twice", g.line, g.col,
                                           code="duplicate")
            if deg < 1:
                raise ModelValidationError(f"generator {g.text} must have positive degree",
                                           g.line, g.col, code="degree-mismatch")
            index[g.text] = len(index)
            degs[g.text] = deg
        differential = {}
        where = {}
        for t, g, poly in diffs:
            if g.text not in index:
                raise UnknownIdentifierError(f"unknown generator {g.text}", g.line, g.col)
            if g.text in differential:
                raise ModelValidationError(f"second differential for {g.text}", t.line, t.col,
                                           code="duplicate")
            terms = self._resolve(poly, index, degs)
            self._check_degree(terms, degs[g.text] + 1, [d for _, d in gens], t,
                               f"d{g.text}")
            differential[g.text] = terms
            where[g.text] = t
        relations = [self._monomial(mono, index) for _, mono in rels]
        try:
            return Cdga([(g.text, d) for g, d in gens], relations, differential, name=name.text)
        except CdgaError as exc:
            t = where.get(getattr(exc, "generator", None), kw)
            raise ModelValidationError(str(exc), t.line, t.col, code=exc.code) from None

    def morphism(self) -> None:
        kw = self.expect("morphism")
        name = self.expect(kind="ident")
        self._declare(name)
        self.expect(":")
        src_tok = self.expect(kind="ident")
        self.expect(kind="arrow")
        tgt_tok = self.expect(kind="ident")
        source, target = self._lookup(src_tok), self._lookup(tgt_tok)
        self.expect("{")
        lines = []
        while not self.at("}"):
            g = self.expect(kind="ident")
            self.expect(kind="mapsto")
            poly = self.poly()
            self.expect(";")
            lines.append((g, poly))
        self.expect("}")
        tindex = {gen.name: gen.index for gen in target.generators}
        tdegs = {gen.name: gen.degree for gen in target.generators}
        tdeg_list = [gen.degree for gen in target.generators]
        images = {}
        where = {}
        for g, poly in lines:
            if g.text not in source._by_name:
                raise UnknownIdentifierError(f"{g.text} is not a generator of {source.name}",
                                             g.line, g.col)
            if g.text in images:
                raise ModelValidationError(f"second image for {g.text}", g.line, g.col,
                                           code="duplicate")
            terms = self._resolve(poly, tindex, tdegs)
            self._check_degree(terms, source.generator(g.text).degree, tdeg_list, g,
                               f"{name.text}({g.text})")
            images[g.text] = target.element(terms)
            where[g.text] = g
        for gen in source.generators:
            if gen.name not in images:
                same = target._by_name.get(gen.name)
                if same is not None and same.degree == gen.degree:
                    images[gen.name] = target.gen(same.index)
        try:
            phi = CdgaMorphism(source, target, images, name=name.text)
        except CdgaError as exc:
            t = where.get(getattr(exc, "generator", None), kw)
            raise ModelValidationError(str(exc), t.line, t.col, code=exc.code) from None
        self.model.morphisms[name.text] = phi
        self.model.locations[name.text] = (kw.line, kw.col)

    def _lookup(self, tok: Token) -> Cdga:
        A = self.model.algebras.get(tok.text)
        if A is None:
            if tok.text == "Q":
                return ground_field("Q")
            raise UnknownIdentifierError(f"unknown algebra {tok.text}", tok.line, tok.col)
        return A

    # -- polynomials -----------------------------------------------------------

    def poly(self) -> list:
        """List of ``(coefficient, mono)`` with mono a list of ``(token, exponent)``."""
        terms = [self.term(self._sign())]
        while self.at("+") or self.at("-"):
            sign = 1 if self.expect().text == "+" else -1
            terms.append(self.term(sign))
        return terms

    def _sign(self) -> int:
        if self.at("-"):
            self.i += 1
            return -1
        if self.at("+"):
            self.i += 1
        return 1

    def term(self, sign: int) -> tuple:
        if self.tok.kind == "num":
            c = self.rational()
            if self.at("*"):
                self.i += 1
                return sign * c, self.mono()
            return sign * c, []
        if self.tok.kind == "ident":
            return Fraction(sign), self.mono()
        t = self.tok
        raise ParseError(f"expected a term, got {t.text or 'end of input'!r}", t.line, t.col)

    def rational(self) -> Fraction:
        num = int(self.expect(kind="num").text)
        if self.at("/"):
            self.i += 1
            den = self.expect(kind="num")
            if int(den.text) == 0:
                raise ParseError("zero denominator", den.line, den.col)
            return Fraction(num, int(den.text))
        return Fraction(num)

    def mono(self) -> list:
        factors = [self.power()]
        while self.at("*"):
            self.i += 1
            factors.append(self.power())
        return factors

    def power(self) -> tuple:
        g = self.expect(kind="ident")
        e = 1
        if self.at("^"):
            self.i += 1
            e = int(self.expect(kind="num").text)
        return g, e

    def _monomial(self, mono: list, index: dict) -> tuple:
        exps = [0] * len(index)
        for g, e in mono:
            if g.text not in index:
                raise UnknownIdentifierError(f"unknown generator {g.text}", g.line, g.col)
            exps[index[g.text]] += e
        return tuple(exps)

    def _resolve(self, poly: list, index: dict, degs: dict) -> dict:
        out = {}
        for c, mono in poly:
            m = self._monomial(mono, index)
            out[m] = out.get(m, 0) + c
        return {m: c for m, c in out.items() if c}

    @staticmethod
    def _check_degree(terms: dict, want: int, deg_list: list, t: Token, what: str) -> None:
        for m in terms:
            got = sum(e * d for e, d in zip(m, deg_list))
            if got != want:
                raise ModelValidationError(f"{what} has a term of degree {got}, expected {want}",
                                           t.line, t.col, code="degree-mismatch")


def parse(text: str) -> ModelFile:
    return _Parser(text).parse()


# -- serialisation ---------------------------------------------------------------

def _ident(name: str) -> str:
    cleaned = re.sub(r"[^A-Za-z0-9_]", "_", name)
    return cleaned if re.match(r"[A-Za-z_]", cleaned) else f"A_{cleaned}"


def _mono_text(A: Cdga, m: tuple) -> str:
    parts = []
    for g, e in A.factors_of(m):
        parts.append(g.name if e == 1 else f"{g.name}^{e}")
    return "*".join(parts)


def poly_text(u) -> str:
    """Element in the model-file polynomial syntax (generator names, no tensor marks)."""
    A = u.parent
    if not u.terms:
        return "0"
    out = []
    for m in sorted(u.terms, key=A.monomial_key):
        c = u.terms[m]
        mag = abs(c)
        mono = _mono_text(A, m)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def serialize_algebra(A: Cdga, name: str | None = None) -> str:
    lines = [f"algebra {_ident(name or A.name)} {{"]
    for g in A.generators:
        lines.append(f"  gen {g.name}:{g.degree};")
    for g in A.generators:
        dg = A.differential_of(g.index)
        if dg:
            lines.append(f"  d {g.name} = {poly_text(dg)};")
    for r in A.relations:
        lines.append(f"  rel {_mono_text(A, r)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize_morphism(phi: CdgaMorphism, name: str | None = None,
                       source_name: str | None = None, target_name: str | None = None) -> str:
    src = _ident(source_name or phi.source.name)
    tgt = _ident(target_name or phi.target.name)
    lines = [f"morphism {_ident(name or phi.name)} : {src} -> {tgt} {{"]
    for g, img in zip(phi.source.generators, phi.images):
        lines.append(f"  {g.name} |-> {poly_text(img)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize(model: ModelFile) -> str:
    chunks = [serialize_algebra(A, n) for n, A in model.algebras.items()]
    names = {id(A): n for n, A in model.algebras.items()}
    for n, phi in model.morphisms.items():
        chunks.append(serialize_morphism(phi, n, names.get(id(phi.source), phi.source.name),
                                         names.get(id(phi.target), phi.target.name)))
    return "\n".join(chunks)


def serialize_morphisms(*morphisms: CdgaMorphism) -> str:
    """Self-contained model text declaring each morphism with its algebras."""
    chunks = []
    for i, phi in enumerate(morphisms):
        src, tgt = f"{_ident(phi.source.name)}_s{i}", f"{_ident(phi.target.name)}_t{i}"
        chunks.append(serialize_algebra(phi.source, src))
        chunks.append(serialize_algebra(phi.target, tgt))
        chunks.append(serialize_morphism(phi, f"{_ident(phi.name)}_{i}", src, tgt))
    return "\n".join(chunks)
