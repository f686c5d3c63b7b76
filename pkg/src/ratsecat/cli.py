"""Command-line interface.

Exit status: 0 success, 1 unparseable input or unknown reference,
2 validation failure, 3 unmet precondition, 4 failed verification.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import catalog as cat
from .algebra import Cdga, CdgaMorphism, augmentation, ground_field, identity, multiplication
from .cohomology import compute_cohomology
from .emit import FORMATS, emit
from .errors import CdgaError, PreconditionError
from .invariants import (
    MSECAT_NOTE,
    check_poincare_duality,
    cup_length,
    hsecat,
    htc,
    msecat_pd,
    nil_ker_H,
)
from .models import ModelError, ModelFile, ModelValidationError, parse, serialize_morphisms
from .products import FAIL, random_instance, verify_pair, verify_sphere_additivity

FORMAT_ENV = "RATSECAT_FORMAT"


class UsageError(Exception):
    """Bad invocation or unresolvable reference; exit status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- reference resolution ---------------------------------------------------------

def _split_call(text: str) -> tuple:
    """``head(a, b(c), d)`` -> ``("head", ["a", "b(c)", "d"])``; plain text -> ``(text, None)``."""
    text = text.strip()
    if "(" not in text:
        return text, None
    head, rest = text.split("(", 1)
    if not rest.endswith(")"):
        raise UsageError(f"unbalanced parentheses in {text!r}")
    body = rest[:-1]
    args, depth, cur = [], 0, ""
    for ch in body:
        if ch == "," and depth == 0:
            args.append(cur.strip())
            cur = ""
            continue
        depth += (ch == "(") - (ch == ")")
        if depth < 0:
            raise UsageError(f"unbalanced parentheses in {text!r}")
        cur += ch
    if depth:
        raise UsageError(f"unbalanced parentheses in {text!r}")
    args.append(cur.strip())
    return head.strip(), args


def resolve_algebra(ref: str, model: ModelFile) -> Cdga:
    ref = ref.strip()
    if ref in model.algebras:
        return model.algebras[ref]
    if ref == "Q":
        return ground_field("Q")
    try:
        return cat.resolve(ref).algebra
    except cat.CatalogError as exc:
        raise UsageError(f"unknown algebra {ref!r}: {exc}") from None


def resolve_morphism(ref: str, model: ModelFile) -> CdgaMorphism:
    ref = ref.strip()
    if ref in model.morphisms:
        return model.morphisms[ref]
    head, args = _split_call(ref)
    if args is None and head in ("id", "aug"):
        args = ["Q"]
    if head == "id" and len(args or []) == 1:
        return identity(resolve_algebra(args[0], model))
    if head == "aug" and len(args or []) == 1:
        return augmentation(resolve_algebra(args[0], model))
    if head == "mult" and len(args or []) == 2:
        return multiplication(resolve_algebra(args[0], model), _positive(args[1]))
    try:
        entry = cat.resolve(ref)
    except cat.CatalogError as exc:
        raise UsageError(f"unknown morphism {ref!r}: {exc}") from None
    if entry.morphism is None:
        raise UsageError(f"{ref!r} names an algebra, not a morphism")
    return entry.morphism


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise UsageError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise UsageError(f"expected a positive integer, got {n}")
    return n


def load_models(paths: list) -> ModelFile:
    merged = ModelFile()
    for path in paths or []:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        try:
            m = parse(text)
        except ModelError as exc:
            exc.args = (f"{path}:{exc.args[0]}",)
            raise
        for table in ("algebras", "morphisms"):
            for name, obj in getattr(m, table).items():
                if name in merged.algebras or name in merged.morphisms:
                    line, col = m.locations[name]
                    raise ModelValidationError(f"{name} is already declared", line, col,
                                               code="duplicate")
                getattr(merged, table)[name] = obj
                merged.locations[name] = m.locations[name]
    return merged


def _algebra_arg(args, model: ModelFile) -> Cdga:
    if args.catalog:
        return resolve_algebra(args.catalog, model)
    if args.algebra:
        return resolve_algebra(args.algebra, model)
    if len(model.algebras) == 1:
        return next(iter(model.algebras.values()))
    raise UsageError("no algebra given: use --catalog, or --file with --algebra")


def _morphism_arg(args, model: ModelFile) -> CdgaMorphism:
    if args.morphism:
        return resolve_morphism(args.morphism, model)
    if len(model.morphisms) == 1:
        return next(iter(model.morphisms.values()))
    raise UsageError("no morphism given: use --morphism")


# -- subcommands -----------------------------------------------------------------------

def cmd_cohomology(args, model, out) -> int:
    A = _algebra_arg(args, model)
    out.write(emit(compute_cohomology(A, args.N), args.format))
    return 0


def cmd_invariant(args, model, out) -> int:
    if args.invariant == "cup-length":
        if args.morphism:
            A = resolve_morphism(args.morphism, model).source
        else:
            A = _algebra_arg(args, model)
        result = cup_length(A, args.N)
    else:
        phi = _morphism_arg(args, model)
        compute = {"hsecat": hsecat, "nil-ker": nil_ker_H, "msecat-pd": msecat_pd}
        result = compute[args.invariant](phi, args.N)
    out.write(emit(result, args.format))
    return 0


def cmd_tc(args, model, out) -> int:
    if args.n < 2:
        raise PreconditionError(f"tc needs n >= 2, got {args.n}")
    A = _algebra_arg(args, model)
    result = htc(A, args.n, args.N)
    if check_poincare_duality(A, args.N).is_pd:
        result = result.relabel(f"mtc_{args.n}", MSECAT_NOTE)
    out.write(emit(result, args.format))
    return 0


def _seed_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi if sep else lo)
    except ValueError:
        raise UsageError(f"seeds must look like a..b, got {text!r}") from None
    if b < a:
        raise UsageError(f"empty seed range {text!r}")
    return range(a, b + 1)


def cmd_verify(args, model, out, err) -> int:
    if args.mode == "product":
        if not (args.left and args.right):
            raise UsageError("--mode product needs --left and --right")
        pairs = [(resolve_morphism(args.left, model), resolve_morphism(args.right, model))]
        reports = [verify_pair(p, q, args.N) for p, q in pairs]
    elif args.mode == "sphere-additivity":
        if args.k is None or args.n is None:
            raise UsageError("--mode sphere-additivity needs --k and -n")
        A = _algebra_arg(args, model)
        pairs = [None]
        reports = [verify_sphere_additivity(A, args.k, args.n, args.N)]
    else:
        pairs = [random_instance(s) for s in _seed_range(args.seeds)]
        reports = [verify_pair(p, q, args.N) for p, q in pairs]
    out.write(emit(reports, args.format))
    failed = [(pair, rep) for pair, rep in zip(pairs, reports) if rep.verdict == FAIL]
    if args.format == "human":
        counts = {v: sum(r.verdict == v for r in reports) for v in ("pass", "fail", "inconclusive")}
        out.write(" ".join(f"{k}={v}" for k, v in counts.items()) + "\n")
    for pair, rep in failed:
        err.write(f"FAILED {rep.kind}: {rep.instance}\n")
        if pair is not None:
            err.write(serialize_morphisms(*pair))
        elif args.catalog or args.algebra:
            err.write(f"algebra {args.catalog or args.algebra}, k={args.k}, n={args.n}\n")
    return 4 if failed else 0


# -- argument parsing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-N", type=int, default=None,
                        help="truncation degree (default: derived from the algebra)")
    common.add_argument("--format", choices=FORMATS,
                        default=os.environ.get(FORMAT_ENV, "human"))
    common.add_argument("--catalog", help="catalog reference such as sphere:2 or cpn:3")
    common.add_argument("--file", action="append", default=[], help="model file (repeatable)")
    common.add_argument("--algebra", help="algebra name from a model file or catalog")
    common.add_argument("--morphism", help="morphism: file name, id(REF), aug(REF), "
                                           "mult(REF,n) or mult-model(REF,n)")

    p = _Parser(prog="ratsecat", description="Rational sectional category invariants.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("cohomology", parents=[common], help="cohomology dimensions and products")
    inv = sub.add_parser("invariant", parents=[common], help="one invariant of a morphism")
    inv.add_argument("--invariant", required=True,
                     choices=("hsecat", "nil-ker", "cup-length", "msecat-pd"))
    tc = sub.add_parser("tc", parents=[common], help="higher topological complexity")
    tc.add_argument("-n", type=int, default=2)
    ver = sub.add_parser("verify", parents=[common], help="check the product inequalities")
    ver.add_argument("--mode", required=True, choices=("product", "sphere-additivity", "fuzz"))
    ver.add_argument("--left")
    ver.add_argument("--right")
    ver.add_argument("--k", type=int)
    ver.add_argument("-n", type=int)
    ver.add_argument("--seeds", default="0..199")
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.N is not None and args.N < 1:
            raise UsageError("-N must be positive")
        model = load_models(args.file)
        if args.command == "cohomology":
            return cmd_cohomology(args, model, out)
        if args.command == "invariant":
            return cmd_invariant(args, model, out)
        if args.command == "tc":
            return cmd_tc(args, model, out)
        return cmd_verify(args, model, out, err)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return 1
    except ModelValidationError as exc:
        err.write(f"invalid model ({exc.code}): {exc}\n")
        return 2
    except ModelError as exc:
        err.write(f"{exc.code} error: {exc}\n")
        return 1
    except CdgaError as exc:
        err.write(f"invalid ({exc.code}): {exc}\n")
        return 2
    except PreconditionError as exc:
        err.write(f"precondition failed: {exc}\n")
        return 3

