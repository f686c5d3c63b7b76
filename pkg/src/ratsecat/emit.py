"""Rendering of results as an aligned table or as JSON-lines records.

Records are one JSON object per line with sorted keys, so output is
byte-stable for fixed input.
"""

from __future__ import annotations

import json

from .cohomology import CohomologyRing
from .products import VerificationReport
from .results import EXACT, LOWER_BOUND, InvariantResult

FORMATS = ("human", "records")


def invariant_record(r: InvariantResult) -> dict:
    return {
        "kind": "invariant",
        "name": r.name,
        "value": r.value,
        "status": r.status,
        "truncation": r.truncation,
        "witness": r.witness.text if r.witness is not None else None,
        "witness_kind": r.witness.kind if r.witness is not None else None,
        "failing_degree": r.failing_degree,
        "instance": r.instance,
        "note": r.note,
    }


def verification_record(rep: VerificationReport) -> dict:
    return {
        "kind": "verification",
        "mode": rep.kind,
        "instance": rep.instance,
        "truncation": rep.truncation,
        "verdict": rep.verdict,
        "values": {label: {"value": r.value, "status": r.status}
                   for label, r in rep.values.items()},
        "checks": [{"claim": c.claim, "relation": c.relation, "lhs": c.lhs, "rhs": c.rhs,
                    "verdict": c.verdict} for c in rep.checks],
    }


def _products(H: CohomologyRing) -> list:
    out = []
    for (i, a, j, b), v in sorted(H.product_table.items()):
        if i == 0 or j == 0 or (i, a) > (j, b) or not v:
            continue
        out.append(f"[{H.format(i, {a: 1})}] * [{H.format(j, {b: 1})}] = [{H.format(i + j, v)}]")
    return out


def cohomology_record(H: CohomologyRing) -> dict:
    dims = H.dims()
    return {
        "kind": "cohomology",
        "instance": H.algebra.name,
        "truncation": H.N,
        "window": H.window,
        "status": EXACT if H.complete else LOWER_BOUND,
        "dims": {str(k): d for k, d in sorted(dims.items()) if d},
        "basis": {str(k): [H.format(k, {a: 1}) for a in range(d)]
                  for k, d in sorted(dims.items()) if d},
        "products": _products(H),
    }


def record(obj) -> dict:
    if isinstance(obj, InvariantResult):
        return invariant_record(obj)
    if isinstance(obj, VerificationReport):
        return verification_record(obj)
    if isinstance(obj, CohomologyRing):
        return cohomology_record(obj)
    raise TypeError(f"cannot emit {type(obj).__name__}")


def _table(header: list, rows: list) -> list:
    rows = [[("-" if c is None else str(c)) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    fmt = lambda row: "  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
    return [fmt(header), fmt(["-" * w for w in widths])] + [fmt(r) for r in rows]


def _human_invariants(results: list) -> list:
    rows = [[r.name, r.value, r.status, r.truncation, r.instance,
             r.witness.text if r.witness else None, r.failing_degree] for r in results]
    lines = _table(["name", "value", "status", "N", "instance", "witness", "degree"], rows)
    notes = sorted({r.note for r in results if r.note})
    return lines + [f"note: {n}" for n in notes]


def _human_verification(rep: VerificationReport) -> list:
    lines = [f"{rep.kind}: {rep.instance}  N={rep.truncation}  verdict={rep.verdict}"]
    if rep.values:
        rows = [[label, r.value, r.status] for label, r in rep.values.items()]
        lines += ["  " + s for s in _table(["quantity", "value", "status"], rows)]
    rows = [[c.claim, c.lhs, c.relation, c.rhs, c.verdict] for c in rep.checks]
    lines += ["  " + s for s in _table(["claim", "lhs", "rel", "rhs", "verdict"], rows)]
    return lines


def _human_cohomology(H: CohomologyRing) -> list:
    rec = cohomology_record(H)
    lines = [f"H({rec['instance']})  N={H.N}  window=0..{H.window}  status={rec['status']}"]
    rows = [[k, d, ", ".join(rec["basis"][k])] for k, d in rec["dims"].items()]
    lines += _table(["degree", "dim", "basis"], rows)
    if rec["products"]:
        lines.append("products:")
        lines += ["  " + p for p in rec["products"]]
    return lines


def emit(obj, format: str = "human") -> str:
    """Render a result, report, cohomology ring, or a list of these."""
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}")
    items = list(obj) if isinstance(obj, (list, tuple)) else [obj]
    if format == "records":
        return "".join(json.dumps(record(x), sort_keys=True, ensure_ascii=False) + "\n"
                       for x in items)
    lines = []
    invariants = [x for x in items if isinstance(x, InvariantResult)]
    if invariants:
        lines += _human_invariants(invariants)
    for x in items:
        if isinstance(x, VerificationReport):
            lines += _human_verification(x)
        elif isinstance(x, CohomologyRing):
            lines += _human_cohomology(x)
        elif not isinstance(x, InvariantResult):
            raise TypeError(f"cannot emit {type(x).__name__}")
    return "\n".join(lines) + "\n"
