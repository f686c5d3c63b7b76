"""Result records carrying certification metadata."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

EXACT = "certified-exact"
LOWER_BOUND = "certified-lower-bound"


@dataclass(frozen=True)
class Witness:
    """Evidence for a lower bound.

    ``kind`` is ``"nonzero-product"`` (a nonzero product of ``level`` ideal
    elements) or ``"injectivity-failure"`` (a cycle with nonzero class that
    dies under the projection at level ``level``).  ``factors`` and
    ``vector`` are coordinates in ``ring``; ``text`` is the rendered form.
    """

    kind: str
    degree: int
    level: int
    text: str
    ring: object = field(default=None, compare=False, repr=False)
    factors: tuple = field(default=(), compare=False, repr=False)
    vector: dict = field(default_factory=dict, compare=False, repr=False)


@dataclass(frozen=True)
class InvariantResult:
    name: str
    value: int
    status: str
    truncation: int
    witness: Witness | None = None
    failures: tuple = ()
    instance: str = ""
    note: str = ""

    @property
    def exact(self) -> bool:
        return self.status == EXACT

    @property
    def failing_degree(self) -> int | None:
        return self.witness.degree if self.witness is not None else None

    def relabel(self, name: str, note: str = "") -> "InvariantResult":
        return replace(self, name=name, note=note or self.note)
