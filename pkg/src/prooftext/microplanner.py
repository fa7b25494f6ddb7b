"""Reference choices: decide which reasons and methods each PCA verbalizes.

Reasons
    A reason is omitted when the reader has it at hand: it was conveyed by
    the immediately preceding PCA, or it is a derived intermediate result
    conveyed no more than ``window`` derivation steps ago.  Assumptions
    (hypothesis nodes) are re-verbalized unless they were just introduced.

Methods
    Decided by a static salience class per method:

    always-explicit            always mentioned
    omit-always                never mentioned
    omit-when-recent           omitted if the same method was verbalized in
                               one of the ``recency`` preceding PCAs of the
                               same attentional unit
    explicit-when-unsupported  mentioned only when every reason is omitted
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

from .discourse import DiscourseModel
from .errors import AnnotationError, SalienceError
from .pca import PCA, PCAKind, Ref

SALIENCE_CLASSES = ("always-explicit", "omit-when-recent", "omit-always",
                    "explicit-when-unsupported")

_LINE = re.compile(r"^(?P<method>\S+)\s*:\s*(?P<cls>\S+)\s*$")


@dataclass
class SalienceTable:
    classes: dict[str, str] = field(default_factory=dict)

    def __getitem__(self, method: str) -> str:
        try:
            return self.classes[method]
        except KeyError:
            raise AnnotationError(f"method {method!r} missing from the salience table") from None

    def methods_in(self, cls: str) -> frozenset[str]:
        return frozenset(m for m, c in self.classes.items() if c == cls)

    def check_total(self, methods) -> None:
        missing = sorted(set(methods) - set(self.classes))
        if missing:
            raise SalienceError(f"salience table has no class for: {', '.join(missing)}")


def parse_salience(text: str) -> SalienceTable:
    table = SalienceTable()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _LINE.match(line)
        if not m:
            raise SalienceError(f"line {lineno}: expected 'method: class', got {line!r}")
        if m["cls"] not in SALIENCE_CLASSES:
            raise SalienceError(f"line {lineno}: unknown salience class {m['cls']!r}")
        table.classes[m["method"]] = m["cls"]
    return table


def load_salience(path) -> SalienceTable:
    with open(path, encoding="utf-8") as fh:
        return parse_salience(fh.read())


def default_salience() -> SalienceTable:
    text = resources.files("prooftext.data").joinpath("default.salience").read_text(encoding="utf-8")
    return parse_salience(text)


def annotate(pcas: Sequence[PCA], dm: DiscourseModel, salience: SalienceTable,
             window: int = 4, recency: int = 2) -> list[PCA]:
    """Return ``pcas`` with every reason and method annotated explicit or omit."""
    history = dm.history
    if len(history) != len(pcas) or any(h.pca != p for h, p in zip(history, pcas)):
        raise AnnotationError("discourse history does not align with the PCA sequence")

    conveyed_at: dict[str, int] = {}
    for i, entry in enumerate(history):
        for n in entry.conveyed:
            conveyed_at.setdefault(n, i)
    # derive_count[i] = number of Derive PCAs among pcas[0..i-1]
    derive_count = [0]
    for p in pcas:
        derive_count.append(derive_count[-1] + (p.kind is PCAKind.DERIVE))

    out = []
    for i, p in enumerate(pcas):
        reason_refs = []
        for r in p.reasons:
            at = conveyed_at.get(r.source) if r.source is not None else None
            if at is None or at >= i:
                reason_refs.append(Ref.EXPLICIT)
            elif at == i - 1:
                reason_refs.append(Ref.OMIT)
            elif not r.hypothesis and derive_count[i + 1] - derive_count[at + 1] <= window:
                reason_refs.append(Ref.OMIT)
            else:
                reason_refs.append(Ref.EXPLICIT)

        method_ref = None
        if p.method is not None:
            cls = salience[p.method.name]
            if cls == "always-explicit":
                method_ref = Ref.EXPLICIT
            elif cls == "omit-always":
                method_ref = Ref.OMIT
            elif cls == "explicit-when-unsupported":
                method_ref = Ref.OMIT if Ref.EXPLICIT in reason_refs else Ref.EXPLICIT
            else:
                unit = history[i].unit
                recent = [j for j in range(max(0, i - recency), i) if history[j].unit == unit]
                said = any(out[j].method is not None and out[j].method.name == p.method.name
                           and out[j].method.ref is Ref.EXPLICIT for j in recent)
                method_ref = Ref.OMIT if said else Ref.EXPLICIT
        out.append(p.with_refs(reason_refs, method_ref))
    return out
