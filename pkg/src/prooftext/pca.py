"""Proof communicative acts (PCAs): the primitive actions the planner emits."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Union

from .errors import PCAError
from .formula import Term, print_term


class PCAKind(str, Enum):
    DERIVE = "Derive"
    BEGIN_CASES = "Begin-Cases"
    CASE_FIRST = "Case-First"
    CASE_NEXT = "Case-Next"
    END_CASES = "End-Cases"
    ANNOUNCE_GOAL = "Announce-Goal"
    ASSUME = "Assume"
    CHOOSE_WITNESS = "Choose-Witness"
    CLOSE_CHOICE = "Close-Choice"


class Ref(str, Enum):
    EXPLICIT = "explicit"
    OMIT = "omit"


@dataclass(frozen=True)
class Reason:
    formula: Term
    source: str | None = None
    # the source node is an assumption rather than a derived result
    hypothesis: bool = False
    ref: Ref | None = None


@dataclass(frozen=True)
class MethodRef:
    name: str
    ref: Ref | None = None


@dataclass(frozen=True)
class PCA:
    kind: PCAKind
    reasons: tuple[Reason, ...] = ()
    intermediate_results: tuple[Term, ...] | None = None
    conclusion: Term | None = None
    method: MethodRef | None = None
    assumptions: tuple[Term, ...] = ()
    goal: Term | None = None
    source: str | None = None
    witness: Term | None = None

    @property
    def annotated(self) -> bool:
        return all(r.ref is not None for r in self.reasons) and (
            self.method is None or self.method.ref is not None)

    def with_refs(self, reason_refs: Iterable[Ref], method_ref: Ref | None) -> "PCA":
        reasons = tuple(replace(r, ref=ref) for r, ref in zip(self.reasons, reason_refs, strict=True))
        method = replace(self.method, ref=method_ref) if self.method else None
        return replace(self, reasons=reasons, method=method)


ReasonLike = Union[Term, Reason]


def _reason(r: ReasonLike) -> Reason:
    return r if isinstance(r, Reason) else Reason(r)


def make_derive(reasons: Iterable[ReasonLike], conclusion: Term | None, method: str | None,
                source: str | None = None,
                intermediate_results: Iterable[Term] | None = None) -> PCA:
    if conclusion is None:
        raise PCAError("a Derive PCA needs a conclusion")
    return PCA(PCAKind.DERIVE,
               reasons=tuple(_reason(r) for r in reasons),
               intermediate_results=tuple(intermediate_results) if intermediate_results else None,
               conclusion=conclusion,
               method=MethodRef(method) if method else None,
               source=source)


def make_begin_cases(goal: Term, assumptions: Iterable[Term], source: str | None = None) -> PCA:
    assumptions = tuple(assumptions)
    if len(assumptions) != 2:
        raise PCAError(f"Begin-Cases takes exactly two assumptions, got {len(assumptions)}")
    return PCA(PCAKind.BEGIN_CASES, goal=goal, assumptions=assumptions, source=source)


def make_announce_goal(goal: Term, disjunction: Term, source: str | None = None) -> PCA:
    return PCA(PCAKind.ANNOUNCE_GOAL, goal=goal, intermediate_results=(disjunction,),
               source=source)


def make_case(kind: PCAKind, assumption: Term, source: str | None = None) -> PCA:
    if kind not in (PCAKind.CASE_FIRST, PCAKind.CASE_NEXT):
        raise PCAError(f"{kind.value} is not a case marker")
    return PCA(kind, assumptions=(assumption,), source=source)


def make_end_cases(conclusion: Term, source: str | None = None) -> PCA:
    return PCA(PCAKind.END_CASES, conclusion=conclusion, source=source)


def make_assume(assumptions: Iterable[Term], source: str | None = None) -> PCA:
    assumptions = tuple(assumptions)
    if not assumptions:
        raise PCAError("Assume needs at least one assumption")
    return PCA(PCAKind.ASSUME, assumptions=assumptions, source=source)


def match_witness(pattern: Term, target: Term, var: str) -> Term | None:
    """Find the term standing for ``var`` when ``pattern`` is matched against ``target``."""
    found: list[Term] = []

    def walk(p: Term, t: Term) -> bool:
        if p.is_atom and p.head == var:
            if found and found[0] != t:
                return False
            found.append(t)
            return True
        if p.head != t.head or len(p.args) != len(t.args):
            return False
        return all(walk(a, b) for a, b in zip(p.args, t.args))

    return found[0] if walk(pattern, target) and found else None


def make_choose_witness(existential: Term, hypothesis: Term, source: str | None = None) -> PCA:
    if existential.head != "exists" or len(existential.args) != 2:
        raise PCAError("Choose-Witness needs an existential formula (exists X body)")
    var, body = existential.args
    witness = match_witness(body, hypothesis, var.head)
    if witness is None:
        raise PCAError(f"{print_term(hypothesis)} is not an instance of {print_term(existential)}")
    return PCA(PCAKind.CHOOSE_WITNESS, goal=existential, assumptions=(hypothesis,),
               witness=witness, source=source)


def make_close_choice(conclusion: Term, witness: Term, source: str | None = None) -> PCA:
    return PCA(PCAKind.CLOSE_CHOICE, conclusion=conclusion, witness=witness, source=source)


# --------------------------------------------------------------------------
# preverbal message form

def _slot(value: Term, ref: Ref | None) -> str:
    return print_term(value) if ref is None else f"({print_term(value)} {ref.value})"


def to_sexpr(p: PCA) -> str:
    """Serialize a PCA as a preverbal message s-expression."""
    parts = [p.kind.value]
    if p.kind is PCAKind.DERIVE:
        parts.append("Reasons: (" + " ".join(_slot(r.formula, r.ref) for r in p.reasons) + ")")
        if p.intermediate_results:
            parts.append("Intermediate-Results: ("
                         + " ".join(print_term(t) for t in p.intermediate_results) + ")")
        parts.append(f"Conclusion: {print_term(p.conclusion)}")
        if p.method is not None:
            m = p.method
            parts.append(f"Method: {m.name}" if m.ref is None else f"Method: ({m.name} {m.ref.value})")
        return "(" + " ".join(parts) + ")"
    if p.goal is not None:
        parts.append(f"Goal: {print_term(p.goal)}")
    if p.intermediate_results:
        parts.append("Intermediate-Results: ("
                     + " ".join(print_term(t) for t in p.intermediate_results) + ")")
    if p.assumptions:
        parts.append("Assumptions: (" + " ".join(print_term(a) for a in p.assumptions) + ")")
    if p.witness is not None:
        parts.append(f"Witness: {print_term(p.witness)}")
    if p.conclusion is not None:
        parts.append(f"Conclusion: {print_term(p.conclusion)}")
    return "(" + " ".join(parts) + ")"
