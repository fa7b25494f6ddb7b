"""Template realization of annotated PCAs into English sentences."""

from __future__ import annotations

from typing import Callable, Hashable, Sequence

from .errors import RealizationError
from .formula import Lexicon, RenderMode, Term, render_term
from .pca import PCA, PCAKind, Ref


def _join(items: Sequence[str], comma_and: bool) -> str:
    if len(items) <= 1:
        return "".join(items)
    last = ", and " if comma_and else " and "
    return ", ".join(items[:-1]) + last + items[-1]


def _capitalize(s: str) -> str:
    return s[:1].upper() + s[1:]


def _be_form(phrase: str) -> str | None:
    head, sep, tail = phrase.partition(" is ")
    return f"{head} be {tail}" if sep else None


class _Ctx:
    def __init__(self, lex: Lexicon, mode: RenderMode):
        self.lex = lex
        self.mode = mode

    def f(self, t: Term, mode: RenderMode | None = None) -> str:
        return render_term(t, self.lex, mode or self.mode)


def _similar(p: PCA, prev: PCA | None) -> bool:
    return (prev is not None and prev.kind is PCAKind.DERIVE
            and p.method is not None and prev.method is not None
            and p.method.name == prev.method.name
            and p.conclusion.head == prev.conclusion.head
            and p.conclusion != prev.conclusion)


def _derive(p: PCA, ctx: _Ctx, prev: PCA | None) -> str:
    explicit = [r for r in p.reasons if r.ref is Ref.EXPLICIT]
    reasons = [ctx.f(r.formula) for r in explicit]
    conclusion = ctx.f(p.conclusion)
    method = None
    if p.method is not None and p.method.ref is Ref.EXPLICIT:
        method = ctx.lex.method_phrase(p.method.name)
    # "Because" introduces derived results, "Since" given assumptions
    because = any(not r.hypothesis for r in explicit)

    if _similar(p, prev):
        s = f"Similarly {conclusion}"
        if method:
            s += f" {method}"
        if reasons:
            s += f", {'because' if because else 'since'} {_join(reasons, not because)}"
        return s + "."
    if not reasons and not method:
        return f"Therefore {conclusion}."
    if not reasons:
        return f"{_capitalize(method)}, {conclusion}."
    if because:
        joined = _join(reasons, comma_and=False)
        if method:
            return f"Because {joined}, {method}, {conclusion}."
        return f"Because {joined}, {conclusion}."
    joined = _join(reasons, comma_and=True)
    if method:
        return f"Since {joined}, {conclusion} {method}."
    return f"Since {joined}, {conclusion}."


def _assume(p: PCA, ctx: _Ctx, prev) -> str:
    prose = [ctx.f(a, RenderMode.PROSE) for a in p.assumptions]
    be = [_be_form(s) for s in prose]
    if all(be):
        return f"Let {_join(be, comma_and=False)}."
    return f"Assume {_join([ctx.f(a) for a in p.assumptions], comma_and=False)}."


def _begin_cases(p: PCA, ctx: _Ctx, prev) -> str:
    a, b = (ctx.f(x) for x in p.assumptions)
    return f"To prove {ctx.f(p.goal)}, let us consider the two cases by assuming {a} and {b}."


def _announce_goal(p: PCA, ctx: _Ctx, prev) -> str:
    sub = ctx.f(p.intermediate_results[0])
    return (f"To prove {ctx.f(p.goal)}, let us first prove {sub}, "
            f"and consider the two cases separately.")


def _case_first(p: PCA, ctx: _Ctx, prev) -> str:
    return f"First, let us consider the first case by assuming {ctx.f(p.assumptions[0])}."


def _case_next(p: PCA, ctx: _Ctx, prev) -> str:
    return f"Next, we consider the second case by assuming {ctx.f(p.assumptions[0])}."


def _end_cases(p: PCA, ctx: _Ctx, prev) -> str:
    return f"Thus, in both cases, {ctx.f(p.conclusion)}."


def _choose_witness(p: PCA, ctx: _Ctx, prev) -> str:
    var = p.goal.args[0]
    return f"Now suppose that {ctx.f(p.witness)} is such an {ctx.f(var)}."


def _close_choice(p: PCA, ctx: _Ctx, prev) -> str:
    return f"This conclusion is independent of the choice of the element {ctx.f(p.witness)}."


TEMPLATES: dict[PCAKind, Callable[[PCA, _Ctx, PCA | None], str]] = {
    PCAKind.DERIVE: _derive,
    PCAKind.BEGIN_CASES: _begin_cases,
    PCAKind.CASE_FIRST: _case_first,
    PCAKind.CASE_NEXT: _case_next,
    PCAKind.END_CASES: _end_cases,
    PCAKind.ANNOUNCE_GOAL: _announce_goal,
    PCAKind.ASSUME: _assume,
    PCAKind.CHOOSE_WITNESS: _choose_witness,
    PCAKind.CLOSE_CHOICE: _close_choice,
}

_missing = set(PCAKind) - set(TEMPLATES)
if _missing:  # pragma: no cover
    raise RuntimeError(f"no realizer template for {sorted(k.value for k in _missing)}")


def realize_pca(p: PCA, lex: Lexicon, previous: PCA | None = None,
                mode: RenderMode | str = RenderMode.AUTO) -> str:
    """Render one annotated PCA as a sentence.

    ``previous`` is the PCA realized just before, used for "Similarly".
    """
    if not p.annotated:
        raise RealizationError(f"{p.kind.value} PCA has unannotated reference slots")
    sentence = TEMPLATES[p.kind](p, _Ctx(lex, RenderMode(mode)), previous)
    return _capitalize(sentence)


def realize_document(pcas: Sequence[PCA], lex: Lexicon, theorem: str | None = None,
                     groups: Sequence[Hashable] | None = None,
                     mode: RenderMode | str = RenderMode.AUTO) -> str:
    """Render a whole proof text.

    ``groups`` labels each PCA with its paragraph; a new paragraph starts
    whenever the label changes.
    """
    if groups is not None and len(groups) != len(pcas):
        raise RealizationError("paragraph labels do not align with PCAs")
    lines = []
    if theorem:
        lines.append(f"Theorem: {theorem}")
    lines.append("Proof:")
    paragraphs: list[list[str]] = []
    prev = None
    for i, p in enumerate(pcas):
        sentence = realize_pca(p, lex, prev, mode)
        if not paragraphs or (groups is not None and groups[i] != groups[i - 1]):
            paragraphs.append([])
        paragraphs[-1].append(sentence)
        prev = p
    body = "\n\n".join(" ".join(par) for par in paragraphs)
    return "\n".join(lines) + ("\n" + body if body else "") + "\n"
