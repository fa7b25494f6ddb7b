"""Acceptance criteria, one check each.

Run with pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly: ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from generators import random_tree  # noqa: E402
from properties import (  # noqa: E402
    check_annotated,
    check_complete,
    check_premises_first,
    check_priority,
    check_sentence_count,
    check_well_nested,
    fingerprint,
)
from prooftext import cli, default_lexicon, generate  # noqa: E402
from prooftext.discourse import DiscourseModel, select_next_node  # noqa: E402
from prooftext.formula import RenderMode, parse_term as T  # noqa: E402
from prooftext.pca import (  # noqa: E402
    PCAKind,
    Reason,
    Ref,
    make_announce_goal,
    make_begin_cases,
    make_case,
    make_derive,
)
from prooftext.planner import PlannerConfig, enforce_readiness, op_order_minimal_load  # noqa: E402
from prooftext.proof_model import load_proof  # noqa: E402
from prooftext.realizer import realize_pca  # noqa: E402

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
RESULTS: dict[str, tuple[bool, str]] = {}


def norm(text: str) -> str:
    return " ".join(text.split())


def golden_end_to_end():
    import contextlib
    import io
    buf = io.StringIO()
    start = time.perf_counter()
    with contextlib.redirect_stdout(buf):
        code = cli.main(["prove", str(CORPUS / "group-unit.proof")])
    elapsed = time.perf_counter() - start
    expected = (CORPUS / "group-unit.golden.txt").read_text(encoding="utf-8")
    same = code == 0 and norm(buf.getvalue()) == norm(expected)
    return same and elapsed < 1.0, f"exact={same} runtime={elapsed:.3f}s (limit 1s)"


def verbatim_sentences():
    lex = default_lexicon()
    E, O = Ref.EXPLICIT, Ref.OMIT
    prose = RenderMode.PROSE

    def subset(hyp):
        return make_derive([Reason(T("(ELE a S1)"), "[1]", hyp),
                            Reason(T("(SUBSET S1 S2)"), "[2]", hyp)],
                           T("(ELE a S2)"), "Def-Subset").with_refs([E, E], E)

    annotated = make_derive([Reason(T("(ELE a U)"), "[1]", True),
                             Reason(T("(SUBSET U F)"), "[2]", True)],
                            T("(ELE a F)"), "Def-Subset").with_refs([E, O], O)
    cases = [
        (realize_pca(subset(False), lex, mode=prose),
         "Because a is an element of S1 and S1 is a subset of S2, according to the "
         "definition of subset, a is an element of S2."),
        (realize_pca(make_begin_cases(T("Q"), [T("A"), T("B")]), lex),
         "To prove Q, let us consider the two cases by assuming A and B."),
        (realize_pca(make_case(PCAKind.CASE_FIRST, T("F")), lex),
         "First, let us consider the first case by assuming F."),
        (realize_pca(make_announce_goal(T("Q"), T("(or F G)")), lex),
         "To prove Q, let us first prove F ∨ G, and consider the two cases separately."),
        (realize_pca(subset(True), lex, mode=prose),
         "Since a is an element of S1, and S1 is a subset of S2, a is an element of S2 "
         "according to the definition of subset."),
        (realize_pca(annotated, lex, mode=prose),
         "Since a is an element of U, a is an element of F."),
    ]
    ok = sum(got == want for got, want in cases)
    return ok == len(cases), f"{ok}/{len(cases)} sentences exact"


def focus_selection():
    t = load_proof(CORPUS / "focus.proof")
    dm = DiscourseModel()
    dm.open_unit("[5]")
    dm.mark_conveyed("[3]")
    dm.mark_conveyed("[1]")
    got = select_next_node(dm, t, "[5]")
    return got == "[2]", f"selected {got}"


def case_trace():
    t = load_proof(CORPUS / "cases.proof")
    gen = generate(t)
    fired = [r for r in gen.trace if r.op == "Case-Implicit"]
    kinds = [p.kind for p in gen.pcas]
    units = {u.task for u in gen.dm.units.values()}
    by_trigger = {r.trigger: r for r in fired}
    task, focus = by_trigger.get("task"), by_trigger.get("local-focus")
    ok = task is not None and focus is not None
    if ok:
        # L4 is the second described node
        ok = (task.nodes[1] not in task.pre_conveyed and task.nodes[1] in units
              and focus.nodes[1] in focus.pre_conveyed and focus.nodes[1] not in units)
    # acts order for each split: first case, second case, conclusion
    seq = [k for k in kinds if k in (PCAKind.CASE_FIRST, PCAKind.CASE_NEXT, PCAKind.END_CASES)]
    nested = [PCAKind.CASE_FIRST, PCAKind.CASE_FIRST, PCAKind.CASE_NEXT, PCAKind.END_CASES,
              PCAKind.CASE_NEXT, PCAKind.END_CASES]
    ok = ok and seq == nested
    return ok, f"triggers={[r.trigger for r in fired]} markers={[k.value for k in seq]}"


CONFIGS = [PlannerConfig(s, a) for s in ("implicit", "explicit") for a in ("abstract", "detailed")]


def property_suites(n: int = 60):
    start = time.perf_counter()
    failures = []
    for seed in range(n):
        tree = random_tree(seed)
        config = CONFIGS[seed % len(CONFIGS)]
        try:
            gen = generate(tree, config=config)
            check_complete(tree, gen)
            check_premises_first(tree, gen)
            check_well_nested(gen)
            check_priority(tree, gen, config)
            assert fingerprint(generate(tree, config=config)) == fingerprint(gen)
            check_annotated(gen)
            check_sentence_count(gen)
        except Exception as exc:  # recorded, reported below
            failures.append((seed, repr(exc)[:80]))
    elapsed = time.perf_counter() - start
    return (not failures and elapsed < 30.0,
            f"{n} trees, {len(failures)} failures, runtime={elapsed:.2f}s (limit 30s)")


def ordering(n: int = 300):
    bad = 0
    for seed in range(n):
        tree = random_tree(seed)
        rng = random.Random(seed)
        goals = rng.sample(sorted(tree.nodes), rng.randint(1, min(5, len(tree.nodes))))
        sizes = [tree.subproof_size(g) for g in goals]
        # brute force: the only size-sorted permutation that keeps ties in order
        oracle = next(list(p) for p in itertools.permutations(range(len(goals)))
                      if all(sizes[a] < sizes[b] or (sizes[a] == sizes[b] and a < b)
                             for a, b in zip(p, p[1:])))
        if op_order_minimal_load(tree, goals) != [goals[i] for i in oracle]:
            bad += 1
        out = enforce_readiness(tree, goals)
        if any(tree.depends_on(g, h) for i, g in enumerate(out) for h in out[i + 1:]):
            bad += 1
    return bad == 0, f"{n} generated goal lists, {bad} mismatches"


CRITERIA = {
    "1 golden end-to-end": golden_end_to_end,
    "2 verbatim realizer sentences": verbatim_sentences,
    "3 focus selection": focus_selection,
    "4 case trace": case_trace,
    "5 property suites": property_suites,
    "6 ordering": ordering,
}


def _line(name: str, ok: bool, detail: str) -> str:
    return f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}"


@pytest.mark.parametrize("name", list(CRITERIA))
def test_criterion(name):
    ok, detail = CRITERIA[name]()
    RESULTS[name] = (ok, detail)
    print(_line(name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(name, *fn()) for name, fn in CRITERIA.items()]
    for name, ok, detail in results:
        print(_line(name, ok, detail))
    sys.exit(0 if all(ok for _, ok, _ in results) else 1)
