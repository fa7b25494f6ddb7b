"""Invariant checks shared by the property tests and the acceptance run."""

from __future__ import annotations

import re

from prooftext.discourse import DiscourseModel
from prooftext.planner import PlannerConfig, Task, select_operator
from prooftext.proof_model import ProofTree

_SENTENCE_END = re.compile(r"[.](?=\s|$)")


def check_complete(tree: ProofTree, gen) -> None:
    assert gen.dm.conveyed == set(tree.nodes), set(tree.nodes) - gen.dm.conveyed


def check_premises_first(tree: ProofTree, gen) -> None:
    order = [e["node"] for e in gen.dm.events if e["event"] == "convey"]
    assert len(order) == len(set(order))
    pos = {n: i for i, n in enumerate(order)}
    for n in tree.nodes:
        for p in tree[n].premises:
            assert pos[p] < pos[n], (p, n)


def check_well_nested(gen) -> None:
    stack: list[str] = []
    for e in gen.dm.events:
        if e["event"] == "open":
            assert gen.dm.units[e["unit"]].parent == (stack[-1] if stack else None)
            stack.append(e["unit"])
        elif e["event"] == "close":
            assert stack and stack.pop() == e["unit"]
        else:
            assert stack and stack[-1] == e["unit"]
    assert not stack
    for h in gen.dm.history:
        assert h.unit in gen.dm.units


def check_priority(tree: ProofTree, gen, config: PlannerConfig) -> None:
    """Each choice is what selection gives on the state before that cycle."""
    for rec in gen.trace:
        if rec.op == "Split":
            continue
        dm = DiscourseModel(conveyed=set(rec.pre_conveyed), local_focus=rec.pre_focus)
        task = Task(tree.root, whole=True) if rec.task == "proof" else Task(rec.task)
        op, _ = select_operator(tree, dm, config, task)
        assert op.name == rec.op, (rec.line(), op.name)
        assert op.features.direction == rec.mode


def check_annotated(gen) -> None:
    assert len(gen.annotated) == len(gen.pcas)
    for p in gen.annotated:
        assert p.annotated
        assert all(r.ref is not None for r in p.reasons)


def check_sentence_count(gen) -> None:
    body = gen.text.split("Proof:\n", 1)[1]
    assert len(_SENTENCE_END.findall(body)) == len(gen.pcas)


def fingerprint(gen):
    return ([p for p in gen.annotated], [r.line() for r in gen.trace], gen.text)
