"""Presentation operators.

Each operator has a proof schema (returns candidate bindings), an
applicability condition, an acts procedure and a feature set used for
selection.  Registry order breaks remaining ties.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from ..discourse import DiscourseModel, in_scope, select_next_node
from ..formula import Term, objects_of
from ..pca import (
    PCAKind,
    Reason,
    make_announce_goal,
    make_assume,
    make_begin_cases,
    make_case,
    make_choose_witness,
    make_close_choice,
    make_derive,
    make_end_cases,
    match_witness,
)
from ..proof_model import CASE, CHOICE, ProofTree
from .core import PlannerConfig, PlanningRun, Task

Bindings = dict[str, Any]

_PRIORITY = ("compulsory", "specific", "general")


@dataclass(frozen=True)
class Features:
    direction: str            # top-down | bottom-up
    priority: str             # compulsory | specific | general
    style: str | None = None  # implicit | explicit
    detail: str | None = None  # detailed | abstract

    def __post_init__(self):
        if self.direction not in ("top-down", "bottom-up"):
            raise ValueError(f"bad direction {self.direction!r}")
        if self.priority not in _PRIORITY:
            raise ValueError(f"bad priority {self.priority!r}")

    @property
    def rank(self) -> tuple[int, int]:
        return (0 if self.direction == "top-down" else 1, _PRIORITY.index(self.priority))


@dataclass(frozen=True)
class PresentationOperator:
    name: str
    features: Features
    proof_schema: Callable[[ProofTree, DiscourseModel, PlannerConfig, Task], list[Bindings]]
    applicability: Callable[[ProofTree, DiscourseModel, PlannerConfig, Task, Bindings], bool]
    acts: Callable[[PlanningRun, Task, Bindings], None]
    describe: Callable[[Bindings], tuple[str, ...]]
    # the operator with the opposite stylistic feature, if any
    dual: str | None = None

    def compatible(self, config: PlannerConfig, registry) -> bool:
        if self.features.detail == "abstract" and config.abstraction == "detailed":
            return False
        if self.features.style and self.features.style != config.style:
            return not any(op.name == self.dual for op in registry)
        return True


def applicable_bindings(op: PresentationOperator, tree: ProofTree, dm: DiscourseModel,
                        config: PlannerConfig, task: Task) -> Bindings | None:
    for b in op.proof_schema(tree, dm, config, task):
        if op.applicability(tree, dm, config, task, b):
            return b
    return None


def _always(*_args) -> bool:
    return True


def _reason(tree: ProofTree, node: str) -> Reason:
    return Reason(tree[node].formula, node, tree[node].is_hypothesis)


# --------------------------------------------------------------------------
# hypothesis introduction

def _hyp_schema(tree, dm, config, task):
    scope = list(tree[tree.root].hypotheses) + [
        h for h in tree[task.node].hypotheses if h not in tree[tree.root].hypotheses]
    pending = [n for n in task.nodes(tree)
               if tree[n].is_hypothesis and n not in dm.conveyed and n != task.node
               and in_scope(tree, task.node, n)]
    if not pending:
        return []
    pending.sort(key=lambda n: (scope.index(tree[n].formula), n))
    return [{"nodes": tuple(pending)}]


def _hyp_acts(run: PlanningRun, task, b):
    nodes = b["nodes"]
    pca = make_assume([run.tree[n].formula for n in nodes], source=nodes[-1])
    run.emit(pca, [(n, True) for n in nodes])


# --------------------------------------------------------------------------
# case analysis

def match_case(tree: ProofTree, l1: str) -> Bindings | None:
    """Match the case schema at ``l1``: a CASE step from a disjunction and two branches."""
    node = tree[l1]
    if node.method != CASE or len(node.premises) != 3:
        return None
    for l4 in node.premises:
        disj = tree[l4].formula
        if disj.head != "or":
            continue
        f, g = disj.args
        rest = [p for p in node.premises if p != l4]
        for l2, l3 in (rest, rest[::-1]):
            b2, b3 = tree[l2], tree[l3]
            if (f in b2.hypotheses and g in b3.hypotheses
                    and b2.formula == node.formula and b3.formula == node.formula):
                return {"L1": l1, "L2": l2, "L3": l3, "L4": l4, "F": f, "G": g,
                        "Q": node.formula}
    return None


def _trigger_candidates(tree, dm, task, matcher):
    out = []
    if not task.whole:
        b = matcher(tree, task.node)
        if b is not None:
            out.append({**b, "trigger": "task"})
    if dm.local_focus is not None:
        nodes = task.nodes(tree)
        for c in tree.consumers[dm.local_focus]:
            if c not in nodes or c in dm.conveyed:
                continue
            b = matcher(tree, c)
            if b is not None and b["L4"] == dm.local_focus and not (
                    out and out[0]["L1"] == c):
                out.append({**b, "trigger": "local-focus"})
    return out


def _case_schema(tree, dm, config, task):
    return _trigger_candidates(tree, dm, task, match_case)


def _case_applicable(tree, dm, config, task, b):
    triggered = ((b["trigger"] == "task" and not task.whole and task.node == b["L1"])
                 or dm.local_focus == b["L4"])
    return triggered and b["L2"] not in dm.conveyed and b["L3"] not in dm.conveyed


def _hyp_node(tree: ProofTree, under: str, formula: Term, conveyed) -> str | None:
    for n in sorted(tree.reachable(under)):
        node = tree[n]
        if node.is_hypothesis and node.formula == formula and n not in conveyed:
            return n
    return None


def _case_acts(run: PlanningRun, task, b, explicit: bool):
    tree, dm = run.tree, run.dm
    disj = tree[b["L4"]].formula
    if explicit:
        if b["L4"] in dm.conveyed:
            run.emit(make_begin_cases(b["Q"], (b["F"], b["G"]), source=b["L1"]))
        else:
            run.emit(make_announce_goal(b["Q"], disj, source=b["L1"]))
    if b["L4"] not in dm.conveyed:
        run.present(Task(b["L4"]))
    for kind, branch, assumption in ((PCAKind.CASE_FIRST, b["L2"], b["F"]),
                                     (PCAKind.CASE_NEXT, b["L3"], b["G"])):
        hyp = _hyp_node(tree, branch, assumption, dm.conveyed)
        run.emit(make_case(kind, assumption, source=hyp or branch),
                 [(hyp, True)] if hyp else [])
        if branch not in dm.conveyed:
            run.present(Task(branch))
    run.emit(make_end_cases(b["Q"], source=b["L1"]), [(b["L1"], True)])


def _case_describe(b):
    return (b["L1"], b["L4"], b["L2"], b["L3"])


# --------------------------------------------------------------------------
# existential choice

def match_choice(tree: ProofTree, l1: str) -> Bindings | None:
    """Match a CHOICE step: an existential premise and a body using a witness hypothesis."""
    node = tree[l1]
    if node.method != CHOICE or len(node.premises) != 2:
        return None
    for ex, body in (node.premises, node.premises[::-1]):
        exf = tree[ex].formula
        if exf.head != "exists" or len(exf.args) != 2:
            continue
        var, pattern = exf.args
        for n in sorted(tree.reachable(body)):
            hyp = tree[n]
            if not hyp.is_hypothesis or hyp.formula not in tree[body].hypotheses:
                continue
            if match_witness(pattern, hyp.formula, var.head) is not None:
                return {"L1": l1, "L4": ex, "BODY": body, "W": n}
    return None


def _choice_schema(tree, dm, config, task):
    return _trigger_candidates(tree, dm, task, match_choice)


def _choice_applicable(tree, dm, config, task, b):
    triggered = ((b["trigger"] == "task" and not task.whole and task.node == b["L1"])
                 or dm.local_focus == b["L4"])
    return triggered and b["BODY"] not in dm.conveyed


def _choice_acts(run: PlanningRun, task, b):
    tree, dm = run.tree, run.dm
    if b["L4"] not in dm.conveyed:
        run.present(Task(b["L4"]))
    pca = make_choose_witness(tree[b["L4"]].formula, tree[b["W"]].formula, source=b["W"])
    run.emit(pca, [(b["W"], True)])
    run.present(Task(b["BODY"]))
    run.emit(make_close_choice(tree[b["L1"]].formula, pca.witness, source=b["L1"]),
             [(b["L1"], True)])


# --------------------------------------------------------------------------
# ordering and splitting

def op_order_minimal_load(tree: ProofTree, subgoals) -> list[str]:
    """Shorter subproofs first; equal sizes keep their given order."""
    return sorted(subgoals, key=tree.subproof_size)


def order_by_focus(tree: ProofTree, dm: DiscourseModel, subgoals) -> list[str]:
    centers = dm.focal_centers(tree)
    return sorted(subgoals, key=lambda g: -len(objects_of(tree[g].formula) & centers))


def enforce_readiness(tree: ProofTree, order) -> list[str]:
    """Move each subgoal after any other subgoal it depends on, otherwise keeping order."""
    remaining = list(order)
    out = []
    while remaining:
        for g in remaining:
            if not any(tree.depends_on(g, h) for h in remaining if h != g):
                out.append(g)
                remaining.remove(g)
                break
    return out


def _open_subgoals(tree, dm, task):
    return [g for g in task.subgoals(tree) if g not in dm.conveyed]


def _order_schema(tree, dm, config, task):
    goals = _open_subgoals(tree, dm, task)
    return [{"subgoals": tuple(goals)}] if goals else []


def _focus_order_applicable(tree, dm, config, task, b):
    goals = b["subgoals"]
    if len(goals) < 2 or dm.local_focus is None:
        return False
    centers = dm.focal_centers(tree)
    return len({len(objects_of(tree[g].formula) & centers) for g in goals}) > 1


def _min_load_applicable(tree, dm, config, task, b):
    goals = b["subgoals"]
    return len(goals) > 1 and len({tree.subproof_size(g) for g in goals}) > 1


def op_split(run: PlanningRun, task: Task, ordered) -> None:
    """Post each ordered subgoal as a recursive Present call."""
    ordered = tuple(ordered)
    if not ordered:
        return
    run.note("Split", "top-down", ordered, task)
    for g in ordered:
        if g not in run.dm.conveyed:
            run.present(Task(g))


def _ordering_acts(order_fn):
    def acts(run: PlanningRun, task, b):
        op_split(run, task, enforce_readiness(run.tree, order_fn(run, b["subgoals"])))
    return acts


# --------------------------------------------------------------------------
# bottom-up

def _derive_schema(tree, dm, config, task):
    n = select_next_node(dm, tree, task.node)
    return [] if n is None else [{"node": n}]


def _derive_applicable(tree, dm, config, task, b):
    return all(p in dm.conveyed for p in tree[b["node"]].premises)


def _derive_acts(run: PlanningRun, task, b):
    tree = run.tree
    node = tree[b["node"]]
    if node.is_hypothesis:
        run.emit(make_assume([node.formula], source=node.id), [(node.id, True)])
        return
    pca = make_derive([_reason(tree, p) for p in node.premises], node.formula,
                      node.method, source=node.id)
    run.emit(pca, [(node.id, True)])


def simple_subproof(tree: ProofTree, dm: DiscourseModel, config: PlannerConfig,
                    task: Task, start: str) -> tuple[tuple[str, ...], str] | None:
    """Find a trivial chain starting at the suggested node ``start``.

    Walks upward while each node has exactly one consumer whose other
    premises are already conveyed.  Every step in the chain, the top
    included, must use a trivial method, and at most ``max_interior``
    nodes are hidden.  Returns (interior, top) or None.
    """
    trivial = config.trivial()
    if tree[start].is_hypothesis or tree[start].method not in trivial:
        return None
    nodes = task.nodes(tree)
    interior = [start]
    best = None
    cur = start
    while True:
        consumers = tree.consumers[cur]
        if len(consumers) != 1:
            break
        top = consumers[0]
        top_node = tree[top]
        if top not in nodes or top in dm.conveyed or top_node.method not in trivial:
            break
        if any(q not in dm.conveyed for q in top_node.premises if q != cur):
            break
        best = (tuple(interior), top)
        if len(interior) >= config.max_interior:
            break
        interior.append(top)
        cur = top
    return best


def _simplify_schema(tree, dm, config, task):
    n = select_next_node(dm, tree, task.node)
    if n is None:
        return []
    found = simple_subproof(tree, dm, config, task, n)
    return [] if found is None else [{"interior": found[0], "node": found[1]}]


def frontier(tree: ProofTree, top: str, interior) -> list[str]:
    hidden = set(interior)
    out: list[str] = []

    def walk(n):
        for p in tree[n].premises:
            if p in hidden:
                walk(p)
            elif p not in out:
                out.append(p)

    walk(top)
    return out


def _simplify_acts(run: PlanningRun, task, b):
    tree = run.tree
    top = tree[b["node"]]
    pca = make_derive([_reason(tree, p) for p in frontier(tree, top.id, b["interior"])],
                      top.formula, None, source=top.id,
                      intermediate_results=[tree[n].formula for n in b["interior"]])
    run.emit(pca, [(top.id, True)], abstracted=b["interior"])


# --------------------------------------------------------------------------

REGISTRY: tuple[PresentationOperator, ...] = (
    PresentationOperator(
        "Hypothesis-Intro", Features("top-down", "compulsory"),
        _hyp_schema, _always, _hyp_acts, lambda b: b["nodes"]),
    PresentationOperator(
        "Case-Implicit", Features("top-down", "compulsory", "implicit"),
        _case_schema, _case_applicable,
        lambda run, task, b: _case_acts(run, task, b, explicit=False),
        _case_describe, dual="Case-Explicit"),
    PresentationOperator(
        "Case-Explicit", Features("top-down", "compulsory", "explicit"),
        _case_schema, _case_applicable,
        lambda run, task, b: _case_acts(run, task, b, explicit=True),
        _case_describe, dual="Case-Implicit"),
    PresentationOperator(
        "Choice-Witness", Features("top-down", "compulsory"),
        _choice_schema, _choice_applicable, _choice_acts,
        lambda b: (b["L1"], b["L4"], b["W"], b["BODY"])),
    PresentationOperator(
        "Order-Focus", Features("top-down", "specific"),
        _order_schema, _focus_order_applicable,
        _ordering_acts(lambda run, goals: order_by_focus(run.tree, run.dm, goals)),
        lambda b: b["subgoals"]),
    PresentationOperator(
        "Order-Minimal-Load", Features("top-down", "general"),
        _order_schema, _min_load_applicable,
        _ordering_acts(lambda run, goals: op_order_minimal_load(run.tree, goals)),
        lambda b: b["subgoals"]),
    PresentationOperator(
        "Order-Time", Features("top-down", "general"),
        _order_schema, _always,
        _ordering_acts(lambda run, goals: list(goals)),
        lambda b: b["subgoals"]),
    PresentationOperator(
        "Simplify-Bottom-Up", Features("bottom-up", "general", "explicit", "abstract"),
        _simplify_schema, _always, _simplify_acts,
        lambda b: (*b["interior"], b["node"])),
    PresentationOperator(
        "Derive-Bottom-Up", Features("bottom-up", "general", "explicit", "detailed"),
        _derive_schema, _derive_applicable, _derive_acts, lambda b: (b["node"],)),
)

TOP_DOWN = tuple(op for op in REGISTRY if op.features.direction == "top-down")
