"""Natural-deduction proof trees and their text file format.

A proof file lists one node per line::

    theorem: Let F be a group ...
    node [2] formula (ELE 1U U) by Du from ([5])
    node [5] formula (UNIT U 1U) by HYP from ()
    node [9] formula (= 1U 1) hyps ((GROUP F) (ELE u1 U)) by Tsol from ([2])
    plan ([1])
    root [1]

``hyps`` is the assumption context of the node.  ``plan`` lists roots of
subproofs in the order they were conceived; it must contain the root and
defaults to just the root.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import ParseError, ValidationError
from .formula import Term, check_arities, print_term, read_sexprs, sexpr_to_term

HYP = "HYP"
CASE = "CASE"
CHOICE = "CHOICE"

_DIGITS = re.compile(r"\d+")


def node_key(node_id: str) -> tuple:
    """Sort key ordering ``[2]`` before ``[10]``."""
    m = _DIGITS.search(node_id)
    return (0, int(m.group()), node_id) if m else (1, 0, node_id)


def sorted_ids(ids: Iterable[str]) -> list[str]:
    return sorted(ids, key=node_key)


@dataclass(frozen=True)
class Justification:
    method: str
    premises: tuple[str, ...] = ()


@dataclass(frozen=True)
class ProofNode:
    id: str
    formula: Term
    justification: Justification
    hypotheses: tuple[Term, ...] = ()

    @property
    def method(self) -> str:
        return self.justification.method

    @property
    def premises(self) -> tuple[str, ...]:
        return self.justification.premises

    @property
    def is_hypothesis(self) -> bool:
        return self.justification.method == HYP


@dataclass(frozen=True)
class ProofTree:
    nodes: Mapping[str, ProofNode]
    root: str
    plan_order: tuple[str, ...]
    theorem: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "nodes", MappingProxyType(dict(self.nodes)))
        validate(self)

    def __getitem__(self, node_id: str) -> ProofNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise KeyError(f"unknown node id {node_id}") from None

    # cached_property needs a __dict__; frozen dataclasses still have one
    @cached_property
    def consumers(self) -> Mapping[str, tuple[str, ...]]:
        """Map each node id to the nodes that use it as a premise."""
        out: dict[str, list[str]] = {n: [] for n in self.nodes}
        for node in self.nodes.values():
            for p in node.premises:
                if node.id not in out[p]:
                    out[p].append(node.id)
        return MappingProxyType({k: tuple(sorted_ids(v)) for k, v in out.items()})

    def reachable(self, node_id: str) -> frozenset[str]:
        """``node_id`` plus everything reachable through premises, untruncated."""
        self[node_id]
        seen = {node_id}
        stack = [node_id]
        while stack:
            for p in self.nodes[stack.pop()].premises:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return frozenset(seen)

    def subproof_nodes(self, node_id: str) -> frozenset[str]:
        """Nodes of the subproof rooted at ``node_id``.

        Traversal stops at other plan-order entries; those head sibling
        subproofs and are presented separately.
        """
        self[node_id]
        cut = set(self.plan_order) - {node_id}
        seen = {node_id}
        stack = [node_id]
        while stack:
            for p in self.nodes[stack.pop()].premises:
                if p not in seen and p not in cut:
                    seen.add(p)
                    stack.append(p)
        return frozenset(seen)

    def subproof_size(self, node_id: str) -> int:
        return len(self.subproof_nodes(node_id))

    def subgoals(self, node_id: str) -> tuple[str, ...]:
        """Plan-order entries directly below ``node_id``'s subproof, in plan order."""
        inner = self.subproof_nodes(node_id)
        hit = {p for n in inner for p in self.nodes[n].premises
               if p in self.plan_order and p != node_id}
        return tuple(p for p in self.plan_order if p in hit)

    def depends_on(self, a: str, b: str) -> bool:
        """True if ``b`` lies strictly below ``a`` through premise links."""
        return a != b and b in self.reachable(a)


def validate(tree: ProofTree) -> None:
    nodes = tree.nodes
    for node in nodes.values():
        for p in node.premises:
            if p not in nodes:
                raise ValidationError("dangling-premise", p,
                                      f"node {node.id} cites undefined premise {p}")
        if node.is_hypothesis and node.premises:
            raise ValidationError("hyp-premises", node.id,
                                  f"hypothesis node {node.id} must not have premises")
    if tree.root not in nodes:
        raise ValidationError("missing-root", tree.root, f"root {tree.root} is not a node")

    # iterative three-colour DFS for cycles
    state: dict[str, int] = {}
    for start in nodes:
        if start in state:
            continue
        stack = [(start, iter(nodes[start].premises))]
        state[start] = 1
        while stack:
            nid, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[nid] = 2
                stack.pop()
            elif state.get(nxt) == 1:
                raise ValidationError("cycle", nxt, f"premise cycle through node {nxt}")
            elif nxt not in state:
                state[nxt] = 1
                stack.append((nxt, iter(nodes[nxt].premises)))

    for node in nodes.values():
        if tree.root in node.premises:
            raise ValidationError("root-has-consumer", tree.root,
                                  f"root {tree.root} is a premise of {node.id}")
    reach = tree.reachable(tree.root)
    for nid in nodes:
        if nid not in reach:
            raise ValidationError("unreachable", nid, f"node {nid} is not reachable from the root")

    seen: set[str] = set()
    for nid in tree.plan_order:
        if nid not in nodes:
            raise ValidationError("unknown-plan-node", nid, f"plan lists undefined node {nid}")
        if nid in seen:
            raise ValidationError("duplicate-plan-node", nid, f"plan lists {nid} twice")
        seen.add(nid)
    if tree.root not in seen:
        raise ValidationError("root-not-planned", tree.root,
                              f"plan must include the root {tree.root}")


# --------------------------------------------------------------------------
# file format

def _ids(expr, lineno: int) -> tuple[str, ...]:
    if not isinstance(expr, list) or any(not isinstance(x, str) for x in expr):
        raise ParseError("expected a parenthesized list of node ids", line=lineno)
    return tuple(expr)


def _parse_node(items: list, lineno: int) -> ProofNode:
    # node <id> formula <sexpr> [hyps (<sexpr> ...)] by <method> from (<id> ...)
    def expect(i: int, word: str) -> None:
        if i >= len(items) or items[i] != word:
            raise ParseError(f"expected '{word}'", line=lineno)

    if len(items) < 2 or not isinstance(items[1], str):
        raise ParseError("node line needs an id", line=lineno)
    node_id = items[1]
    expect(2, "formula")
    if len(items) < 4:
        raise ParseError("missing formula", line=lineno)
    try:
        formula = sexpr_to_term(items[3])
    except ParseError as exc:
        raise ParseError(str(exc), line=lineno) from None
    i = 4
    hyps: tuple[Term, ...] = ()
    if i < len(items) and items[i] == "hyps":
        if i + 1 >= len(items) or not isinstance(items[i + 1], list):
            raise ParseError("expected a parenthesized hypothesis list", line=lineno)
        hyps = tuple(sexpr_to_term(h) for h in items[i + 1])
        i += 2
    expect(i, "by")
    if i + 1 >= len(items) or not isinstance(items[i + 1], str):
        raise ParseError("missing method after 'by'", line=lineno)
    method = items[i + 1]
    expect(i + 2, "from")
    if i + 3 >= len(items):
        raise ParseError("missing premise list after 'from'", line=lineno)
    premises = _ids(items[i + 3], lineno)
    if len(items) > i + 4:
        raise ParseError("trailing tokens on node line", line=lineno)
    return ProofNode(node_id, formula, Justification(method, premises), hyps)


def parse_proof(text: str) -> ProofTree:
    """Parse and validate proof file text."""
    theorem = None
    nodes: dict[str, ProofNode] = {}
    plan: tuple[str, ...] | None = None
    root: str | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("theorem:"):
            theorem = line[len("theorem:"):].strip()
            continue
        try:
            items = read_sexprs(line)
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno) from None
        keyword = items[0]
        if keyword == "node":
            node = _parse_node(items, lineno)
            if node.id in nodes:
                raise ValidationError("duplicate-node", node.id, f"node {node.id} defined twice")
            nodes[node.id] = node
        elif keyword == "plan":
            if len(items) != 2:
                raise ParseError("plan line takes one id list", line=lineno)
            plan = _ids(items[1], lineno)
        elif keyword == "root":
            if len(items) != 2 or not isinstance(items[1], str):
                raise ParseError("root line takes one id", line=lineno)
            root = items[1]
        else:
            raise ParseError(f"unknown line keyword {keyword!r}", line=lineno)
    if root is None:
        raise ValidationError("missing-root", None, "proof file has no 'root' line")
    check_arities([t for n in nodes.values() for t in (n.formula, *n.hypotheses)])
    return ProofTree(nodes, root, plan if plan is not None else (root,), theorem)


def load_proof(path) -> ProofTree:
    with open(path, encoding="utf-8") as fh:
        return parse_proof(fh.read())


def format_proof(tree: ProofTree) -> str:
    """Serialize a tree back to the proof file format."""
    lines = []
    if tree.theorem:
        lines.append(f"theorem: {tree.theorem}")
    for node in tree.nodes.values():
        hyps = ""
        if node.hypotheses:
            hyps = " hyps (" + " ".join(print_term(h) for h in node.hypotheses) + ")"
        lines.append(f"node {node.id} formula {print_term(node.formula)}{hyps} "
                     f"by {node.method} from ({' '.join(node.premises)})")
    lines.append(f"plan ({' '.join(tree.plan_order)})")
    lines.append(f"root {tree.root}")
    return "\n".join(lines) + "\n"
