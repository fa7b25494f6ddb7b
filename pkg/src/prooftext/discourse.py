"""Discourse model: conveyed nodes, attentional units and the local focus."""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from .errors import DiscourseStateError
from .formula import objects_of
from .proof_model import ProofTree, node_key, sorted_ids

if TYPE_CHECKING:
    from .pca import PCA


@dataclass
class AttentionalUnit:
    id: str
    task: str
    parent: str | None
    status: str = "open"
    conveyed_here: list[str] = field(default_factory=list)

    @property
    def is_open(self) -> bool:
        return self.status == "open"


@dataclass(frozen=True)
class HistoryEntry:
    """One emitted PCA with the unit it was emitted in and the nodes it conveyed."""
    pca: "PCA"
    unit: str
    conveyed: tuple[str, ...]


@dataclass
class DiscourseModel:
    units: dict[str, AttentionalUnit] = field(default_factory=dict)
    conveyed: set[str] = field(default_factory=set)
    local_focus: str | None = None
    history: list[HistoryEntry] = field(default_factory=list)
    # nodes conveyed by abstraction (skipped interior of a simplified subproof)
    abstracted: set[str] = field(default_factory=set)
    events: list[dict[str, Any]] = field(default_factory=list)
    _stack: list[str] = field(default_factory=list)

    # -- units -------------------------------------------------------------

    @property
    def open_chain(self) -> tuple[str, ...]:
        return tuple(self._stack)

    @property
    def current_unit(self) -> str | None:
        return self._stack[-1] if self._stack else None

    def open_unit(self, task: str) -> str:
        uid = f"u{len(self.units)}"
        self.units[uid] = AttentionalUnit(uid, task, self.current_unit)
        self._stack.append(uid)
        self.events.append({"event": "open", "unit": uid, "node": task})
        return uid

    def close_unit(self) -> str:
        if not self._stack:
            raise DiscourseStateError("close_unit called with no open attentional unit")
        uid = self._stack.pop()
        self.units[uid].status = "closed"
        self.events.append({"event": "close", "unit": uid, "node": self.units[uid].task})
        return uid

    def depth(self, uid: str) -> int:
        d = 0
        while self.units[uid].parent is not None:
            uid = self.units[uid].parent
            d += 1
        return d

    # -- conveyance --------------------------------------------------------

    def mark_conveyed(self, node: str, set_focus: bool = True, abstracted: bool = False) -> "DiscourseModel":
        """Record ``node`` as conveyed in the innermost open unit.

        Re-marking a conveyed node is a no-op; top-down operators mark a
        subproof root after its interior has been presented.
        """
        if not self._stack:
            raise DiscourseStateError(f"cannot convey {node}: no open attentional unit")
        if node in self.conveyed:
            return self
        unit = self.units[self._stack[-1]]
        unit.conveyed_here.append(node)
        self.conveyed.add(node)
        if abstracted:
            self.abstracted.add(node)
        self.events.append({"event": "convey", "unit": unit.id, "node": node})
        if set_focus:
            self.local_focus = node
            self.events.append({"event": "focus", "unit": unit.id, "node": node})
        return self

    def record(self, pca: "PCA", conveyed: tuple[str, ...] = ()) -> None:
        if not self._stack:
            raise DiscourseStateError("cannot record a PCA outside an attentional unit")
        self.history.append(HistoryEntry(pca, self._stack[-1], tuple(conveyed)))

    def snapshot(self) -> "DiscourseModel":
        return copy.deepcopy(self)

    # -- focus -------------------------------------------------------------

    def focal_centers(self, tree: ProofTree) -> frozenset[str]:
        if self.local_focus is None:
            return frozenset()
        return objects_of(tree[self.local_focus].formula)

    def conveyed_objects(self, tree: ProofTree) -> frozenset[str]:
        out: set[str] = set()
        for n in self.conveyed:
            out |= objects_of(tree[n].formula)
        return frozenset(out)


def in_scope(tree: ProofTree, task: str, node: str) -> bool:
    """Hypothesis leaves are presentable only where their assumption is in force.

    Assumptions of the root are global; others must be listed in the task's
    own hypotheses (e.g. the case assumption of a case branch).
    """
    n = tree[node]
    if not n.is_hypothesis or node == task:
        return True
    return n.formula in tree[task].hypotheses or n.formula in tree[tree.root].hypotheses


def focus_candidates(dm: DiscourseModel, tree: ProofTree, task: str) -> list[str]:
    """Unconveyed nodes of the task whose premises are all conveyed, by ascending id."""
    out = []
    for n in tree.subproof_nodes(task):
        if n in dm.conveyed or not in_scope(tree, task, n):
            continue
        if all(p in dm.conveyed for p in tree[n].premises):
            out.append(n)
    return sorted_ids(out)


def focus_key(dm: DiscourseModel, tree: ProofTree, node: str,
              centers: frozenset[str] | None = None,
              known: frozenset[str] | None = None) -> tuple:
    """Sort key: larger overlap with focal centers first, then fewer new objects, then id."""
    centers = dm.focal_centers(tree) if centers is None else centers
    known = dm.conveyed_objects(tree) if known is None else known
    objs = objects_of(tree[node].formula)
    return (-len(objs & centers), len(objs - known), node_key(node))


def select_next_node(dm: DiscourseModel, tree: ProofTree, task: str) -> str | None:
    candidates = focus_candidates(dm, tree, task)
    if not candidates:
        return None
    centers = dm.focal_centers(tree)
    known = dm.conveyed_objects(tree)
    return min(candidates, key=lambda n: focus_key(dm, tree, n, centers, known))
