from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

from ..discourse import DiscourseModel
from ..errors import PlanningError
from ..pca import PCA
from ..proof_model import ProofTree, sorted_ids

STYLES = ("implicit", "explicit")
ABSTRACTIONS = ("detailed", "abstract")


@dataclass(frozen=True)
class PlannerConfig:
    style: str = "implicit"
    abstraction: str = "abstract"
    trace: bool = False
    # Simplify-Bottom-Up: largest number of hidden interior nodes
    max_interior: int = 2
    # methods counted as trivial steps; None means the default salience
    # table's omit-always methods
    trivial_methods: frozenset[str] | None = None

    def __post_init__(self):
        if self.style not in STYLES:
            raise ValueError(f"style must be one of {STYLES}, got {self.style!r}")
        if self.abstraction not in ABSTRACTIONS:
            raise ValueError(f"abstraction must be one of {ABSTRACTIONS}, got {self.abstraction!r}")

    def trivial(self) -> frozenset[str]:
        if self.trivial_methods is not None:
            return self.trivial_methods
        from ..microplanner import default_salience
        return default_salience().methods_in("omit-always")


@dataclass(frozen=True)
class Task:
    """A presentation task: a subproof root, or the entire proof when ``whole``."""
    node: str
    whole: bool = False

    def nodes(self, tree: ProofTree) -> frozenset[str]:
        return tree.reachable(self.node) if self.whole else tree.subproof_nodes(self.node)

    def subgoals(self, tree: ProofTree) -> tuple[str, ...]:
        return tree.plan_order if self.whole else tree.subgoals(self.node)

    def __str__(self) -> str:
        return "proof" if self.whole else self.node


@dataclass(frozen=True)
class TraceRecord:
    cycle: int
    op: str
    mode: str
    nodes: tuple[str, ...]
    unit: str
    task: str
    # discourse state before the operator ran, for priority re-checks
    pre_conveyed: frozenset[str] = frozenset()
    pre_focus: str | None = None
    trigger: str | None = None

    def line(self) -> str:
        s = (f"cycle={self.cycle} op={self.op} mode={self.mode} "
             f"node(s)={','.join(self.nodes) or '-'} unit={self.unit}")
        return s + (f" trigger={self.trigger}" if self.trigger else "")

    def as_dict(self) -> dict[str, Any]:
        return {"cycle": self.cycle, "op": self.op, "mode": self.mode,
                "nodes": list(self.nodes), "unit": self.unit, "task": self.task,
                "trigger": self.trigger}


@dataclass
class PlanResult:
    pcas: list[PCA]
    dm: DiscourseModel
    trace: list[TraceRecord]


@dataclass
class PlanningRun:
    """Mutable state of one planning run; strictly sequential."""
    tree: ProofTree
    config: PlannerConfig = field(default_factory=PlannerConfig)
    dm: DiscourseModel = field(default_factory=DiscourseModel)
    pcas: list[PCA] = field(default_factory=list)
    trace: list[TraceRecord] = field(default_factory=list)
    _cycle: int = 0

    def emit(self, pca: PCA, convey: Iterable[tuple[str, bool]] = (),
             abstracted: Iterable[str] = ()) -> None:
        """Append ``pca`` and mark its nodes conveyed; pairs are (node, set_focus).

        ``abstracted`` nodes are hidden interior steps, conveyed first and
        without moving the focus.
        """
        ids = []
        for node in abstracted:
            self.dm.mark_conveyed(node, set_focus=False, abstracted=True)
            ids.append(node)
        for node, focus in convey:
            self.dm.mark_conveyed(node, set_focus=focus)
            ids.append(node)
        self.dm.record(pca, tuple(ids))
        self.pcas.append(pca)

    def note(self, op: str, mode: str, nodes: Iterable[str], task: Task,
             pre_conveyed: frozenset[str] = frozenset(), pre_focus: str | None = None,
             trigger: str | None = None) -> None:
        self._cycle += 1
        self.trace.append(TraceRecord(self._cycle, op, mode, tuple(nodes),
                                      self.dm.current_unit or "-", str(task),
                                      pre_conveyed, pre_focus, trigger))

    def present(self, task: Task) -> list[PCA]:
        """Open a unit for ``task`` and run planning cycles until it is conveyed."""
        start = len(self.pcas)
        self.dm.open_unit(task.node)
        todo = task.nodes(self.tree)
        while True:
            residual = todo - self.dm.conveyed
            if not residual:
                break
            chosen = select_operator(self.tree, self.dm, self.config, task)
            if chosen is None:
                raise PlanningError(
                    f"no presentation operator applies to task {task}; "
                    f"unconveyed: {' '.join(sorted_ids(residual))}",
                    frozenset(residual))
            op, bindings = chosen
            before = len(self.dm.conveyed)
            self.note(op.name, op.features.direction, op.describe(bindings), task,
                      frozenset(self.dm.conveyed), self.dm.local_focus,
                      bindings.get("trigger"))
            op.acts(self, task, bindings)
            if len(self.dm.conveyed) <= before:
                raise PlanningError(f"operator {op.name} made no progress on task {task}",
                                    frozenset(residual))
        self.dm.close_unit()
        return self.pcas[start:]


def select_operator(tree: ProofTree, dm: DiscourseModel, config: PlannerConfig, task: Task):
    """Pick the best applicable operator as ``(operator, bindings)``, or None.

    Top-down operators always beat bottom-up ones; within a direction
    compulsory > specific > general, then registry order.
    """
    from .operators import REGISTRY, applicable_bindings

    best = None
    for index, op in enumerate(REGISTRY):
        if not op.compatible(config, REGISTRY):
            continue
        bindings = applicable_bindings(op, tree, dm, config, task)
        if bindings is None:
            continue
        key = (op.features.rank, index)
        if best is None or key < best[0]:
            best = (key, op, bindings)
    return None if best is None else (best[1], best[2])


def present(tree: ProofTree, dm: DiscourseModel, config: PlannerConfig, task: str | Task) -> list[PCA]:
    """Run Present on ``task`` against an existing discourse model."""
    run = PlanningRun(tree, config, dm)
    return run.present(task if isinstance(task, Task) else Task(task))


def plan_proof(tree: ProofTree, config: PlannerConfig | None = None) -> PlanResult:
    """Plan the entire proof and return the PCA sequence with its discourse state."""
    run = PlanningRun(tree, config or PlannerConfig())
    run.present(Task(tree.root, whole=True))
    return PlanResult(run.pcas, run.dm, run.trace)
