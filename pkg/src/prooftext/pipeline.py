"""End-to-end run: plan, annotate, realize."""

from __future__ import annotations

from dataclasses import dataclass

from .discourse import DiscourseModel
from .formula import Lexicon, RenderMode, default_lexicon
from .microplanner import SalienceTable, annotate, default_salience
from .pca import PCA
from .planner import PlannerConfig, TraceRecord, plan_proof
from .proof_model import ProofTree
from .realizer import realize_document


@dataclass
class Generation:
    pcas: list[PCA]
    annotated: list[PCA]
    dm: DiscourseModel
    trace: list[TraceRecord]
    text: str


def paragraph_labels(dm: DiscourseModel) -> list[str]:
    """Label each emitted PCA with its depth-1 unit (its top-level step)."""
    labels = []
    for entry in dm.history:
        uid = entry.unit
        while dm.depth(uid) > 1:
            uid = dm.units[uid].parent
        labels.append(uid)
    return labels


def generate(tree: ProofTree, lexicon: Lexicon | None = None,
             salience: SalienceTable | None = None,
             config: PlannerConfig | None = None,
             mode: RenderMode | str = RenderMode.AUTO) -> Generation:
    lexicon = lexicon or default_lexicon()
    salience = salience or default_salience()
    salience.check_total(n.method for n in tree.nodes.values() if not n.is_hypothesis)
    result = plan_proof(tree, config or PlannerConfig())
    annotated = annotate(result.pcas, result.dm, salience)
    text = realize_document(annotated, lexicon, tree.theorem,
                            paragraph_labels(result.dm), mode)
    return Generation(result.pcas, annotated, result.dm, result.trace, text)
