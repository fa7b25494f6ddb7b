"""Generate natural-language text from natural-deduction style proofs."""

from .discourse import DiscourseModel, select_next_node
from .errors import (
    AnnotationError,
    DiscourseStateError,
    LexiconError,
    ParseError,
    PCAError,
    PlanningError,
    ProofTextError,
    RealizationError,
    SalienceError,
    ValidationError,
)
from .formula import Lexicon, RenderMode, Term, default_lexicon, load_lexicon, parse_term, render_term
from .microplanner import SalienceTable, annotate, default_salience, load_salience
from .pca import PCA, PCAKind, Ref, to_sexpr
from .pipeline import Generation, generate
from .planner import PlannerConfig, plan_proof
from .proof_model import ProofNode, ProofTree, load_proof, parse_proof
from .realizer import realize_document, realize_pca

__all__ = [name for name in dir() if not name.startswith("_")]
