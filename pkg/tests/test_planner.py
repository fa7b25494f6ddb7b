import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from generators import random_tree
from prooftext.errors import PlanningError
from prooftext.pca import PCAKind
from prooftext.planner import (
    REGISTRY,
    PlannerConfig,
    enforce_readiness,
    op_order_minimal_load,
    plan_proof,
)
from prooftext.proof_model import load_proof, parse_proof


def ops(result):
    return [r.op for r in result.trace]


def stable_sort_oracle(sizes):
    """Brute force: the permutation sorted by size that keeps ties in input order."""
    idx = range(len(sizes))
    for perm in itertools.permutations(idx):
        if all(sizes[a] < sizes[b] or (sizes[a] == sizes[b] and a < b)
               for a, b in zip(perm, perm[1:])):
            return list(perm)


def sample_goals(seed):
    t = random_tree(seed)
    rng = random.Random(seed)
    pool = sorted(t.nodes)
    return t, rng.sample(pool, rng.randint(1, min(5, len(pool))))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_minimal_load_matches_oracle(seed):
    t, goals = sample_goals(seed)
    sizes = [t.subproof_size(g) for g in goals]
    expected = [goals[i] for i in stable_sort_oracle(sizes)]
    assert op_order_minimal_load(t, goals) == expected


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_readiness_never_puts_dependent_first(seed):
    t, goals = sample_goals(seed)
    rng = random.Random(seed + 1)
    rng.shuffle(goals)
    out = enforce_readiness(t, goals)
    assert sorted(out) == sorted(goals)
    for i, g in enumerate(out):
        assert not any(t.depends_on(g, h) for h in out[i + 1:])


def test_readiness_keeps_independent_order(corpus):
    t = load_proof(corpus / "solution-segment.proof")
    assert enforce_readiness(t, ["[3]", "[1]", "[2]", "[4]"]) == ["[3]", "[2]", "[4]", "[1]"]


def test_solution_segment_ordering_and_units(corpus):
    t = load_proof(corpus / "solution-segment.proof")
    res = plan_proof(t)
    assert ops(res)[:3] == ["Hypothesis-Intro", "Order-Focus", "Split"]
    assert res.trace[2].nodes == ("[2]", "[3]", "[4]", "[1]")
    tasks = [u.task for u in res.dm.units.values()]
    assert tasks == ["[1]", "[2]", "[3]", "[4]", "[1]"]


def test_golden_operator_sequence(corpus):
    res = plan_proof(load_proof(corpus / "group-unit.proof"))
    assert ops(res)[:4] == ["Hypothesis-Intro", "Order-Time", "Split", "Choice-Witness"]
    kinds = [p.kind for p in res.pcas]
    assert kinds[0] is PCAKind.ASSUME and kinds[-1] is PCAKind.CLOSE_CHOICE
    assert kinds.count(PCAKind.CHOOSE_WITNESS) == 1
    assert len(res.pcas) == 15


def test_explicit_style_case_markers(corpus):
    t = load_proof(corpus / "cases.proof")
    res = plan_proof(t, PlannerConfig(style="explicit"))
    kinds = [p.kind for p in res.pcas]
    # outer split announces its disjunction first; inner one already has it
    assert kinds[1] is PCAKind.ANNOUNCE_GOAL
    assert PCAKind.BEGIN_CASES in kinds
    assert "Case-Implicit" not in ops(res)


def test_case_acts_order(corpus):
    res = plan_proof(load_proof(corpus / "cases.proof"))
    kinds = [p.kind.value for p in res.pcas]
    assert kinds == ["Assume", "Derive", "Case-First", "Derive", "Case-First", "Derive",
                     "Case-Next", "Derive", "End-Cases", "Derive", "Case-Next", "Derive",
                     "End-Cases"]
    triggers = [r.trigger for r in res.trace if r.op == "Case-Implicit"]
    assert triggers == ["task", "local-focus"]


def test_simplify_and_detailed(corpus):
    t = load_proof(corpus / "chain.proof")
    res = plan_proof(t)
    assert "Simplify-Bottom-Up" in ops(res)
    simplified = [p for p in res.pcas if p.intermediate_results]
    assert len(simplified) == 1 and simplified[0].method is None
    assert {"[4]", "[8]"} <= res.dm.abstracted
    detailed = plan_proof(t, PlannerConfig(abstraction="detailed"))
    assert "Simplify-Bottom-Up" not in ops(detailed)
    assert len(detailed.pcas) == len(res.pcas) + 2


def test_single_hypothesis(corpus):
    res = plan_proof(load_proof(corpus / "single.proof"))
    assert [p.kind for p in res.pcas] == [PCAKind.ASSUME]
    assert all(not u.is_open for u in res.dm.units.values())


def test_unreachable_case_branch_is_a_planning_error():
    # the disjunction is an assumption that never becomes the focus, and the
    # case step is not a planned subproof, so neither trigger can fire
    text = """
node [1] formula (and Q A) hyps ((or F G) A) by And-I from ([2] [6])
node [2] formula Q hyps ((or F G) A) by CASE from ([3] [4] [5])
node [3] formula (or F G) by HYP from ()
node [4] formula Q hyps (F) by MP from ([7])
node [5] formula Q hyps (G) by MP from ([8])
node [6] formula A by HYP from ()
node [7] formula F by HYP from ()
node [8] formula G by HYP from ()
root [1]
"""
    with pytest.raises(PlanningError) as err:
        plan_proof(parse_proof(text))
    assert "[2]" in err.value.residual


def test_registry_features():
    names = [op.name for op in REGISTRY]
    assert names.index("Case-Implicit") < names.index("Derive-Bottom-Up")
    assert {op.features.direction for op in REGISTRY} == {"top-down", "bottom-up"}
    with pytest.raises(ValueError):
        PlannerConfig(style="florid")
