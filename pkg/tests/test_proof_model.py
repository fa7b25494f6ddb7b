import pytest
from hypothesis import given, settings

from generators import trees
from prooftext.errors import ParseError, ValidationError
from prooftext.formula import parse_term
from prooftext.proof_model import (
    HYP,
    Justification,
    ProofNode,
    ProofTree,
    format_proof,
    load_proof,
    node_key,
    parse_proof,
    sorted_ids,
)


def node(nid, formula, method=HYP, premises=(), hyps=()):
    return ProofNode(nid, parse_term(formula), Justification(method, tuple(premises)),
                     tuple(parse_term(h) for h in hyps))


def tree(*nodes, root, plan=None):
    return ProofTree({n.id: n for n in nodes}, root, tuple(plan or (root,)))


def test_node_ids_sort_numerically():
    assert sorted_ids(["[10]", "[2]", "[1]"]) == ["[1]", "[2]", "[10]"]
    assert node_key("[2]") < node_key("[10]")


@pytest.mark.parametrize("kind, build", [
    ("dangling-premise", lambda: tree(node("[1]", "(P a b)", "MP", ["[9]"]), root="[1]")),
    ("hyp-premises", lambda: tree(node("[1]", "(P a b)", HYP, ["[2]"]),
                                  node("[2]", "(S a)"), root="[1]")),
    ("missing-root", lambda: tree(node("[1]", "(S a)"), root="[7]")),
    ("cycle", lambda: tree(node("[1]", "(S a)", "MP", ["[2]"]),
                           node("[2]", "(S b)", "MP", ["[1]"]), root="[1]")),
    ("unreachable", lambda: tree(node("[1]", "(S a)"), node("[2]", "(S b)"), root="[1]")),
    ("unknown-plan-node", lambda: tree(node("[1]", "(S a)"), root="[1]", plan=["[5]", "[1]"])),
    ("root-not-planned", lambda: tree(node("[1]", "(S a)", "MP", ["[2]"]),
                                      node("[2]", "(S b)"), root="[1]", plan=["[2]"])),
])
def test_validation_errors(kind, build):
    with pytest.raises(ValidationError) as err:
        build()
    assert err.value.kind == kind


def test_solution_segment_subproofs(corpus):
    t = load_proof(corpus / "solution-segment.proof")
    assert t.subproof_nodes("[3]") == {"[3]", "[8]", "[9]", "[10]"}
    assert t.subproof_nodes("[2]") == {"[2]", "[7]", "[8]"}
    # [9] is shared; it belongs to both subproofs that use it
    assert "[9]" in t.subproof_nodes("[4]")
    assert t.subproof_nodes("[1]") == {"[1]", "[5]", "[6]"}
    assert t.subgoals("[1]") == ("[2]", "[3]", "[4]")
    assert t.consumers["[8]"] == ("[2]", "[3]")
    assert t.depends_on("[1]", "[2]") and not t.depends_on("[2]", "[1]")


def test_parse_errors_carry_line():
    with pytest.raises(ParseError) as err:
        parse_proof("node [1] formula (S a) by HYP from ()\nnode [2] formula (S\nroot [1]\n")
    assert err.value.line == 2
    with pytest.raises(ValidationError) as err:
        parse_proof("node [1] formula (S a) by HYP from ()\n"
                    "node [1] formula (S b) by HYP from ()\nroot [1]\n")
    assert err.value.kind == "duplicate-node"


def test_plan_defaults_to_root():
    t = parse_proof("node [1] formula (S a) by HYP from ()\nroot [1]\n")
    assert t.plan_order == ("[1]",)


@settings(max_examples=50, deadline=None)
@given(trees())
def test_format_parse_round_trip(t):
    back = parse_proof(format_proof(t))
    assert dict(back.nodes) == dict(t.nodes)
    assert (back.root, back.plan_order) == (t.root, t.plan_order)


def test_corpus_files_parse(corpus):
    for path in sorted(corpus.glob("*.proof")):
        t = load_proof(path)
        assert t.root in t.nodes
