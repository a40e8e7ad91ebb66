import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gnnlog import zoo
from gnnlog.capacity import layer_capacities
from gnnlog.datalog import Program, Rule
from gnnlog.extraction import captures, extract_program, extraction_parameters
from gnnlog.logic import Atom, Constant, Variable, apply_substitution
from gnnlog.syntax import parse_program
from gnnlog.treelike import formula_count_bound, tree_formula_to_rule
from gnnlog.verify import check_equivalence
from strategies import monotonic_gnns, tree_formulas


def rule(text):
    (r,) = parse_program(text)
    return r


def test_g1_program_members():
    p = extract_program(zoo.g1())
    assert rule("U1(?x) :- U1(?x).") in p
    assert rule("U1(?x) :- E_c(?x,?y), U1(?y).") in p
    assert rule("U1(?x) :- E_c(?x,?y).") not in p
    assert rule("U1(?x) :- .") not in p


def test_g2_needs_two_distinct_neighbours():
    p = extract_program(zoo.g2())
    assert rule("U1(?x) :- E_c(?x,?y1), U1(?y1), E_c(?x,?y2), U1(?y2), ?y1 != ?y2.") in p
    assert rule("U1(?x) :- U1(?x), E_c(?x,?y), U1(?y).") in p
    assert rule("U1(?x) :- E_c(?x,?y), U1(?y).") not in p


def test_top_rule_needs_a_term():
    assert not captures(zoo.g1(), rule("U1(?x) :- ."))
    z = zoo.zero_gnn(zoo.UNARY_SIG, 1, bias=(1,))
    assert captures(z, rule("U1(?x) :- ."))


def test_capture_rejects_constants():
    with pytest.raises(ValueError):
        captures(zoo.g1(), Rule((), Atom("U1", (Constant("a"),))))


def test_parameters():
    assert extraction_parameters(zoo.g1()) == (1, 1, False)
    assert extraction_parameters(zoo.g2()) == (1, 2, True)


def test_extraction_rejects_invalid_gnn():
    with pytest.raises(ValueError, match="negative matrix element"):
        extract_program(zoo.negative_gnn())


@given(tree_formulas(zoo.UNARY_SIG, depth=1, width=2).filter(lambda t: t.size <= 5), st.permutations(["p", "q", "r", "s", "t", "u", "v"]))
def test_capture_invariant_under_renaming(phi, names):
    r = tree_formula_to_rule(phi, 1)
    vs = sorted(r.variables(), key=str)
    nu = {v: Variable(n) for v, n in zip(vs, names)}
    r2 = Rule(tuple(apply_substitution(b, nu) for b in r.body), apply_substitution(r.head, nu))
    for g in (zoo.g1(), zoo.g2()):
        assert captures(g, r) == captures(g, r2)


@settings(max_examples=20)
@given(tree_formulas(zoo.UNARY_SIG, depth=2, width=2, groups=1).filter(lambda t: t.size <= 5))
def test_partition_walk_agrees_with_all_maps(phi):
    r = tree_formula_to_rule(phi, 1)
    for g in (zoo.g1(), zoo.g2()):
        assert captures(g, r) == captures(g, r, exhaustive=True)


@settings(max_examples=12)
@given(monotonic_gnns(delta=1, L=1))
def test_extracted_program_is_equivalent(g):
    d, f, _ = extraction_parameters(g)
    assume(formula_count_bound(g.signature, d, f) <= 4096)
    p = extract_program(g)
    assert check_equivalence(g, p, 2, random_trials=30, seed=1, random_constants=4).ok
