import pytest

from gnnlog import zoo
from gnnlog.datalog import Program
from gnnlog.logic import Constant, Dataset, Signature, fact
from gnnlog.syntax import parse_program
from gnnlog.verify import (
    canonical_form,
    check_equivalence,
    check_isomorphism_invariance,
    check_monotonicity,
    count_datasets,
    enumerate_datasets,
)

SIG = Signature(("c",), 1)


@pytest.mark.parametrize("n,count", [(0, 1), (1, 4), (2, 64)])
def test_dataset_counts(n, count):
    assert len(list(enumerate_datasets(SIG, n))) == count == count_datasets(SIG, n)


def test_cap_guard():
    with pytest.raises(ValueError):
        list(enumerate_datasets(SIG, 4, cap=1000))


def test_isomorphism_classes():
    # unlabelled directed graphs with loops on 2 vertices and one unary predicate
    reps = list(enumerate_datasets(SIG, 2, iso_classes=True))
    keys = {canonical_form(d, [Constant("a1"), Constant("a2")]) for d in enumerate_datasets(SIG, 2)}
    assert len(reps) == len(keys)
    assert len(reps) < 64


def test_counterexample_for_top_rule():
    rep = check_equivalence(zoo.g1(), parse_program("U1(?x) :- ."), 2)
    assert not rep.ok
    assert rep.counterexample == Dataset.of(fact("E_c", "a1", "a1"))
    assert "lambda^1" in str(rep)
    assert "not at the theory" in str(rep)


def test_verified_report():
    p = parse_program("U1(?x) :- U1(?x).\nU1(?x) :- E_c(?x,?y), U1(?y).")
    rep = check_equivalence(zoo.g1(), p, 3, random_trials=50, seed=7)
    assert rep.ok and rep.checked == 4096 + 50


def test_properties_on_fixtures():
    for g in (zoo.g1(), zoo.g2()):
        assert check_monotonicity(g, 200, seed=1).ok
        assert check_isomorphism_invariance(g, 200, seed=1).ok


def test_negative_control():
    rep = check_monotonicity(zoo.negative_gnn(), 500, seed=0, require_valid=False)
    assert not rep.ok


def test_reports_are_deterministic():
    a = check_monotonicity(zoo.negative_gnn(), 500, seed=4, require_valid=False)
    b = check_monotonicity(zoo.negative_gnn(), 500, seed=4, require_valid=False)
    assert a.counterexample == b.counterexample and a.checked == b.checked
