import random

from hypothesis import given, settings

from gnnlog import zoo
from gnnlog.capacity import bound_aggregation, layer_capacities
from gnnlog.codec import canonical_transform
from gnnlog.logic import Signature
from gnnlog.verify import enumerate_datasets, random_dataset
from strategies import monotonic_gnns


def test_fixture_capacities():
    assert layer_capacities(zoo.g1()).capacities == [1]
    assert layer_capacities(zoo.g2()).capacities == [2]


def test_trace_fields():
    lc = layer_capacities(zoo.g2()).layers[0]
    assert (lc.alpha, lc.Z, lc.w, lc.x, lc.b) == (2, 2, 1, 1, 0)


def test_zero_gnn_early_return():
    rep = layer_capacities(zoo.zero_gnn(Signature(("c",), 2), 3, bias=(1, 0)))
    assert rep.capacities == [0, 0, 0]
    assert rep.early_return_layer == 3
    assert rep.C_N == 0


def test_capacity_never_exceeds_k():
    g = zoo.g1().with_aggregations([1])
    assert layer_capacities(g).capacities == [1]


@settings(max_examples=30)
@given(monotonic_gnns())
def test_bounded_gnn_is_equivalent(g):
    gb = bound_aggregation(g)
    rng = random.Random(0)
    for d in enumerate_datasets(g.signature, 1):
        assert canonical_transform(g, d) == canonical_transform(gb, d)
    for _ in range(40):
        d = random_dataset(rng, g.signature, rng.randint(1, 5))
        assert canonical_transform(g, d) == canonical_transform(gb, d)
