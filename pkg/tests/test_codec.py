import pytest
from hypothesis import given

from gnnlog import zoo
from gnnlog.codec import SignatureError, canonical_transform, decode, encode, is_regular
from gnnlog.gnn import ColoredGraph
from gnnlog.logic import Constant, Dataset, Signature, fact
from strategies import datasets, monotonic_gnns

SIG = Signature(("c",), 1)


@given(datasets())
def test_decode_inverts_encode(d):
    sig = Signature(("c", "d"), 2)
    d = Dataset(frozenset(f for f in d if sig.admits(f)))
    g = encode(sig, d)
    assert is_regular(g)
    assert decode(sig, g) == d


def test_encode_rejects_foreign_facts():
    with pytest.raises(SignatureError):
        encode(SIG, Dataset.of(fact("U2", "a")))


def test_decode_rejects_non_boolean():
    g = ColoredGraph(("a",), {"c": set()}, {"a": (2,)})
    with pytest.raises(ValueError):
        decode(SIG, g)


def test_isolated_zero_vertex_not_regular():
    a, b = Constant("a"), Constant("b")
    g = ColoredGraph((a, b), {"c": set()}, {a: (1,), b: (0,)})
    assert not is_regular(g)
    assert decode(SIG, g) == Dataset.of(fact("U1", "a"))


@given(monotonic_gnns(), datasets(max_constants=3))
def test_transform_keeps_binary_facts(g, d):
    d = Dataset(frozenset(f for f in d if g.signature.admits(f)))
    assert canonical_transform(g, d).binary() == d.binary()


def test_g1_trace_example():
    d = Dataset.of(fact("E_c", "a", "b"), fact("U1", "b"))
    assert canonical_transform(zoo.g1(), d) == d | Dataset.of(fact("U1", "a"))
