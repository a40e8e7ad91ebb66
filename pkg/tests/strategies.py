"""Hypothesis strategies shared by the property tests."""
import random

from hypothesis import strategies as st

from gnnlog import zoo
from gnnlog.datalog import Rule
from gnnlog.logic import Atom, Constant, Dataset, Inequality, Signature, Variable
from gnnlog.treelike import Group, TreeFormula

signatures = st.builds(
    Signature,
    st.sampled_from([("c",), ("c", "d")]),
    st.integers(1, 2),
)


@st.composite
def datasets(draw, sig=None, max_constants=3):
    sig = sig or draw(signatures)
    n = draw(st.integers(0, max_constants))
    consts = [Constant(f"a{k}") for k in range(1, n + 1)]
    universe = [Atom(sig.unary(i), (a,)) for a in consts for i in range(1, sig.delta + 1)]
    universe += [Atom(sig.edge(c), (a, b)) for c in sig.colours for a in consts for b in consts]
    if not universe:
        return Dataset(frozenset())
    chosen = draw(st.lists(st.sampled_from(universe), max_size=len(universe)))
    return Dataset(frozenset(chosen))


VARS = [Variable(v) for v in ("x", "y", "z", "w")]


@st.composite
def rules(draw, sig=None, max_body=4):
    """Arbitrary (possibly unsafe) constant-free rules over the signature."""
    sig = sig or draw(signatures)
    nv = draw(st.integers(1, 4))
    vs = VARS[:nv]
    v = st.sampled_from(vs)
    unary = st.builds(lambda i, a: Atom(sig.unary(i), (a,)), st.integers(1, sig.delta), v)
    binary = st.builds(lambda c, a, b: Atom(sig.edge(c), (a, b)), st.sampled_from(sig.colours), v, v)
    neq = st.builds(Inequality, v, v)
    body = draw(st.lists(st.one_of(unary, binary, neq), max_size=max_body))
    head = draw(st.one_of(unary, binary))
    return Rule(tuple(body), head)


def tree_formulas(sig: Signature, depth: int = 2, inequalities: bool = True, width: int = 3, groups: int = 2):
    unaries = st.frozensets(st.integers(1, sig.delta))
    leaf = st.builds(TreeFormula, unaries)
    if depth == 0:
        return leaf
    child = tree_formulas(sig, depth - 1, inequalities, width, groups)
    size = width if inequalities else 1
    group = st.builds(Group, st.sampled_from(sig.colours), st.lists(child, min_size=1, max_size=size))
    return st.one_of(leaf, st.builds(TreeFormula, unaries, st.lists(group, max_size=groups)))


@st.composite
def monotonic_gnns(draw, delta=None, L=None, aggs=(1, 2, float("inf"))):
    seed = draw(st.integers(0, 10 ** 6))
    rng = random.Random(seed)
    return zoo.random_gnn(
        rng,
        delta=delta or draw(st.integers(1, 2)),
        L=L or draw(st.integers(1, 2)),
        colours=draw(st.sampled_from([("c",), ("c", "d")])),
        aggs=aggs,
    )
