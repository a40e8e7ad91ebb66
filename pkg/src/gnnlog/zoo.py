"""Small reference GNNs used by tests, scripts and the CLI examples."""
from __future__ import annotations

import random
from fractions import Fraction

from .gnn import INF, Activation, Aggregation, Gnn, Layer
from .logic import Signature

UNARY_SIG = Signature(("c",), 1)


def _zeros(r: int, c: int) -> tuple:
    return tuple(tuple(Fraction(0) for _ in range(c)) for _ in range(r))


def g1() -> Gnn:
    """delta=1, one colour, one layer: relu(x + sum of neighbours), threshold 1."""
    layer = Layer(((1,),), {"c": ((1,),)}, (0,), Aggregation(INF))
    return Gnn(UNARY_SIG, (layer,), Activation.relu(), Fraction(1))


def g2() -> Gnn:
    """g1 with threshold 2: a vertex needs two labelled neighbours or itself plus one."""
    layer = Layer(((1,),), {"c": ((1,),)}, (0,), Aggregation(INF))
    return Gnn(UNARY_SIG, (layer,), Activation.relu(), Fraction(2))


def zero_gnn(sig: Signature, L: int = 1, bias=None, hidden: int | None = None) -> Gnn:
    """All matrices zero; the last layer's bias decides which heads always fire."""
    dims = [sig.delta] + [hidden or sig.delta] * (L - 1) + [sig.delta]
    layers = []
    for ell in range(1, L + 1):
        r, c = dims[ell], dims[ell - 1]
        b = tuple(Fraction(x) for x in bias) if (bias is not None and ell == L) else (Fraction(0),) * r
        layers.append(Layer(_zeros(r, c), {col: _zeros(r, c) for col in sig.colours}, b, Aggregation(INF)))
    return Gnn(sig, tuple(layers), Activation.relu(), Fraction(1))


def identity_gnn(sig: Signature) -> Gnn:
    n = sig.delta
    A = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    layer = Layer(A, {c: _zeros(n, n) for c in sig.colours}, (Fraction(0),) * n, Aggregation(1))
    return Gnn(sig, (layer,), Activation.relu(), Fraction(1))


def random_gnn(
    rng: random.Random,
    delta: int = 2,
    L: int = 2,
    colours: tuple = ("c",),
    max_weight: int = 2,
    hidden: int = 2,
    aggs: tuple = (1, 2, INF),
    sparsity: float = 0.5,
) -> Gnn:
    """Random monotonic max-sum GNN with small nonnegative integer weights and ReLU."""
    sig = Signature(colours, delta)
    dims = [delta] + [rng.randint(1, hidden) for _ in range(L - 1)] + [delta]

    def mat(r, c):
        return tuple(
            tuple(Fraction(rng.randint(1, max_weight)) if rng.random() < sparsity else Fraction(0) for _ in range(c))
            for _ in range(r)
        )

    layers = []
    for ell in range(1, L + 1):
        r, c = dims[ell], dims[ell - 1]
        bias = tuple(Fraction(rng.randint(-2, 1)) for _ in range(r))
        layers.append(Layer(mat(r, c), {col: mat(r, c) for col in colours}, bias, Aggregation(rng.choice(aggs))))
    threshold = Fraction(rng.randint(1, 4), rng.choice((1, 2)))
    return Gnn(sig, tuple(layers), Activation.relu(), threshold)


def negative_gnn() -> Gnn:
    """Invalid on purpose: a vertex loses its label once it has a neighbour."""
    layer = Layer(((1,),), {"c": ((-1,),)}, (1,), Aggregation(INF))
    return Gnn(UNARY_SIG, (layer,), Activation.relu(), Fraction(1))
