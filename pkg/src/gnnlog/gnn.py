"""Exact-rational GNNs: maxsum aggregation, piecewise-linear activations, propagation."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .logic import Signature, Term

INF = math.inf


def Q(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction; floats are rejected."""
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use a Fraction or a 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class Aggregation:
    """maxsum_k; ``k = INF`` is plain summation and ``k = 1`` is max."""

    k: int | float = INF

    def __post_init__(self):
        if self.k != INF and (not isinstance(self.k, int) or self.k < 0):
            raise ValueError(f"aggregation k must be a natural number or INF, got {self.k!r}")

    @property
    def is_sum(self) -> bool:
        return self.k == INF

    def __str__(self) -> str:
        return "sum" if self.is_sum else f"maxsum_{self.k}"


def maxsum(k: int | float | Aggregation, values: Iterable) -> Fraction:
    """Sum of the min(k, |values|) largest elements, counting multiplicity."""
    if isinstance(k, Aggregation):
        k = k.k
    vals = sorted(values, reverse=True)
    n = len(vals) if k == INF else min(int(k), len(vals))
    return sum(vals[:n], Fraction(0))


def maxsum_vectors(k, vectors: Sequence[Sequence], dim: int) -> list:
    """Component-wise maxsum over a multiset of vectors."""
    return [maxsum(k, [v[j] for v in vectors]) for j in range(dim)]


@dataclass(frozen=True)
class Activation:
    """Continuous piecewise-linear function.

    Constant ``breakpoints[0].y`` to the left of the first breakpoint, linear
    between breakpoints, slope ``final_slope`` after the last one.
    """

    breakpoints: tuple
    final_slope: Fraction = Fraction(1)

    def __post_init__(self):
        pts = tuple(sorted((Q(x), Q(y)) for x, y in self.breakpoints))
        if not pts:
            raise ValueError("activation needs at least one breakpoint")
        if len({x for x, _ in pts}) != len(pts):
            raise ValueError("duplicate breakpoint abscissa")
        object.__setattr__(self, "breakpoints", pts)
        object.__setattr__(self, "final_slope", Q(self.final_slope))

    @classmethod
    def relu(cls) -> Activation:
        return cls(((0, 0),), Fraction(1))

    @property
    def is_relu(self) -> bool:
        return self.breakpoints == ((0, 0),) and self.final_slope == 1

    def __call__(self, x) -> Fraction:
        pts = self.breakpoints
        if x <= pts[0][0]:
            return pts[0][1]
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        xl, yl = pts[-1]
        return yl + self.final_slope * (x - xl)

    def violations(self) -> list[str]:
        out = []
        ys = [y for _, y in self.breakpoints]
        if any(b < a for a, b in zip(ys, ys[1:])) or self.final_slope < 0:
            out.append("activation not monotonically increasing")
        if self.final_slope <= 0:
            out.append("activation not unbounded")
        if min(ys) < 0:
            out.append("activation range not within the nonnegative rationals")
        elif ys[0] != 0:
            out.append("activation never reaches 0")
        return out

    def least_preimage_geq(self, alpha) -> Fraction | None:
        """Least x with act(x) >= alpha; ``None`` when the left tail already satisfies it."""
        pts = self.breakpoints
        if pts[0][1] >= alpha:
            return None
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if y1 >= alpha:
                return x0 + (alpha - y0) * (x1 - x0) / (y1 - y0)
        xl, yl = pts[-1]
        if self.final_slope <= 0:
            raise ValueError("activation is bounded; no preimage")
        return xl + (alpha - yl) / self.final_slope


def least_nat_activation_geq(act: Activation, alpha) -> int:
    """Least n in {0, 1, 2, ...} with act(n) >= alpha."""
    x = act.least_preimage_geq(Q(alpha))
    if x is None:
        return 0
    return max(0, math.ceil(x))


Matrix = tuple  # tuple of row tuples of Fractions


def _matrix(rows, n_rows: int, n_cols: int, what: str) -> tuple:
    m = tuple(tuple(Q(v) for v in row) for row in rows)
    if len(m) != n_rows or any(len(r) != n_cols for r in m):
        raise ValueError(f"dimension mismatch in {what}: expected {n_rows}x{n_cols}")
    return m


@dataclass(frozen=True)
class Layer:
    A: tuple
    B: Mapping
    bias: tuple
    agg: Aggregation = field(default_factory=Aggregation)

    @property
    def out_dim(self) -> int:
        return len(self.bias)

    @property
    def in_dim(self) -> int:
        return len(self.A[0]) if self.A else 0

    def weights(self) -> Iterable[Fraction]:
        for row in self.A:
            yield from row
        for m in self.B.values():
            for row in m:
                yield from row


@dataclass(frozen=True)
class Gnn:
    signature: Signature
    layers: tuple
    activation: Activation
    threshold: Fraction

    def __post_init__(self):
        object.__setattr__(self, "threshold", Q(self.threshold))
        if not self.layers:
            raise ValueError("a GNN needs at least one layer")
        prev = self.signature.delta
        fixed = []
        for n, layer in enumerate(self.layers, 1):
            out = len(layer.bias)
            A = _matrix(layer.A, out, prev, f"A^{n}")
            if set(layer.B) != set(self.signature.colours):
                raise ValueError(f"layer {n}: B matrices must be given for exactly the colours {self.signature.colours}")
            B = {c: _matrix(layer.B[c], out, prev, f"B^{n}_{c}") for c in self.signature.colours}
            fixed.append(Layer(A, B, tuple(Q(b) for b in layer.bias), layer.agg))
            prev = out
        if prev != self.signature.delta:
            raise ValueError(f"dimension mismatch: last layer has {prev} outputs, signature has delta={self.signature.delta}")
        object.__setattr__(self, "layers", tuple(fixed))

    @property
    def L(self) -> int:
        return len(self.layers)

    @property
    def dims(self) -> tuple:
        return (self.signature.delta,) + tuple(l.out_dim for l in self.layers)

    @property
    def colours(self) -> tuple:
        return self.signature.colours

    def cls(self, v) -> int:
        return 1 if v >= self.threshold else 0

    def layer(self, ell: int) -> Layer:
        """1-based layer access."""
        return self.layers[ell - 1]

    def with_aggregations(self, ks: Sequence) -> Gnn:
        layers = tuple(Layer(l.A, l.B, l.bias, Aggregation(k)) for l, k in zip(self.layers, ks))
        return Gnn(self.signature, layers, self.activation, self.threshold)

    @property
    def is_max(self) -> bool:
        return all(l.agg.k == 1 for l in self.layers)


def validate_monotonic_max_sum(g: Gnn) -> list[str]:
    """Violations of the monotonic max-sum conditions; empty when the GNN qualifies."""
    out = []
    for n, layer in enumerate(g.layers, 1):
        if any(w < 0 for w in layer.weights()):
            out.append(f"negative matrix element in layer {n}")
        if not isinstance(layer.agg, Aggregation):
            out.append(f"layer {n} does not use maxsum aggregation")
    out.extend(g.activation.violations())
    return out


@dataclass(frozen=True)
class ColoredGraph:
    vertices: tuple
    edges: Mapping
    labels: Mapping

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        vset = set(vs)
        if len(vset) != len(vs):
            raise ValueError("duplicate vertex")
        for c, es in self.edges.items():
            for u, v in es:
                if u not in vset or v not in vset:
                    raise ValueError(f"edge ({u},{v}) of colour {c} has an endpoint outside the vertex set")
        if set(self.labels) != vset:
            raise ValueError("every vertex needs a label")

    @property
    def is_boolean(self) -> bool:
        return all(x in (0, 1) for lab in self.labels.values() for x in lab)

    def neighbours(self) -> dict:
        out: dict = {}
        for c, es in self.edges.items():
            for u, v in es:
                out.setdefault((u, c), []).append(v)
        return out


def propagate(g: Gnn, graph: ColoredGraph) -> list[dict]:
    """The labelling sequence lambda^0 .. lambda^L."""
    d0 = g.dims[0]
    for v, lab in graph.labels.items():
        if len(lab) != d0:
            raise ValueError(f"dimension mismatch: vertex {v} label has {len(lab)} entries, expected {d0}")
    nbrs = graph.neighbours()
    lam = {v: tuple(Q(x) for x in graph.labels[v]) for v in graph.vertices}
    trace = [lam]
    for layer in g.layers:
        new = {}
        for v in graph.vertices:
            x = lam[v]
            pre = [layer.bias[i] + sum((a * xi for a, xi in zip(layer.A[i], x)), Fraction(0)) for i in range(layer.out_dim)]
            for c in g.colours:
                us = nbrs.get((v, c))
                if not us:
                    continue
                agg = maxsum_vectors(layer.agg, [lam[u] for u in us], len(x))
                Bc = layer.B[c]
                for i in range(layer.out_dim):
                    pre[i] += sum((b * a for b, a in zip(Bc[i], agg)), Fraction(0))
            new[v] = tuple(g.activation(p) for p in pre)
        lam = new
        trace.append(lam)
    return trace


def forward(g: Gnn, graph: ColoredGraph, trace: bool = False):
    """Apply ``g``: same vertices and edges, labels cls(lambda^L(v)) in {0, 1}.

    With ``trace=True`` also returns the list of intermediate labellings.
    """
    lams = propagate(g, graph)
    out = ColoredGraph(
        graph.vertices,
        graph.edges,
        {v: tuple(Fraction(g.cls(x)) for x in lams[-1][v]) for v in graph.vertices},
    )
    return (out, lams) if trace else out
