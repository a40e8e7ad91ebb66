"""Increasing enumeration of the feature values X_{l,i} a GNN can produce.

Each (layer, position) pair owns a lazily extended sequence backed by a
persistent best-first frontier of triples <x, Y, z>: x is the vertex's own
previous-layer vector, Y maps each colour to a multiset of neighbour vectors,
and z is the pre-activation value. Triples are popped in order of (z, x, Y);
a successor is kept only when it strictly raises z. Lower layers are consulted
through the same cache, so repeated requests never redo a search.
"""
from __future__ import annotations

import heapq
from bisect import bisect_right
from fractions import Fraction
from typing import Mapping, Sequence

from .gnn import Gnn, maxsum_vectors


class _Sentinel:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self) -> str:
        return self.name


START = _Sentinel("START")
END = _Sentinel("END")


def val(g: Gnn, ell: int, i: int, x: Sequence, Y: Mapping) -> Fraction:
    """Pre-activation value of position ``i`` (1-based) at layer ``ell``."""
    layer = g.layer(ell)
    dim = g.dims[ell - 1]
    if len(x) != dim:
        raise ValueError(f"dimension mismatch: x has {len(x)} entries, layer {ell} expects {dim}")
    row = i - 1
    z = layer.bias[row] + sum((a * xi for a, xi in zip(layer.A[row], x)), Fraction(0))
    for c, ys in Y.items():
        if not ys:
            continue
        if any(len(y) != dim for y in ys):
            raise ValueError("dimension mismatch in multiset family")
        agg = maxsum_vectors(layer.agg, ys, dim)
        z += sum((b * a for b, a in zip(layer.B[c][row], agg)), Fraction(0))
    return z


class _Sequence:
    def __init__(self, owner: "ValueEnumerator", ell: int, i: int):
        self.owner = owner
        self.ell = ell
        self.i = i
        g = owner.gnn
        self.colours = g.colours
        start = owner.start(ell)
        z0 = self._val(start, self._empty())
        self.values = [g.activation(z0)]
        self.exhausted = False
        entry = (z0, start, self._empty())
        self.frontier = [entry]
        self.seen = {entry[1:]}
        self.pops = 0
        self.last_popped = None

    def _empty(self) -> tuple:
        return tuple(() for _ in self.colours)

    def _val(self, x, Y) -> Fraction:
        return val(self.owner.gnn, self.ell, self.i, x, dict(zip(self.colours, Y)))

    def _push(self, z_old, x, Y) -> None:
        key = (x, Y)
        if key in self.seen:
            return
        z = self._val(x, Y)
        if z > z_old:
            self.seen.add(key)
            heapq.heappush(self.frontier, (z, x, Y))

    def advance(self) -> bool:
        """Pop one triple; return False once the frontier is empty."""
        if not self.frontier:
            self.exhausted = True
            return False
        z, x, Y = heapq.heappop(self.frontier)
        self.pops += 1
        self.last_popped = z
        owner = self.owner
        for x2 in owner.expand(self.ell, x):
            self._push(z, x2, Y)
        for ci in range(len(self.colours)):
            ys = Y[ci]
            for k, y in enumerate(ys):
                if k and ys[k - 1] == y:
                    continue
                for y2 in owner.expand(self.ell, y):
                    new = tuple(sorted(ys[:k] + ys[k + 1:] + (y2,)))
                    self._push(z, x, Y[:ci] + (new,) + Y[ci + 1:])
            for y2 in owner.fresh_vectors(self.ell):
                new = tuple(sorted(ys + (y2,)))
                self._push(z, x, Y[:ci] + (new,) + Y[ci + 1:])
        v = owner.gnn.activation(z)
        if v > self.values[-1]:
            self.values.append(v)
        return True


class ValueEnumerator:
    """Memoised ``next`` over one GNN; not safe for concurrent writers."""

    def __init__(self, gnn: Gnn, max_pops: int | None = None):
        self.gnn = gnn
        self.max_pops = max_pops
        self._seqs: dict = {}
        self._start: dict = {}
        self._fresh: dict = {}

    def sequence(self, ell: int, i: int) -> _Sequence:
        key = (ell, i)
        seq = self._seqs.get(key)
        if seq is None:
            if not 1 <= ell <= self.gnn.L or not 1 <= i <= self.gnn.dims[ell]:
                raise ValueError(f"no position {i} at layer {ell}")
            seq = self._seqs[key] = _Sequence(self, ell, i)
        return seq

    def next(self, ell: int, i: int, alpha=START):
        """Least element of X_{ell,i} (START) or least element above ``alpha``; END if none."""
        if ell == 0:
            if not 1 <= i <= self.gnn.dims[0]:
                raise ValueError(f"no position {i} at layer 0")
            if alpha is START or alpha < 0:
                return Fraction(0)
            if alpha < 1:
                return Fraction(1)
            return END
        seq = self.sequence(ell, i)
        if alpha is START:
            return seq.values[0]
        while seq.values[-1] <= alpha and not seq.exhausted:
            if self.max_pops is not None and seq.pops >= self.max_pops:
                raise RuntimeError(f"enumeration of X_{ell},{i} exceeded {self.max_pops} frontier pops")
            seq.advance()
        k = bisect_right(seq.values, alpha)
        return seq.values[k] if k < len(seq.values) else END

    def start(self, ell: int) -> tuple:
        """Vector of least values of layer ell-1."""
        s = self._start.get(ell)
        if s is None:
            s = self._start[ell] = tuple(self.next(ell - 1, j) for j in range(1, self.gnn.dims[ell - 1] + 1))
        return s

    def expand(self, ell: int, v: tuple) -> list:
        out = []
        for j, vj in enumerate(v):
            nxt = self.next(ell - 1, j + 1, vj)
            if nxt is not END:
                out.append(v[:j] + (nxt,) + v[j + 1:])
        return out

    def fresh_vectors(self, ell: int) -> list:
        """Vectors inserted as a new neighbour: Start with one position raised to its first positive value.

        Positions whose start value is already positive contribute Start itself.
        """
        cached = self._fresh.get(ell)
        if cached is None:
            s = self.start(ell)
            out = []
            for j, sj in enumerate(s):
                pos = sj if sj > 0 else self.next(ell - 1, j + 1, Fraction(0))
                if pos is END:
                    continue
                vec = s[:j] + (pos,) + s[j + 1:]
                if vec not in out:
                    out.append(vec)
            cached = self._fresh[ell] = out
        return cached

    def prefix(self, ell: int, i: int, up_to) -> list:
        """All elements of X_{ell,i} that are <= ``up_to``, in increasing order."""
        out = []
        v = self.next(ell, i, START)
        while v is not END and v <= up_to:
            out.append(v)
            v = self.next(ell, i, v)
        return out

    def take(self, ell: int, i: int, n: int) -> list:
        out = []
        v = self.next(ell, i, START)
        while v is not END and len(out) < n:
            out.append(v)
            v = self.next(ell, i, v)
        return out


def next_value(g: Gnn, ell: int, i: int, alpha=START, enumerator: ValueEnumerator | None = None):
    return (enumerator or ValueEnumerator(g)).next(ell, i, alpha)


def least_positive_value(g: Gnn, ell: int, enumerator: ValueEnumerator | None = None):
    """Least nonzero element of the union of X_{ell-1,i}; ``None`` if every set is {0}."""
    en = enumerator or ValueEnumerator(g)
    best = None
    for i in range(1, g.dims[ell - 1] + 1):
        v = en.next(ell - 1, i, Fraction(0))
        if v is not END and (best is None or v < best):
            best = v
    return best
