"""Non-canonical encoding schemes written as fixed dataset transformations.

MGNN scheme: constants become terms f(a), co-occurring pairs become g(a,b),
joined by four edge colours c1..c4. 2-GNN scheme: ordered pairs of distinct
constants become vertices g(a,b) labelled by the pair's A-labels and whether
R(a,b) holds, with local-neighbourhood edges of a single colour.
"""
from __future__ import annotations

import re
from typing import Callable

from .codec import SignatureError, canonical_transform
from .gnn import Gnn
from .logic import Atom, Dataset, Function, Signature

MGNN_COLOURS = ("c1", "c2", "c3", "c4")
KGNN_COLOUR = "c"

_A = re.compile(r"A([1-9][0-9]*)")
_R = re.compile(r"R([1-9][0-9]*)")
_U = re.compile(r"U([1-9][0-9]*)")


def _f(a):
    return Function("f", (a,))


def _g(a, b):
    return Function("g", (a, b))


def mgnn_signature(delta: int) -> Signature:
    return Signature(MGNN_COLOURS, delta)


def _mgnn_input(eps: int, delta: int, d: Dataset) -> tuple:
    if not 0 <= eps <= delta:
        raise ValueError("need 0 <= eps <= delta")
    unary, binary = [], []
    for fa in d:
        pat = _A if fa.arity == 1 else _R
        m = pat.fullmatch(fa.predicate)
        n = int(m.group(1)) if m else None
        ok = n is not None and (n <= eps if fa.arity == 1 else eps < n <= delta)
        if not ok:
            raise SignatureError(f"fact {fa} is outside the input signature A1..A{eps}, R{eps + 1}..R{delta}")
        (unary if fa.arity == 1 else binary).append((n, fa.args))
    return unary, binary


def mgnn_encode(eps: int, delta: int, d: Dataset, extended: bool = False) -> Dataset:
    """Apply the MGNN encoding rules; ``extended`` adds the pair-materialisation rules for c1."""
    unary, binary = _mgnn_input(eps, delta, d)
    U, E = Signature.unary, Signature.edge
    out = set()
    for i, (a,) in unary:
        out.add(Atom(U(i), (_f(a),)))
    for j, (a, b) in binary:
        gab, gba, fa, fb = _g(a, b), _g(b, a), _f(a), _f(b)
        out.add(Atom(U(j), (gab,)))
        out.update(
            {
                Atom(E("c1"), (fa, gab)),
                Atom(E("c1"), (gab, fa)),
                Atom(E("c2"), (fb, gab)),
                Atom(E("c2"), (gab, fb)),
                Atom(E("c3"), (gab, gba)),
                Atom(E("c3"), (gba, gab)),
                Atom(E("c4"), (fa, fb)),
                Atom(E("c4"), (fb, fa)),
            }
        )
    if extended:
        labelled = {args[0] for _, args in unary}
        for x in labelled:
            for y in labelled:
                out.add(Atom(E("c1"), (_f(x), _g(x, y))))
                out.add(Atom(E("c1"), (_g(x, y), _f(x))))
        for _, (s, t) in binary:
            for y in labelled:
                out.add(Atom(E("c1"), (_g(s, y), _f(s))))
                out.add(Atom(E("c1"), (_g(t, y), _f(t))))
    return Dataset(frozenset(out))


def mgnn_decode(eps: int, delta: int, d: Dataset) -> Dataset:
    out = set()
    for fa in d:
        if fa.arity != 1:
            continue
        m = _U.fullmatch(fa.predicate)
        i = int(m.group(1)) if m else None
        (t,) = fa.args
        if i is None or i > delta or not isinstance(t, Function):
            continue
        if t.symbol == "f" and len(t.args) == 1 and i <= eps:
            out.add(Atom(f"A{i}", t.args))
        elif t.symbol == "g" and len(t.args) == 2 and i > eps:
            out.add(Atom(f"R{i}", t.args))
    return Dataset(frozenset(out))


def kgnn_index(delta1: int, i: int, j: int, b: int) -> int:
    """Position of U_{i,j,b} among U_1..U_{2*delta1^2}."""
    return ((i - 1) * delta1 + (j - 1)) * 2 + b + 1


def kgnn_mapping(delta1: int) -> dict:
    return {
        kgnn_index(delta1, i, j, b): (i, j, b)
        for i in range(1, delta1 + 1)
        for j in range(1, delta1 + 1)
        for b in (0, 1)
    }


def kgnn_signature(delta1: int) -> Signature:
    return Signature((KGNN_COLOUR,), 2 * delta1 * delta1)


def kgnn_encode(delta1: int, d: Dataset) -> tuple:
    """2-GNN local-neighbourhood encoding; returns (dataset, index -> (i, j, b))."""
    label: dict = {}
    R = set()
    for fa in d:
        if fa.arity == 1:
            m = _A.fullmatch(fa.predicate)
            if not m or int(m.group(1)) > delta1:
                raise SignatureError(f"fact {fa} is outside the input signature A1..A{delta1}, R")
            label.setdefault(fa.args[0], set()).add(int(m.group(1)))
        elif fa.predicate == "R":
            R.add(fa.args)
        else:
            raise SignatureError(f"fact {fa} is outside the input signature A1..A{delta1}, R")
    consts = {t for fa in d for t in fa.args}
    for t in sorted(consts, key=str):
        if len(label.get(t, ())) != 1:
            raise ValueError(f"constant {t} must carry exactly one A-label, has {sorted(label.get(t, ()))}")
    lab = {t: next(iter(s)) for t, s in label.items()}
    E = Signature.edge(KGNN_COLOUR)
    out = set()
    for x in consts:
        for y in consts:
            if x == y:
                continue
            b = 1 if (x, y) in R else 0
            out.add(Atom(Signature.unary(kgnn_index(delta1, lab[x], lab[y], b)), (_g(x, y),)))
    for y, z in R:
        if y == z:
            continue
        for x in consts:
            if x != y and x != z:
                out.add(Atom(E, (_g(x, y), _g(x, z))))
                out.add(Atom(E, (_g(y, x), _g(z, x))))
    return Dataset(frozenset(out)), kgnn_mapping(delta1)


def chain(enc: Callable[[Dataset], Dataset], g: Gnn, dec: Callable[[Dataset], Dataset], d: Dataset) -> Dataset:
    """dec(T_N(enc(d))); the encoder output must fit the GNN's signature."""
    encoded = enc(d)
    bad = [fa for fa in encoded if not g.signature.admits(fa)]
    if bad:
        raise SignatureError(f"encoder output {bad[0]} does not fit the GNN signature")
    return dec(canonical_transform(g, encoded))
