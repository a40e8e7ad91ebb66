"""Canonical dataset <-> Boolean coloured graph translation."""
from __future__ import annotations

from fractions import Fraction

from .gnn import ColoredGraph, Gnn, forward, validate_monotonic_max_sum
from .logic import Atom, Dataset, Signature, terms_of


class SignatureError(ValueError):
    pass


def encode(sig: Signature, d: Dataset) -> ColoredGraph:
    for f in d.facts:
        if not sig.admits(f):
            raise SignatureError(f"fact {f} is outside the signature (colours={list(sig.colours)}, delta={sig.delta})")
    vertices = terms_of(d)
    labels = {t: [Fraction(0)] * sig.delta for t in vertices}
    edges: dict = {c: set() for c in sig.colours}
    for f in d.facts:
        if f.arity == 1:
            labels[f.args[0]][sig.unary_index(f.predicate) - 1] = Fraction(1)
        else:
            edges[sig.colour_of(f.predicate)].add(f.args)
    return ColoredGraph(
        vertices,
        {c: frozenset(es) for c, es in edges.items()},
        {t: tuple(lab) for t, lab in labels.items()},
    )


def decode(sig: Signature, g: ColoredGraph) -> Dataset:
    if not g.is_boolean:
        raise ValueError("only Boolean graphs can be decoded")
    facts = set()
    for c, es in g.edges.items():
        for u, v in es:
            facts.add(Atom(sig.edge(c), (u, v)))
    for t, lab in g.labels.items():
        for i, x in enumerate(lab, 1):
            if x == 1:
                facts.add(Atom(sig.unary(i), (t,)))
    return Dataset(frozenset(facts))


def is_regular(g: ColoredGraph) -> bool:
    if not g.is_boolean:
        return False
    touched = {x for es in g.edges.values() for e in es for x in e}
    return all(v in touched or any(x == 1 for x in g.labels[v]) for v in g.vertices)


def canonical_transform(g: Gnn, d: Dataset, require_valid: bool = True) -> Dataset:
    """T_N(d) = decode(N(encode(d)))."""
    if require_valid:
        problems = validate_monotonic_max_sum(g)
        if problems:
            raise ValueError("not a monotonic max-sum GNN: " + "; ".join(problems))
    return decode(g.signature, forward(g, encode(g.signature, d)))
