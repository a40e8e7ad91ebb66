"""Compile a program of inequality-free tree-like rules into a monotonic max GNN.

Position i of every hidden layer stands for the i-th enumerated formula tau_i
(ordered by depth, then canonical key) and is 1 at a vertex exactly when
tau_i holds there. The last layer ORs together the formulas that appear as
rule bodies for each head.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .datalog import Program, Rule
from .gnn import Activation, Aggregation, ColoredGraph, Gnn, Layer, propagate
from .codec import encode
from .logic import Dataset, Signature
from .treelike import DEFAULT_BUDGET, TreeFormula, TreeMatcher, enumerate_tree_like, rule_to_tree


class CompileError(ValueError):
    pass


def enumerate_ordered_formulas(sig: Signature, d: int, f: int, budget: int | None = DEFAULT_BUDGET) -> list:
    """tau_1..tau_n: inequality-free (d,f)-tree-like formulas by depth, then canonical key."""
    return list(enumerate_tree_like(sig, d, f, allow_inequalities=False, budget=budget))


def _rule_tree(r: Rule, sig: Signature) -> tuple:
    tree = rule_to_tree(r)
    if tree is None:
        raise CompileError(f"rule is not tree-like with a unary head U_i(x): {r}")
    i = sig.unary_index(r.head.predicate)
    if i is None:
        raise CompileError(f"head predicate {r.head.predicate} is not in the signature")
    if tree.has_inequalities():
        raise CompileError(f"rules with inequalities cannot be compiled: {r}")
    if tree.max_unary() > sig.delta or not tree.colours() <= set(sig.colours):
        raise CompileError(f"rule uses predicates outside the signature: {r}")
    return tree, i


def infer_bounds(trees) -> tuple:
    """Smallest (d, f) for which every tree is (d,f)-tree-like."""
    trees = list(trees)
    d = max((t.depth for t in trees), default=0)
    f = 0

    def walk(t: TreeFormula, level: int):
        nonlocal f
        if t.fanout:
            need = -(-t.fanout // (d - level))
            f = max(f, need)
        for g in t.groups:
            for c in g.children:
                walk(c, level + 1)

    for t in trees:
        walk(t, 0)
    return d, f


@dataclass(frozen=True)
class CompiledGnn(Gnn):
    formulas: tuple = ()
    depth: int = 0
    fanout: int = 0


def compile_program(
    sig: Signature, p: Program, d: int | None = None, f: int | None = None, budget: int | None = DEFAULT_BUDGET
) -> CompiledGnn:
    """Build N_Π with L = d+2 layers, ReLU, threshold 1 and max aggregation."""
    parsed = [_rule_tree(r, sig) for r in p]
    if d is None or f is None:
        d0, f0 = infer_bounds(t for t, _ in parsed)
        d = d0 if d is None else d
        f = f0 if f is None else f
    for (tree, _), r in zip(parsed, p):
        if not tree.is_tree_like(d, f):
            raise CompileError(f"rule is not ({d},{f})-tree-like: {r}")

    taus = enumerate_ordered_formulas(sig, d, f, budget)
    index = {t: n for n, t in enumerate(taus)}
    L = d + 2
    dims = [sig.delta] + [sum(1 for t in taus if t.depth <= ell - 1) for ell in range(1, L)] + [sig.delta]
    zero, one = Fraction(0), Fraction(1)
    layers = []
    for ell in range(1, L + 1):
        rows, cols = dims[ell], dims[ell - 1]
        A = [[zero] * cols for _ in range(rows)]
        B = {c: [[zero] * cols for _ in range(rows)] for c in sig.colours}
        bias = [zero] * rows
        if ell == 1:
            for i in range(rows):
                for j in taus[i].unaries:
                    A[i][j - 1] = one
        elif ell < L:
            for i in range(rows):
                if i < cols:
                    A[i][i] = one
                    continue
                tau = taus[i]
                A[i][index[tau.unary_part()]] = one
                for colour, child in tau.edges():
                    B[colour][i][index[child]] = one
        else:
            for tree, head in parsed:
                A[head - 1][index[tree]] = one
        if ell == 1 or ell < L:
            for i in range(rows):
                if ell == 1 or i >= cols:
                    bias[i] = one - sum(A[i]) - sum(sum(B[c][i]) for c in sig.colours)
        layers.append(Layer(tuple(map(tuple, A)), {c: tuple(map(tuple, m)) for c, m in B.items()}, tuple(bias), Aggregation(1)))
    return CompiledGnn(sig, tuple(layers), Activation.relu(), Fraction(1), formulas=tuple(taus), depth=d, fanout=f)


def check_internal_semantics(g: CompiledGnn, d: Dataset) -> bool:
    """Hidden feature i at a vertex is 1 iff tau_i holds there, else 0."""
    graph: ColoredGraph = encode(g.signature, d)
    lams = propagate(g, graph)
    matcher = TreeMatcher(d)
    for ell in range(1, g.L):
        for t in graph.vertices:
            vec = lams[ell][t]
            for i in range(g.dims[ell]):
                want = 1 if matcher.holds(g.formulas[i], t) else 0
                if vec[i] != want:
                    return False
    return True
