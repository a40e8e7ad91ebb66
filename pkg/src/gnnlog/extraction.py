"""Capture test and extraction of an equivalent Datalog program from a GNN."""
from __future__ import annotations

from itertools import product
from typing import Iterator

from .capacity import CapacityReport, layer_capacities
from .codec import canonical_transform
from .datalog import Program, Rule, body_dataset, immediate_consequences_rule
from .gnn import Gnn, validate_monotonic_max_sum
from .logic import Atom, Constant, Dataset, Signature, apply_substitution
from .treelike import DEFAULT_BUDGET, enumerate_tree_like, tree_formula_to_rule


def _instantiations(r: Rule) -> Iterator[dict]:
    """One substitution per partition of the variables, blocks mapped to k1, k2, ...

    Every map V -> S is a bijective renaming of one of these, and T_N commutes
    with renamings, so the capture test loses nothing.
    """
    vs = sorted(r.variables(), key=str)
    consts = [Constant(f"k{n}") for n in range(1, len(vs) + 1)]

    def grow(k: int, blocks: int, acc: list):
        if k == len(vs):
            yield dict(zip(vs, (consts[b] for b in acc)))
            return
        for b in range(blocks + 1):
            acc.append(b)
            yield from grow(k + 1, max(blocks, b + 1), acc)
            acc.pop()

    yield from grow(0, 0, [])


def all_instantiations(r: Rule) -> Iterator[dict]:
    """Every map from the variables into |V| fresh constants."""
    vs = sorted(r.variables(), key=str)
    consts = [Constant(f"k{n}") for n in range(1, len(vs) + 1)]
    for combo in product(consts, repeat=len(vs)):
        yield dict(zip(vs, combo))


def _anchors(sig: Signature, t, spare: Constant) -> list:
    """Minimal fact sets that make ``t`` a term of a dataset."""
    out = [Atom(sig.unary(i), (t,)) for i in range(1, sig.delta + 1)]
    for c in sig.colours:
        e = sig.edge(c)
        out += [Atom(e, (t, t)), Atom(e, (t, spare)), Atom(e, (spare, t))]
    return [frozenset([a]) for a in out]


def captures(g: Gnn, r: Rule, _cache: dict | None = None, exhaustive: bool = False) -> bool:
    """Whether T_r(D) is contained in T_N(D) for every dataset D.

    Decided on the finitely many instantiations of the body over |V| fresh
    constants. A head variable missing from every body atom still ranges over
    all terms, so for those the instantiated body is also tried together with
    each single fact that mentions the head term. ``exhaustive`` walks every
    map into the constants instead of one map per variable partition.
    """
    if r.has_constants():
        raise ValueError(f"capture test needs a constant-free rule: {r}")
    cache = {} if _cache is None else _cache
    body_vars = set().union(*(a.variables() for a in r.atoms())) if r.atoms() else set()
    loose = sorted(r.head.variables() - body_vars, key=str)
    spare = Constant(f"k{len(r.variables()) + 1}")
    for nu in (all_instantiations(r) if exhaustive else _instantiations(r)):
        base = body_dataset(r, nu)
        head = apply_substitution(r.head, nu)
        options = [[frozenset()] + _anchors(g.signature, nu[v], spare) for v in loose]
        for extra in product(*options):
            A = Dataset(base.facts.union(*extra)) if extra else base
            if head not in immediate_consequences_rule(r, A):
                continue
            out = cache.get(A)
            if out is None:
                out = cache[A] = canonical_transform(g, A)
            if head not in out:
                return False
    return True


def extraction_parameters(g: Gnn, report: CapacityReport | None = None) -> tuple:
    """(depth, fan-out, allow_inequalities) of the candidate rule space."""
    report = report or layer_capacities(g)
    delta_n = max(g.dims)
    f = len(g.colours) * delta_n * report.C_N
    return g.L, f, report.C_N > 1


def extract_program(g: Gnn, budget: int | None = DEFAULT_BUDGET, report: CapacityReport | None = None) -> Program:
    """Every captured (L, |C|*delta_N*C_N)-tree-like rule, up to renaming.

    Inequalities are only enumerated when some layer needs more than one
    neighbour (C_N > 1); otherwise the bounded GNN only uses max.
    """
    problems = validate_monotonic_max_sum(g)
    if problems:
        raise ValueError("extraction needs a monotonic max-sum GNN: " + "; ".join(problems))
    d, f, ineq = extraction_parameters(g, report)
    cache: dict = {}
    prog = Program()
    for phi in enumerate_tree_like(g.signature, d, f, allow_inequalities=ineq, budget=budget):
        for i in range(1, g.signature.delta + 1):
            r = tree_formula_to_rule(phi, i)
            if captures(g, r, cache):
                prog.add(r)
    return prog
