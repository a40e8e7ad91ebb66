"""Rules, programs and single-round immediate consequence operators.

Rules need not be safe: a variable that occurs only in the head (or only in
inequalities) ranges over every term of the dataset.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Iterator

from .logic import Atom, Dataset, Inequality, Literal, Term, Variable, apply_substitution, terms_of


@dataclass(frozen=True)
class Rule:
    body: tuple
    head: Atom

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))
        for lit in self.body:
            if not isinstance(lit, (Atom, Inequality)):
                raise TypeError(f"not a literal: {lit!r}")

    def variables(self) -> set[Variable]:
        vs = self.head.variables()
        for lit in self.body:
            vs |= lit.variables()
        return vs

    def atoms(self) -> tuple:
        return tuple(b for b in self.body if isinstance(b, Atom))

    def inequalities(self) -> tuple:
        return tuple(b for b in self.body if isinstance(b, Inequality))

    def has_constants(self) -> bool:
        return any(not isinstance(t, Variable) for lit in (*self.body, self.head) for t in lit.args)

    def __str__(self) -> str:
        body = ", ".join(map(str, self.body))
        return f"{self.head} :- {body}." if body else f"{self.head} :- ."


def _index(d: Dataset) -> dict[str, list[tuple]]:
    idx: dict[str, list[tuple]] = {}
    for f in d.facts:
        idx.setdefault(f.predicate, []).append(f.args)
    return idx


def _matches(atoms: list[Atom], idx: dict, binding: dict) -> Iterator[dict]:
    """Backtracking join: yields every extension of ``binding`` satisfying ``atoms``."""
    if not atoms:
        yield binding
        return
    # most-bound atom first keeps the search narrow
    pos = max(range(len(atoms)), key=lambda k: sum(1 for a in atoms[k].args if not isinstance(a, Variable) or a in binding))
    atom = atoms[pos]
    rest = atoms[:pos] + atoms[pos + 1:]
    for tup in idx.get(atom.predicate, ()):
        if len(tup) != len(atom.args):
            continue
        new = binding
        ok = True
        for a, t in zip(atom.args, tup):
            if isinstance(a, Variable):
                bound = new.get(a)
                if bound is None:
                    if new is binding:
                        new = dict(binding)
                    new[a] = t
                elif bound != t:
                    ok = False
                    break
            elif a != t:
                ok = False
                break
        if ok:
            yield from _matches(rest, idx, new)


def substitutions(r: Rule, d: Dataset) -> Iterator[dict]:
    """Every substitution mapping all variables of ``r`` into terms of ``d`` that satisfies the body."""
    terms = terms_of(d)
    if not terms:
        return
    idx = _index(d)
    all_vars = sorted(r.variables(), key=str)
    ineqs = r.inequalities()
    for nu in _matches(list(r.atoms()), idx, {}):
        free = [v for v in all_vars if v not in nu]
        for combo in product(terms, repeat=len(free)):
            full = dict(nu)
            full.update(zip(free, combo))
            if all(full.get(q.left, q.left) != full.get(q.right, q.right) for q in ineqs):
                yield full


def immediate_consequences_rule(r: Rule, d: Dataset) -> Dataset:
    """T_r(d)."""
    return Dataset(apply_substitution(r.head, nu) for nu in substitutions(r, d))


def rule_key(r: Rule):
    """Renaming-invariant key for tree-like rules, ``None`` otherwise."""
    from .treelike import rule_to_tree

    tree = rule_to_tree(r)
    if tree is None:
        return None
    return (r.head.predicate, tree.key)


def _rename_equal(a: Rule, b: Rule) -> bool:
    """Exhaustive search for a variable bijection mapping ``a`` onto ``b``."""
    va = sorted(a.variables(), key=str)
    vb = sorted(b.variables(), key=str)
    if len(va) != len(vb):
        return False
    target_body = frozenset(b.body)
    if len(frozenset(a.body)) != len(target_body):
        return False
    for perm in permutations(vb):
        nu = dict(zip(va, perm))
        if apply_substitution(a.head, nu) != b.head:
            continue
        if frozenset(apply_substitution(lit, nu) for lit in a.body) == target_body:
            return True
    return False


def equal_up_to_renaming(a, b) -> bool:
    """Renaming equality of two rules or two tree formulas."""
    from .treelike import TreeFormula

    if isinstance(a, TreeFormula) or isinstance(b, TreeFormula):
        return a == b
    ka, kb = rule_key(a), rule_key(b)
    if ka is not None and kb is not None:
        return ka == kb
    return _rename_equal(a, b)


class Program:
    """A finite set of rules, deduplicated up to variable renaming.

    Iteration follows insertion order.
    """

    def __init__(self, rules: Iterable[Rule] = ()):
        self._rules: list[Rule] = []
        self._keys: set = set()
        for r in rules:
            self.add(r)

    def add(self, r: Rule) -> bool:
        key = rule_key(r)
        if key is not None:
            if key in self._keys:
                return False
            self._keys.add(key)
        elif any(rule_key(s) is None and _rename_equal(r, s) for s in self._rules):
            return False
        self._rules.append(r)
        return True

    def __iter__(self) -> Iterator[Rule]:
        return iter(self._rules)

    def __len__(self) -> int:
        return len(self._rules)

    def __contains__(self, r: Rule) -> bool:
        key = rule_key(r)
        if key is not None:
            return key in self._keys
        return any(_rename_equal(r, s) for s in self._rules)

    @property
    def rules(self) -> tuple:
        return tuple(self._rules)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Program):
            return NotImplemented
        return len(self) == len(other) and all(r in other for r in self)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Program({len(self)} rules)"


def immediate_consequences_program(p: Program | Iterable[Rule], d: Dataset) -> Dataset:
    """T_Π(d): one round of every rule, no fixpoint."""
    out: set = set()
    for r in p:
        out |= immediate_consequences_rule(r, d).facts
    return Dataset(frozenset(out))


def body_dataset(r: Rule, nu: dict) -> Dataset:
    return Dataset(apply_substitution(a, nu) for a in r.atoms())


__all__ = [
    "Rule",
    "Program",
    "Literal",
    "Term",
    "immediate_consequences_rule",
    "immediate_consequences_program",
    "equal_up_to_renaming",
    "substitutions",
    "body_dataset",
]
