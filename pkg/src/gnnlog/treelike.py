"""Tree-like formulas: canonical AST, flattening, recognition and enumeration.

A node carries the unary indices holding at its variable and a multiset of
groups. A group is one colour plus a multiset of child subtrees whose root
variables are pairwise distinct; a single-child group therefore carries no
inequality. Children and groups are kept sorted by their canonical key, so
structural equality coincides with equality up to variable renaming.
"""
from __future__ import annotations

import math
from itertools import chain, combinations, combinations_with_replacement
from typing import Iterator

from .datalog import Rule
from .logic import Atom, Dataset, Inequality, Signature, Variable


class BudgetExceeded(RuntimeError):
    def __init__(self, estimate: int | str, limit: int):
        self.estimate = estimate
        self.limit = limit
        super().__init__(
            f"estimated {estimate} tree-like formulas exceeds the budget of {limit}; "
            "lower the depth/fan-out or raise the budget"
        )


class Group:
    __slots__ = ("colour", "children", "key")

    def __init__(self, colour: str, children):
        children = tuple(sorted(children, key=lambda t: t.key))
        if not children:
            raise ValueError("a group needs at least one child")
        self.colour = colour
        self.children = children
        self.key = f"[{colour}:" + "|".join(c.key for c in children) + "]"

    def __eq__(self, other):
        return isinstance(other, Group) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Group({self.key})"


class TreeFormula:
    """Tree-like formula for a root variable, in canonical form."""

    __slots__ = ("unaries", "groups", "key", "depth")

    def __init__(self, unaries=(), groups=()):
        self.unaries = frozenset(unaries)
        self.groups = tuple(sorted(groups, key=lambda g: g.key))
        self.key = "(" + ",".join(map(str, sorted(self.unaries))) + "".join(g.key for g in self.groups) + ")"
        self.depth = 1 + max(c.depth for g in self.groups for c in g.children) if self.groups else 0

    def __eq__(self, other):
        return isinstance(other, TreeFormula) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"TreeFormula({self.key})"

    def __str__(self):
        body = flatten(self)
        return " & ".join(map(str, body)) if body else "T"

    @property
    def fanout(self) -> int:
        return sum(len(g.children) for g in self.groups)

    @property
    def size(self) -> int:
        """Number of variables."""
        return 1 + sum(c.size for g in self.groups for c in g.children)

    def has_inequalities(self) -> bool:
        return any(len(g.children) > 1 or any(c.has_inequalities() for c in g.children) for g in self.groups)

    def is_tree_like(self, d: int, f: int, level: int = 0) -> bool:
        """(d,f)-bound check: a variable at depth i has fan-out at most f*(d-i)."""
        if level > d or self.fanout > f * (d - level):
            return False
        return all(c.is_tree_like(d, f, level + 1) for g in self.groups for c in g.children)

    def colours(self) -> set:
        out = {g.colour for g in self.groups}
        for g in self.groups:
            for c in g.children:
                out |= c.colours()
        return out

    def max_unary(self) -> int:
        m = max(self.unaries, default=0)
        return max([m] + [c.max_unary() for g in self.groups for c in g.children])

    def unary_part(self) -> TreeFormula:
        return TreeFormula(self.unaries)

    def edges(self) -> list:
        """The (colour, child) pairs of an inequality-free formula."""
        return [(g.colour, c) for g in self.groups for c in g.children]


TOP = TreeFormula()


def _flatten(phi: TreeFormula, x: Variable, counter: list) -> list:
    out: list = [Atom(Signature.unary(i), (x,)) for i in sorted(phi.unaries)]
    for g in phi.groups:
        ys = []
        for child in g.children:
            counter[0] += 1
            y = Variable(f"y{counter[0]}")
            ys.append(y)
            out.append(Atom(Signature.edge(g.colour), (x, y)))
            out.extend(_flatten(child, y, counter))
        out.extend(Inequality(a, b) for a, b in combinations(ys, 2))
    return out


def flatten(phi: TreeFormula, root: Variable = Variable("x")) -> list:
    """Body literals of ``phi`` with fresh variables y1, y2, ... in preorder."""
    return _flatten(phi, root, [0])


def tree_formula_to_rule(phi: TreeFormula, head_index: int) -> Rule:
    if head_index < 1:
        raise ValueError("head index is 1-based")
    x = Variable("x")
    return Rule(tuple(flatten(phi, x)), Atom(Signature.unary(head_index), (x,)))


def _unary_index(predicate: str) -> int | None:
    if predicate.startswith("U") and predicate[1:].isdigit() and predicate[1] != "0":
        return int(predicate[1:])
    return None


def rule_to_tree(r: Rule) -> TreeFormula | None:
    """Recover the tree-like body of ``r`` (head ``U_i(x)``), or ``None`` if it has another shape."""
    if r.head.arity != 1 or _unary_index(r.head.predicate) is None:
        return None
    root = r.head.args[0]
    if not isinstance(root, Variable):
        return None
    return formula_to_tree(r.body, root)


def formula_to_tree(body, root: Variable) -> TreeFormula | None:
    unaries: dict = {}
    kids: dict = {}
    parent: dict = {}
    neq: dict = {}
    for lit in set(body):
        if any(not isinstance(t, Variable) for t in lit.args):
            return None
        if isinstance(lit, Inequality):
            if lit.left == lit.right:
                return None
            neq.setdefault(lit.left, set()).add(lit.right)
            neq.setdefault(lit.right, set()).add(lit.left)
        elif lit.arity == 1:
            i = _unary_index(lit.predicate)
            if i is None:
                return None
            unaries.setdefault(lit.args[0], set()).add(i)
        else:
            if not lit.predicate.startswith("E_") or len(lit.predicate) < 3:
                return None
            s, t = lit.args
            if t in parent or t == root or s == t:
                return None
            parent[t] = (s, lit.predicate[2:])
            kids.setdefault(s, []).append(t)
    # every variable must hang off the root
    seen = {root}
    stack = [root]
    while stack:
        v = stack.pop()
        for k in kids.get(v, ()):
            if k in seen:
                return None
            seen.add(k)
            stack.append(k)
    mentioned = set(unaries) | set(parent) | set(kids) | set(neq)
    if not mentioned <= seen:
        return None
    # inequalities must form same-colour sibling cliques
    for v, others in neq.items():
        if v not in parent:
            return None
        for w in others:
            if w not in parent or parent[w] != parent[v]:
                return None
    for v in neq:
        for w in neq[v]:
            if (neq[v] - {w}) != (neq[w] - {v}):
                return None

    def build(v) -> TreeFormula:
        children = kids.get(v, [])
        groups = []
        done = set()
        for ch in sorted(children, key=str):
            if ch in done:
                continue
            members = [ch] + sorted(neq.get(ch, ()), key=str)
            done.update(members)
            groups.append(Group(parent[ch][1], [build(m) for m in members]))
        return TreeFormula(unaries.get(v, ()), groups)

    return build(root)


class TreeMatcher:
    """Evaluates tree formulas over one dataset by direct tree homomorphism.

    Children of one group need pairwise distinct images; results are memoised
    per (formula, term).
    """

    def __init__(self, d: Dataset):
        self.labels: dict = {}
        self.succ: dict = {}
        for f in d.facts:
            if f.arity == 1:
                self.labels.setdefault(f.args[0], set()).add(f.predicate)
            else:
                self.succ.setdefault((f.args[0], f.predicate), []).append(f.args[1])
        self._memo: dict = {}

    def holds(self, phi: TreeFormula, t) -> bool:
        key = (phi.key, t)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        ok = all(Signature.unary(i) in self.labels.get(t, ()) for i in phi.unaries)
        if ok:
            for g in phi.groups:
                cands = self.succ.get((t, Signature.edge(g.colour)), [])
                options = [[s for s in cands if self.holds(ch, s)] for ch in g.children]
                if not _injective(options, 0, set()):
                    ok = False
                    break
        self._memo[key] = ok
        return ok


def satisfied_at(phi: TreeFormula, d: Dataset, t) -> bool:
    """Whether some substitution with x -> t makes ``phi`` true in ``d``."""
    return TreeMatcher(d).holds(phi, t)


def _injective(options: list, k: int, used: set) -> bool:
    if k == len(options):
        return True
    for s in options[k]:
        if s not in used:
            used.add(s)
            if _injective(options, k + 1, used):
                return True
            used.discard(s)
    return False


def formula_count_bound(sig: Signature, d: int, f: int) -> int:
    """The (|C| * 2^delta)^(f^d * (d+1)!) count estimate; may be astronomically large."""
    return (len(sig.colours) * 2 ** sig.delta) ** (f ** d * math.factorial(d + 1))


def check_budget(sig: Signature, d: int, f: int, limit: int | None) -> None:
    if limit is None:
        return
    base = max(len(sig.colours), 1) * 2 ** sig.delta
    exponent = f ** d * math.factorial(d + 1)
    if exponent * math.log2(base) > math.log2(max(limit, 1)) + 64:
        raise BudgetExceeded(f"{base}^{exponent}", limit)
    estimate = base ** exponent
    if estimate > limit:
        raise BudgetExceeded(estimate, limit)


DEFAULT_BUDGET = 10 ** 6


def _multisets(items: list, budget: int, start: int = 0) -> Iterator[tuple]:
    """Multisets of ``items`` (each with a ``size``) whose sizes sum to at most ``budget``."""
    yield ()
    for k in range(start, len(items)):
        size, item = items[k]
        if size <= budget:
            for rest in _multisets(items, budget - size, k):
                yield (item,) + rest


def _level_formulas(sig: Signature, d: int, f: int, allow_inequalities: bool) -> list:
    unary_sets = list(chain.from_iterable(combinations(range(1, sig.delta + 1), n) for n in range(sig.delta + 1)))
    below: list = []
    for level in range(d, -1, -1):
        budget = f * (d - level)
        groups = []
        if budget and below:
            for c in sig.colours:
                for s in range(1, (budget if allow_inequalities else 1) + 1):
                    for combo in combinations_with_replacement(below, s):
                        groups.append((s, Group(c, combo)))
        current = [TreeFormula(u, gs) for u in unary_sets for gs in _multisets(groups, budget)]
        below = current
    return below


def enumerate_tree_like(
    sig: Signature, d: int, f: int, allow_inequalities: bool = True, budget: int | None = DEFAULT_BUDGET
) -> Iterator[TreeFormula]:
    """Every (d,f)-tree-like formula for x exactly once up to renaming.

    Ordered by depth, then canonical key.
    """
    if d < 0 or f < 0:
        raise ValueError("depth and fan-out must be nonnegative")
    check_budget(sig, d, f, budget)
    formulas = _level_formulas(sig, d, f, allow_inequalities)
    formulas.sort(key=lambda t: (t.depth, t.key))
    yield from formulas
