"""Differential checks of GNN transformations against programs and invariants."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterator

from .codec import canonical_transform, encode
from .datalog import Program, immediate_consequences_program
from .gnn import Gnn, propagate
from .logic import Atom, Constant, Dataset, Function, Signature, terms_of

FRAMING = (
    "exhaustive checking covers only datasets up to the stated number of terms; "
    "a failure here points at an implementation bug, not at the theory"
)


def fact_universe(sig: Signature, consts: list) -> list:
    out = [Atom(sig.unary(i), (a,)) for a in consts for i in range(1, sig.delta + 1)]
    out += [Atom(sig.edge(c), (a, b)) for c in sig.colours for a in consts for b in consts]
    return out


def constants(n: int) -> list:
    return [Constant(f"a{k}") for k in range(1, n + 1)]


def _refine(d: Dataset, consts: list) -> dict:
    """Stable colouring of constants by iterated neighbourhood signatures."""
    colour = {a: tuple(sorted(f.predicate for f in d if f.arity == 1 and f.args[0] == a)) for a in consts}
    while True:
        sig = {}
        for a in consts:
            out = sorted((f.predicate, colour[f.args[1]]) for f in d if f.arity == 2 and f.args[0] == a)
            inc = sorted((f.predicate, colour[f.args[0]]) for f in d if f.arity == 2 and f.args[1] == a)
            sig[a] = (colour[a], tuple(out), tuple(inc))
        ranks = {s: n for n, s in enumerate(sorted(set(sig.values())))}
        new = {a: (ranks[sig[a]],) for a in consts}
        if len(set(new.values())) == len(set(colour.values())):
            return new
        colour = new


def canonical_form(d: Dataset, consts: list) -> tuple:
    """Isomorphism-invariant key: least relabelling among those respecting the refined colours."""
    colour = _refine(d, consts)
    cells: dict = {}
    for a in consts:
        cells.setdefault(colour[a], []).append(a)
    ordered = [cells[k] for k in sorted(cells)]
    target = constants(len(consts))
    best = None
    for perms in product(*(permutations(cell) for cell in ordered)):
        seq = [a for p in perms for a in p]
        h = dict(zip(seq, target))
        key = tuple(sorted(str(f) for f in d.rename(h)))
        if best is None or key < best:
            best = key
    return best


def count_datasets(sig: Signature, n: int) -> int:
    return 2 ** (n * sig.delta + n * n * len(sig.colours))


def enumerate_datasets(
    sig: Signature, n: int, cap: int | None = 1 << 20, iso_classes: bool = False
) -> Iterator[Dataset]:
    """Every dataset over constants a1..an; optionally one per isomorphism class."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = count_datasets(sig, n)
    if cap is not None and total > cap:
        raise ValueError(f"{total} datasets exceed the cap of {cap}")
    consts = constants(n)
    universe = fact_universe(sig, consts)
    seen = set()
    for mask in range(total):
        d = Dataset(frozenset(f for k, f in enumerate(universe) if mask >> k & 1))
        if iso_classes:
            key = canonical_form(d, consts)
            if key in seen:
                continue
            seen.add(key)
        yield d


def random_dataset(rng: random.Random, sig: Signature, n: int, density: float | None = None) -> Dataset:
    p = rng.random() if density is None else density
    return Dataset(frozenset(f for f in fact_universe(sig, constants(n)) if rng.random() < p))


@dataclass
class Report:
    ok: bool
    checked: int = 0
    detail: dict = field(default_factory=dict)
    counterexample: Dataset | None = None
    note: str = FRAMING

    @property
    def status(self) -> str:
        return "VERIFIED" if self.ok else "COUNTEREXAMPLE"

    def __str__(self) -> str:
        lines = [f"{self.status} ({self.checked} datasets checked)"]
        for k, v in self.detail.items():
            if isinstance(v, Dataset):
                lines.append(f"{k}: {{{', '.join(map(str, v))}}}")
            elif k == "trace":
                for ell, lam in enumerate(v):
                    lines.append(f"lambda^{ell}: " + "; ".join(f"{t}={list(map(str, x))}" for t, x in lam.items()))
            else:
                lines.append(f"{k}: {v}")
        if self.counterexample is not None:
            lines.insert(1, f"dataset: {{{', '.join(map(str, self.counterexample))}}}")
        lines.append(f"note: {self.note}")
        return "\n".join(lines)


def program_transform(p: Program, d: Dataset) -> Dataset:
    """T_P(d) plus the binary facts of d, which every GNN passes through unchanged."""
    return immediate_consequences_program(p, d) | d.binary()


def _compare(g: Gnn, p: Program, d: Dataset) -> Report | None:
    tn = canonical_transform(g, d)
    tp = program_transform(p, d)
    if tn == tp:
        return None
    return Report(
        False,
        counterexample=d,
        detail={
            "T_N": tn,
            "T_P": tp,
            "only_in_T_N": tn - tp,
            "only_in_T_P": tp - tn,
            "trace": propagate(g, encode(g.signature, d)),
        },
    )


def check_equivalence(
    g: Gnn, p: Program, n: int = 3, random_trials: int = 0, seed: int = 0, random_constants: int = 6
) -> Report:
    """T_N(D) = T_P(D) on all datasets over n constants, then on random larger ones.

    Binary facts of D count as part of T_P(D) (see ``program_transform``).
    """
    checked = 0
    for d in enumerate_datasets(g.signature, n, cap=None):
        bad = _compare(g, p, d)
        checked += 1
        if bad:
            bad.checked = checked
            return bad
    rng = random.Random(seed)
    for _ in range(random_trials):
        d = random_dataset(rng, g.signature, rng.randint(1, random_constants))
        bad = _compare(g, p, d)
        checked += 1
        if bad:
            bad.checked = checked
            return bad
    return Report(True, checked, {"exhaustive_constants": n, "random_trials": random_trials, "seed": seed})


def check_monotonicity(
    g: Gnn, trials: int = 1000, seed: int = 0, require_valid: bool = True, max_constants: int = 4
) -> Report:
    """Sample D subset of D' and require T_N(D) subset of T_N(D')."""
    rng = random.Random(seed)
    for k in range(1, trials + 1):
        big = random_dataset(rng, g.signature, rng.randint(1, max_constants))
        small = Dataset(frozenset(f for f in big if rng.random() < 0.5))
        out_small = canonical_transform(g, small, require_valid)
        out_big = canonical_transform(g, big, require_valid)
        if not out_small <= out_big:
            return Report(
                False,
                k,
                {"D_prime": big, "T_N(D)": out_small, "T_N(D_prime)": out_big, "missing": out_small - out_big},
                counterexample=small,
            )
    return Report(True, trials, {"seed": seed})


def _random_renaming(rng: random.Random, terms: tuple) -> dict:
    pool = list(terms)
    rng.shuffle(pool)
    out = {}
    for n, t in enumerate(terms):
        r = rng.random()
        if r < 0.3:
            out[t] = Function("f", (pool[n],))
        elif r < 0.5:
            out[t] = Function("g", (pool[n], Constant("z")))
        else:
            out[t] = Constant(f"p{n}_{pool[n]}")
    return out


def check_isomorphism_invariance(g: Gnn, trials: int = 1000, seed: int = 0, max_constants: int = 4) -> Report:
    """h(T_N(D)) = T_N(h(D)) for random injective renamings h, including into functional terms."""
    rng = random.Random(seed)
    for k in range(1, trials + 1):
        d = random_dataset(rng, g.signature, rng.randint(1, max_constants))
        h = _random_renaming(rng, terms_of(d))
        lhs = canonical_transform(g, d).rename(h)
        rhs = canonical_transform(g, d.rename(h))
        if lhs != rhs:
            return Report(False, k, {"renaming": {str(a): str(b) for a, b in h.items()}, "h(T_N(D))": lhs, "T_N(h(D))": rhs}, counterexample=d)
    return Report(True, trials, {"seed": seed})
