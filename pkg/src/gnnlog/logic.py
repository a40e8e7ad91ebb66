"""Terms, atoms, inequalities, datasets and substitutions.

Everything here is immutable. Terms compare structurally and are ordered by
their printed form, which is the canonical order used throughout the package.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Union

_IDENT = re.compile(r"^[A-Za-z0-9_]+$")


def _check_ident(name: str, what: str) -> None:
    if not isinstance(name, str) or not _IDENT.match(name):
        raise ValueError(f"invalid {what} name: {name!r}")


@dataclass(frozen=True)
class Constant:
    name: str

    def __post_init__(self):
        _check_ident(self.name, "constant")

    def __str__(self) -> str:
        return self.name

    @property
    def is_ground(self) -> bool:
        return True


@dataclass(frozen=True)
class Variable:
    name: str

    def __post_init__(self):
        _check_ident(self.name, "variable")

    def __str__(self) -> str:
        return "?" + self.name

    @property
    def is_ground(self) -> bool:
        return False


@dataclass(frozen=True)
class Function:
    """A ground functional term such as ``g(a,b)``, treated as an opaque constant."""

    symbol: str
    args: tuple

    def __post_init__(self):
        _check_ident(self.symbol, "function symbol")
        object.__setattr__(self, "args", tuple(self.args))
        if not self.args:
            raise ValueError("function term needs at least one argument")
        for a in self.args:
            if not isinstance(a, (Constant, Function)):
                raise ValueError(f"function arguments must be ground terms, got {a!r}")

    def __str__(self) -> str:
        return f"{self.symbol}({','.join(map(str, self.args))})"

    @property
    def is_ground(self) -> bool:
        return True


Term = Union[Constant, Variable, Function]


def term_key(t: Term) -> str:
    return str(t)


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple

    def __post_init__(self):
        _check_ident(self.predicate, "predicate")
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) not in (1, 2):
            raise ValueError(f"{self.predicate}: only unary and binary predicates are supported")

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def is_ground(self) -> bool:
        return all(a.is_ground for a in self.args)

    def variables(self) -> set[Variable]:
        return {a for a in self.args if isinstance(a, Variable)}

    def __str__(self) -> str:
        return f"{self.predicate}({','.join(map(str, self.args))})"


@dataclass(frozen=True)
class Inequality:
    left: Term
    right: Term

    @property
    def args(self) -> tuple:
        return (self.left, self.right)

    @property
    def is_ground(self) -> bool:
        return self.left.is_ground and self.right.is_ground

    def variables(self) -> set[Variable]:
        return {a for a in self.args if isinstance(a, Variable)}

    def __str__(self) -> str:
        return f"{self.left} != {self.right}"


Literal = Union[Atom, Inequality]
Substitution = Mapping[Variable, Term]


def apply_substitution(lit: Literal, nu: Substitution) -> Literal:
    """Replace every variable bound in ``nu``; unbound variables stay."""
    if isinstance(lit, Inequality):
        return Inequality(nu.get(lit.left, lit.left), nu.get(lit.right, lit.right))
    return Atom(lit.predicate, tuple(nu.get(a, a) for a in lit.args))


@dataclass(frozen=True)
class Dataset:
    """A finite set of facts. Iteration follows the canonical (printed) order."""

    facts: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        facts = frozenset(self.facts)
        for f in facts:
            if not isinstance(f, Atom):
                raise ValueError(f"datasets contain only atoms, got {f}")
            if not f.is_ground:
                raise ValueError(f"datasets contain only ground facts, got {f}")
        object.__setattr__(self, "facts", facts)

    @classmethod
    def of(cls, *facts: Atom) -> Dataset:
        return cls(frozenset(facts))

    @cached_property
    def _sorted(self) -> tuple:
        return tuple(sorted(self.facts, key=str))

    def __iter__(self) -> Iterator[Atom]:
        return iter(self._sorted)

    def __len__(self) -> int:
        return len(self.facts)

    def __contains__(self, fact) -> bool:
        return fact in self.facts

    def __or__(self, other: Dataset) -> Dataset:
        return Dataset(self.facts | other.facts)

    def __sub__(self, other: Dataset) -> Dataset:
        return Dataset(self.facts - other.facts)

    def __le__(self, other: Dataset) -> bool:
        return self.facts <= other.facts

    def __lt__(self, other: Dataset) -> bool:
        return self.facts < other.facts

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self)) + "}"

    def unary(self) -> Dataset:
        return Dataset(f for f in self.facts if f.arity == 1)

    def binary(self) -> Dataset:
        return Dataset(f for f in self.facts if f.arity == 2)

    def rename(self, h: Mapping[Term, Term]) -> Dataset:
        return Dataset(Atom(f.predicate, tuple(h.get(a, a) for a in f.args)) for f in self.facts)


def entails(d: Dataset, lit: Literal) -> bool:
    if not lit.is_ground:
        raise ValueError(f"entails() needs a ground literal, got {lit}")
    if isinstance(lit, Inequality):
        return lit.left != lit.right
    return lit in d


def terms_of(d: Dataset | Iterable[Atom]) -> tuple:
    """All terms occurring as fact arguments, canonically ordered."""
    facts = d.facts if isinstance(d, Dataset) else d
    return tuple(sorted({a for f in facts for a in f.args}, key=str))


@dataclass(frozen=True)
class Signature:
    """Unary predicates U1..U<delta> and one binary predicate E_<c> per colour."""

    colours: tuple
    delta: int

    def __post_init__(self):
        object.__setattr__(self, "colours", tuple(self.colours))
        if self.delta < 1:
            raise ValueError("delta must be at least 1")
        if len(set(self.colours)) != len(self.colours):
            raise ValueError("duplicate colour")
        for c in self.colours:
            _check_ident(c, "colour")

    @staticmethod
    def unary(i: int) -> str:
        return f"U{i}"

    @staticmethod
    def edge(c: str) -> str:
        return f"E_{c}"

    def unary_index(self, predicate: str) -> int | None:
        """1-based index ``i`` when ``predicate`` is ``U<i>`` of this signature."""
        m = re.fullmatch(r"U([1-9][0-9]*)", predicate)
        if m and int(m.group(1)) <= self.delta:
            return int(m.group(1))
        return None

    def colour_of(self, predicate: str) -> str | None:
        if predicate.startswith("E_") and predicate[2:] in self.colours:
            return predicate[2:]
        return None

    def admits(self, fact: Atom) -> bool:
        if fact.arity == 1:
            return self.unary_index(fact.predicate) is not None
        return self.colour_of(fact.predicate) is not None

    def predicates(self) -> list[str]:
        return [self.unary(i) for i in range(1, self.delta + 1)] + [self.edge(c) for c in self.colours]


def const(name: str) -> Constant:
    return Constant(name)


def var(name: str) -> Variable:
    return Variable(name)


def fact(predicate: str, *args: str | Term) -> Atom:
    """Convenience constructor: string arguments become constants."""
    return Atom(predicate, tuple(Constant(a) if isinstance(a, str) else a for a in args))
