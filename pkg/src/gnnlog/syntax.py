"""Text formats: Datalog facts and rules, and a JSON document for GNNs.

Datalog grammar (``%`` starts a comment)::

    fact  := ATOM "."
    rule  := ATOM [":-" [lit ("," lit)*]] "."
    lit   := ATOM | term "!=" term
    ATOM  := PRED "(" term ["," term] ")"
    term  := "?" IDENT | IDENT ["(" term ("," term)* ")"]
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .datalog import Program, Rule
from .gnn import INF, Activation, Aggregation, Gnn, Layer
from .logic import Atom, Constant, Dataset, Function, Inequality, Signature, Variable


class DatalogSyntaxError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        self.line, self.col = line, col
        super().__init__(f"line {line}, column {col}: {msg}")


_TOKEN = re.compile(r"\s+|%[^\n]*|(?P<tok>:-|!=|[(),.?]|[A-Za-z0-9_]+|⊤)")


def _tokens(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            raise DatalogSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        if m.group("tok"):
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            out.append((m.group("tok"), line, col))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.k = 0
        self.arity: dict = {}

    def peek(self):
        return self.toks[self.k][0] if self.k < len(self.toks) else None

    def where(self):
        if self.k < len(self.toks):
            return self.toks[self.k][1:]
        if self.toks:
            return self.toks[-1][1], self.toks[-1][2] + len(self.toks[-1][0])
        return 1, 1

    def fail(self, msg: str):
        raise DatalogSyntaxError(msg, *self.where())

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            self.fail(f"unexpected end of input, expected {expected or 'a token'}")
        if expected is not None and tok != expected:
            self.fail(f"expected {expected!r}, found {tok!r}")
        self.k += 1
        return tok

    def ident(self) -> str:
        tok = self.peek()
        if tok is None or not re.fullmatch(r"[A-Za-z0-9_]+", tok):
            self.fail(f"expected an identifier, found {tok!r}")
        return self.take()

    def term(self):
        if self.peek() == "?":
            self.take("?")
            return Variable(self.ident())
        name = self.ident()
        if self.peek() == "(":
            self.take("(")
            args = [self.term()]
            while self.peek() == ",":
                self.take(",")
                args.append(self.term())
            self.take(")")
            if any(isinstance(a, Variable) for a in args):
                self.fail("functional terms must be ground")
            return Function(name, tuple(args))
        return Constant(name)

    def atom(self) -> Atom:
        where = self.where()
        pred = self.ident()
        self.take("(")
        args = [self.term()]
        while self.peek() == ",":
            self.take(",")
            args.append(self.term())
        self.take(")")
        if len(args) > 2:
            raise DatalogSyntaxError(f"{pred} has arity {len(args)}; only unary and binary predicates are allowed", *where)
        known = self.arity.setdefault(pred, len(args))
        if known != len(args):
            raise DatalogSyntaxError(f"{pred} used with arity {len(args)} after arity {known}", *where)
        return Atom(pred, tuple(args))

    def literal(self):
        save = self.k
        if self.peek() == "?":
            left = self.term()
            self.take("!=")
            return Inequality(left, self.term())
        self.ident()
        is_atom = self.peek() == "(" and self._atom_ahead(save)
        self.k = save
        if is_atom:
            return self.atom()
        left = self.term()
        self.take("!=")
        return Inequality(left, self.term())

    def _atom_ahead(self, start: int) -> bool:
        # an atom is a parenthesised term list not followed by "!="
        depth = 0
        k = start + 1
        while k < len(self.toks):
            t = self.toks[k][0]
            if t == "(":
                depth += 1
            elif t == ")":
                depth -= 1
                if depth == 0:
                    return k + 1 >= len(self.toks) or self.toks[k + 1][0] != "!="
            k += 1
        return True


def parse_dataset(text: str) -> Dataset:
    p = _Parser(text)
    facts = set()
    while p.peek() is not None:
        where = p.where()
        a = p.atom()
        p.take(".")
        if not a.is_ground:
            raise DatalogSyntaxError(f"fact {a} contains a variable", *where)
        facts.add(a)
    return Dataset(frozenset(facts))


def print_dataset(d: Dataset) -> str:
    return "".join(f"{f}.\n" for f in d)


def parse_program(text: str, tree_like: bool = False) -> Program:
    p = _Parser(text)
    rules = []
    while p.peek() is not None:
        where = p.where()
        head = p.atom()
        body = []
        if p.peek() == ":-":
            p.take(":-")
            if p.peek() == "⊤":
                p.take()
            elif p.peek() != ".":
                body.append(p.literal())
                while p.peek() == ",":
                    p.take(",")
                    body.append(p.literal())
        p.take(".")
        if tree_like and head.arity != 1:
            raise DatalogSyntaxError(f"rule head {head} must be unary", *where)
        try:
            rules.append(Rule(tuple(body), head))
        except ValueError as e:
            raise DatalogSyntaxError(str(e), *where) from None
    return Program(rules)


def print_program(p) -> str:
    return "".join(f"{r}\n" for r in p)


# GNN documents


def parse_rational(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ValueError(f"malformed rational {x!r}: use an integer or a 'p/q' string")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and re.fullmatch(r"\s*-?\d+(\s*/\s*\d+)?\s*", x):
        try:
            return Fraction(x.replace(" ", ""))
        except ZeroDivisionError:
            pass
    raise ValueError(f"malformed rational {x!r}")


def format_rational(q: Fraction):
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _matrix(rows, what: str) -> tuple:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ValueError(f"{what} must be a list of rows")
    return tuple(tuple(parse_rational(v) for v in r) for r in rows)


def gnn_from_dict(doc: dict) -> Gnn:
    try:
        colours = tuple(doc["colors"])
        dims = list(doc["dims"])
        layers_doc = doc["layers"]
    except (KeyError, TypeError) as e:
        raise ValueError(f"GNN document is missing {e}") from None
    if len(dims) != len(layers_doc) + 1:
        raise ValueError(f"dimension mismatch: {len(dims)} dims for {len(layers_doc)} layers")
    sig = Signature(colours, dims[0])
    layers = []
    for n, ld in enumerate(layers_doc, 1):
        A = _matrix(ld["A"], f"A^{n}")
        B = {c: _matrix(ld["B"][c], f"B^{n}_{c}") for c in colours} if colours else {}
        bias = tuple(parse_rational(v) for v in ld["bias"])
        if len(bias) != dims[n]:
            raise ValueError(f"dimension mismatch: layer {n} bias has {len(bias)} entries, dims says {dims[n]}")
        k = ld.get("agg", {"k": "inf"})["k"]
        agg = Aggregation(INF if k == "inf" else k)
        layers.append(Layer(A, B, bias, agg))
    act_doc = doc.get("activation", {"relu": True})
    if act_doc.get("relu"):
        act = Activation.relu()
    else:
        pts = tuple((parse_rational(x), parse_rational(y)) for x, y in act_doc["breakpoints"])
        act = Activation(pts, parse_rational(act_doc.get("final_slope", 1)))
    threshold = parse_rational(doc.get("classifier", {"threshold": 1})["threshold"])
    g = Gnn(sig, tuple(layers), act, threshold)
    if list(g.dims) != dims:
        raise ValueError(f"dimension mismatch: dims {dims} but layers give {list(g.dims)}")
    return g


def gnn_to_dict(g: Gnn) -> dict:
    fm = lambda m: [[format_rational(v) for v in row] for row in m]  # noqa: E731
    if g.activation.is_relu:
        act = {"relu": True}
    else:
        act = {
            "breakpoints": [[format_rational(x), format_rational(y)] for x, y in g.activation.breakpoints],
            "final_slope": format_rational(g.activation.final_slope),
        }
    return {
        "colors": list(g.colours),
        "dims": list(g.dims),
        "layers": [
            {
                "A": fm(l.A),
                "B": {c: fm(l.B[c]) for c in g.colours},
                "bias": [format_rational(b) for b in l.bias],
                "agg": {"k": "inf" if l.agg.is_sum else l.agg.k},
            }
            for l in g.layers
        ],
        "activation": act,
        "classifier": {"threshold": str(format_rational(g.threshold))},
    }


def parse_gnn(text: str) -> Gnn:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"invalid JSON: {e}") from None
    return gnn_from_dict(doc)


def print_gnn(g: Gnn) -> str:
    return json.dumps(gnn_to_dict(g), indent=2) + "\n"
