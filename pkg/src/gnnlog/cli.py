"""Command-line entry point: ``gnnlog <subcommand> ...``.

Exit codes: 0 success or verified, 1 counterexample found, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import sys

from .capacity import layer_capacities
from .codec import SignatureError, canonical_transform
from .compiler import CompileError, compile_program
from .datalog import immediate_consequences_program
from .encodings import kgnn_encode, mgnn_decode, mgnn_encode
from .enumerator import END, START, ValueEnumerator
from .extraction import extract_program
from .logic import Signature
from .syntax import DatalogSyntaxError, parse_dataset, parse_gnn, parse_program, print_dataset, print_gnn, print_program
from .treelike import DEFAULT_BUDGET, BudgetExceeded
from .verify import check_equivalence


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _budget(v: str):
    return None if v == "none" else int(v)


def cmd_apply(args) -> int:
    g = parse_gnn(_read(args.gnn))
    _emit(args, print_dataset(canonical_transform(g, parse_dataset(_read(args.data)))))
    return 0


def cmd_consequences(args) -> int:
    p = parse_program(_read(args.program))
    _emit(args, print_dataset(immediate_consequences_program(p, parse_dataset(_read(args.data)))))
    return 0


def cmd_capacity(args) -> int:
    _emit(args, str(layer_capacities(parse_gnn(_read(args.gnn)))) + "\n")
    return 0


def cmd_enumerate(args) -> int:
    g = parse_gnn(_read(args.gnn))
    en = ValueEnumerator(g, max_pops=args.max_pops)
    out = []
    v = en.next(args.layer, args.position, START)
    while len(out) < args.count and v is not END:
        out.append(v)
        v = en.next(args.layer, args.position, v)
    text = "".join(f"{x}\n" for x in out)
    if len(out) < args.count:
        text += "END\n"
    _emit(args, text)
    return 0


def cmd_extract(args) -> int:
    g = parse_gnn(_read(args.gnn))
    _emit(args, print_program(extract_program(g, budget=args.budget)))
    return 0


def cmd_compile(args) -> int:
    p = parse_program(_read(args.program), tree_like=True)
    colours = tuple(args.colors.split(",")) if args.colors else tuple(
        sorted({a.predicate[2:] for r in p for a in r.atoms() if a.arity == 2})
    )
    delta = args.delta or max(
        [int(a.predicate[1:]) for r in p for a in (*r.atoms(), r.head) if a.arity == 1 and a.predicate[1:].isdigit()],
        default=1,
    )
    g = compile_program(Signature(colours, delta), p, args.depth, args.fanout, budget=args.budget)
    _emit(args, print_gnn(g))
    return 0


def cmd_verify(args) -> int:
    g = parse_gnn(_read(args.gnn))
    p = parse_program(_read(args.program))
    rep = check_equivalence(g, p, args.max_constants, args.trials, args.seed)
    _emit(args, str(rep) + "\n")
    return 0 if rep.ok else 1


def cmd_encode(args) -> int:
    d = parse_dataset(_read(args.data))
    if args.scheme == "mgnn":
        if args.eps is None or args.delta is None:
            raise UsageError("--scheme mgnn needs --eps and --delta")
        _emit(args, print_dataset(mgnn_encode(args.eps, args.delta, d, extended=args.extended)))
    else:
        if args.delta1 is None:
            raise UsageError("--scheme kgnn2 needs --delta1")
        out, mapping = kgnn_encode(args.delta1, d)
        header = "".join(f"% U{n} = U_{{{i},{j},{b}}}\n" for n, (i, j, b) in sorted(mapping.items()))
        _emit(args, header + print_dataset(out))
    return 0


def cmd_decode(args) -> int:
    _emit(args, print_dataset(mgnn_decode(args.eps, args.delta, parse_dataset(_read(args.data)))))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gnnlog", description="Monotonic max-sum GNNs and Datalog programs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")
        sp.set_defaults(func=fn)
        return sp

    sp = add("apply", cmd_apply, "apply a GNN to a dataset through the canonical encoding")
    sp.add_argument("--gnn", required=True)
    sp.add_argument("--data", required=True)

    sp = add("consequences", cmd_consequences, "one round of a program's immediate consequences")
    sp.add_argument("--program", required=True)
    sp.add_argument("--data", required=True)

    sp = add("capacity", cmd_capacity, "per-layer aggregation capacities")
    sp.add_argument("--gnn", required=True)

    sp = add("enumerate-values", cmd_enumerate, "least values of X_{l,i} in increasing order")
    sp.add_argument("--gnn", required=True)
    sp.add_argument("--layer", type=int, required=True)
    sp.add_argument("--position", type=int, required=True)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--max-pops", type=int, default=None)

    sp = add("extract", cmd_extract, "extract an equivalent program from a GNN")
    sp.add_argument("--gnn", required=True)
    sp.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET, help="formula-count limit, or 'none'")

    sp = add("compile", cmd_compile, "compile a tree-like program into a max GNN")
    sp.add_argument("--program", required=True)
    sp.add_argument("--colors", help="comma-separated colours (default: those used by the program)")
    sp.add_argument("--delta", type=int, help="number of unary predicates (default: largest used)")
    sp.add_argument("--depth", type=int)
    sp.add_argument("--fanout", type=int)
    sp.add_argument("--budget", type=_budget, default=DEFAULT_BUDGET)

    sp = add("verify", cmd_verify, "check that a GNN and a program induce the same transformation")
    sp.add_argument("--gnn", required=True)
    sp.add_argument("--program", required=True)
    sp.add_argument("--max-constants", type=int, default=2)
    sp.add_argument("--trials", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("encode", cmd_encode, "non-canonical input encodings")
    sp.add_argument("--scheme", choices=("mgnn", "kgnn2"), required=True)
    sp.add_argument("--data", required=True)
    sp.add_argument("--eps", type=int)
    sp.add_argument("--delta", type=int)
    sp.add_argument("--delta1", type=int)
    sp.add_argument("--extended", action="store_true", help="add the pair-materialisation rules (mgnn)")

    sp = add("decode", cmd_decode, "read input facts back off an encoded dataset")
    sp.add_argument("--scheme", choices=("mgnn",), required=True)
    sp.add_argument("--data", required=True)
    sp.add_argument("--eps", type=int, required=True)
    sp.add_argument("--delta", type=int, required=True)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DatalogSyntaxError, SignatureError, CompileError, BudgetExceeded, ValueError) as e:
        print(f"gnnlog {args.command}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
