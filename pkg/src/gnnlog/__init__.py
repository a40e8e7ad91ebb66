"""Monotonic max-sum GNNs over coloured graphs and their Datalog counterparts."""
from .capacity import CapacityReport, bound_aggregation, layer_capacities
from .codec import SignatureError, canonical_transform, decode, encode, is_regular
from .compiler import CompiledGnn, CompileError, check_internal_semantics, compile_program
from .datalog import Program, Rule, equal_up_to_renaming, immediate_consequences_program, immediate_consequences_rule
from .encodings import chain, kgnn_encode, mgnn_decode, mgnn_encode
from .enumerator import END, START, ValueEnumerator, least_positive_value, next_value
from .extraction import captures, extract_program
from .gnn import INF, Activation, Aggregation, ColoredGraph, Gnn, Layer, forward, maxsum, propagate
from .logic import Atom, Constant, Dataset, Function, Inequality, Signature, Variable, fact
from .syntax import parse_dataset, parse_gnn, parse_program, print_dataset, print_gnn, print_program
from .treelike import BudgetExceeded, TreeFormula, enumerate_tree_like
from .verify import check_equivalence, check_isomorphism_invariance, check_monotonicity, enumerate_datasets

__all__ = [n for n in dir() if not n.startswith("_")]
