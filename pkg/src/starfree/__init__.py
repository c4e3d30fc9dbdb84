"""starfree: quantum-query-complexity classification of regular languages.

The pipeline: parse or load a machine, compute its syntactic monoid, flatten
away length periodicities, classify each flat component (degenerate / trivial
/ star-free / properly regular), and run the matching decision procedure with
query-cost accounting - including a faithful simulation of the sqrt(n)-query
star-free membership algorithm under an idealized Grover cost model.
"""

from .automata import (
    Alphabet,
    Dfa,
    Nfa,
    RegexAst,
    binarize,
    enumerate_language,
    equivalent,
    minimize,
    parse_dfa_file,
    parse_regex,
    parse_regex_file,
    regex_to_dfa,
)
from .classifier import ClassificationReport, ComplexityClass, classify
from .engine import CostModel, QueryLedger, analyze, cost_curve, decide, decide_batch
from .flattening import FlatFamily, check_flat, conductor, flatten
from .monoid import SyntacticContext, is_aperiodic, syntactic_context

__all__ = [
    "Alphabet",
    "Dfa",
    "Nfa",
    "RegexAst",
    "binarize",
    "enumerate_language",
    "equivalent",
    "minimize",
    "parse_dfa_file",
    "parse_regex",
    "parse_regex_file",
    "regex_to_dfa",
    "ClassificationReport",
    "ComplexityClass",
    "classify",
    "CostModel",
    "QueryLedger",
    "analyze",
    "cost_curve",
    "decide",
    "decide_batch",
    "FlatFamily",
    "check_flat",
    "conductor",
    "flatten",
    "SyntacticContext",
    "is_aperiodic",
    "syntactic_context",
]

__version__ = "0.1.0"
