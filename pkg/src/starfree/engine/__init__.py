from .oracle import CostModel, QueryLedger, Oracle, grover_charge
from .decide import (
    DecisionArtifacts,
    analyze,
    cost_curve,
    curve_csv,
    decide,
    decide_batch,
    loglog_slope,
    sample_strings,
)
from .tables import EngineTables
from .core import RunState, eval_main

__all__ = [
    "CostModel",
    "QueryLedger",
    "Oracle",
    "grover_charge",
    "DecisionArtifacts",
    "analyze",
    "cost_curve",
    "curve_csv",
    "decide",
    "decide_batch",
    "loglog_slope",
    "sample_strings",
    "EngineTables",
    "RunState",
    "eval_main",
]
