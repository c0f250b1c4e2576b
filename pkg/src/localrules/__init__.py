"""Lazy local-rule binary classifier.

Per query instance the package enumerates every conjunctive rule that holds at
that instance (with pruning that provably loses nothing), keeps the rules in
the top quality band, and resolves disagreements through a single combined
rule over the union of their match sets.
"""

from .data import Attribute, Dataset, parse_dataset, parse_schema
from .evaluate import evaluate_cv, evaluate_loocv, render_report
from .exhaustive import exhaustive_rules
from .predict import predict_encoded, predict_for_row
from .rules import QualityParams
from .search import search_local_rules

__version__ = "0.1.0"

__all__ = [
    "Attribute",
    "Dataset",
    "QualityParams",
    "evaluate_cv",
    "evaluate_loocv",
    "exhaustive_rules",
    "parse_dataset",
    "parse_schema",
    "predict_encoded",
    "predict_for_row",
    "render_report",
    "search_local_rules",
    "__version__",
]
