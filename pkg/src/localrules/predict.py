"""Conflict resolution and the final class prediction for one instance.

Accepted rules may disagree, so no single rule decides. Their match sets are
merged into one combined match set and that union is scored exactly like a
rule. When the union passes the initial acceptance level (the base threshold,
not the dynamically tightened one), the prediction is the union's dominating
class with its conditional class frequency as the probability estimate.
Otherwise the prediction falls back to the training majority class with its
unconditional prior.
"""

from __future__ import annotations

from dataclasses import dataclass

from .data import Dataset, split_for_prediction
from .discretize import build_grids
from .encode import EncodedInstance, attrs_needing_grids, encode
from .rules import Contingency, QualityParams, Rule, contingency, quality, select_target
from .search import SearchOutcome, search_local_rules

SOURCE_COMBINED = "combined_rule"
SOURCE_PRIOR = "class_prior"


def mask_class(row: tuple, class_col: int) -> tuple:
    """The prediction point with its class label removed.

    Every prediction path goes through this, so a predictor reading a test
    label is impossible rather than merely avoided.
    """
    return row[:class_col] + (None,) + row[class_col + 1 :]


@dataclass(frozen=True)
class CombinedRule:
    match_bits: int  # union over accepted rules
    table: Contingency
    target: bool
    quality: float
    accepted: bool

    @property
    def n_match(self) -> int:
        return self.table.n_match

    @property
    def correctness(self) -> float:
        covered = self.table.n_tt if self.target else self.table.n_tf
        return covered / self.table.n_match


@dataclass(frozen=True)
class Prediction:
    target: bool  # True = positive class (first declared value)
    label: str
    probability: float
    source: str  # SOURCE_COMBINED or SOURCE_PRIOR
    search: SearchOutcome
    combined: CombinedRule

    @property
    def rules(self) -> tuple[Rule, ...]:
        return self.search.rules


def combine(
    rules, class_bits: int, n_rows: int, params: QualityParams
) -> CombinedRule:
    """Score the union of the rules' match sets as one rule.

    An empty rule set is rejected outright: its empty union carries no
    evidence even when the score formula alone would clear the threshold
    (which happens at min_cover = 0).
    """
    union = 0
    for rule in rules:
        union |= rule.match_bits
    table = contingency(union, class_bits, n_rows)
    target = select_target(table)
    q = quality(table, target, params.weight)
    accepted = bool(rules) and q >= params.base_threshold
    return CombinedRule(union, table, target, q, accepted)


def _prior_prediction(inst: EncodedInstance, search, combined) -> Prediction:
    target = inst.n_pos >= inst.n_neg
    count = inst.n_pos if target else inst.n_neg
    return Prediction(
        target=target,
        label=inst.class_labels[0 if target else 1],
        probability=count / inst.n_rows,
        source=SOURCE_PRIOR,
        search=search,
        combined=combined,
    )


def predict_encoded(inst: EncodedInstance, params: QualityParams) -> Prediction:
    outcome = search_local_rules(inst, params)
    combined = combine(outcome.rules, inst.class_bits, inst.n_rows, params)
    if not combined.accepted:
        return _prior_prediction(inst, outcome, combined)
    return Prediction(
        target=combined.target,
        label=inst.class_labels[0 if combined.target else 1],
        probability=combined.correctness,
        source=SOURCE_COMBINED,
        search=outcome,
        combined=combined,
    )


def predict_for_row(
    d: Dataset,
    row: int,
    params: QualityParams,
    mode: str = "levels",
    overrides: dict | None = None,
) -> Prediction:
    """Predict one dataset row from all the others.

    Discretization grids are fitted on the remaining rows only, so the
    prediction point never influences its own encoding.
    """
    pred_row, training = split_for_prediction(d, row)
    pred_row = mask_class(pred_row, d.class_col)
    grids = build_grids(
        d.attributes,
        training,
        d.class_col,
        attrs_needing_grids(d.attributes, mode, overrides),
    )
    inst = encode(d.attributes, training, pred_row, d.class_col, grids, mode, overrides)
    return predict_encoded(inst, params)
