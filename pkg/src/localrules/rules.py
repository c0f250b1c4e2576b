"""Scoring one candidate rule.

A rule's quality blends two ratios: how much of the non-predicted class it
excludes (weight) and how much of the predicted class it covers (1 - weight).
A perfectly correct rule therefore scores weight + (1-weight) * coverage,
which is where the acceptance threshold comes from: base_threshold is the
score of a perfectly correct rule covering min_cover of its class.

All counts are exact integers; scores are computed from them in one fixed
float expression (_score) so that every caller (the search, the reference
enumerator, the combined-rule check, and the floor estimates) produces
bit-identical values for identical counts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadParams, DegenerateClassDistribution, LengthMismatch


@dataclass(frozen=True)
class Contingency:
    """Joint counts of (rule matches) x (class is positive) over training rows."""

    n_tt: int
    n_tf: int
    n_ft: int
    n_ff: int

    @property
    def n(self) -> int:
        return self.n_tt + self.n_tf + self.n_ft + self.n_ff

    @property
    def n_pos(self) -> int:
        return self.n_tt + self.n_ft

    @property
    def n_neg(self) -> int:
        return self.n_tf + self.n_ff

    @property
    def n_match(self) -> int:
        return self.n_tt + self.n_tf


def contingency(match_bits: int, class_bits: int, n_rows: int) -> Contingency:
    if match_bits >> n_rows or class_bits >> n_rows:
        raise LengthMismatch(f"bit vector longer than {n_rows} rows")
    n_tt = (match_bits & class_bits).bit_count()
    n_tf = match_bits.bit_count() - n_tt
    n_ft = class_bits.bit_count() - n_tt
    return Contingency(n_tt, n_tf, n_ft, n_rows - n_tt - n_tf - n_ft)


def select_target(t: Contingency) -> bool:
    """Predicted class: the one dominating the match set.

    Ties go to the class with more training rows overall, then to positive.
    """
    if t.n_tt != t.n_tf:
        return t.n_tt > t.n_tf
    return t.n_pos >= t.n_neg


def _score(excl_num: int, excl_den: int, cover_num: int, cover_den: int, weight: float) -> float:
    # The single float expression all quality values flow through.
    return weight * (excl_num / excl_den) + (1 - weight) * (cover_num / cover_den)


def quality(t: Contingency, target: bool, weight: float) -> float:
    """Weighted exclusion/coverage score in [0, 1] for the given predicted class."""
    if t.n_pos == 0 or t.n_neg == 0:
        raise DegenerateClassDistribution("both class values need training rows")
    if target:
        return _score(t.n_ff, t.n_neg, t.n_tt, t.n_pos, weight)
    return _score(t.n_ft, t.n_pos, t.n_tf, t.n_neg, weight)


def perfect_quality(cover_count: int, class_total: int, weight: float) -> float:
    """Score of a perfectly correct rule covering cover_count of class_total.

    Upper bound for any rule whose predicted-class match count is cover_count;
    evaluated through _score so it is float-identical to quality() on an
    actual perfect rule with the same counts.
    """
    return _score(1, 1, cover_count, class_total, weight)


@dataclass(frozen=True)
class Rule:
    term_ids: tuple[int, ...]
    match_bits: int
    table: Contingency
    target: bool
    quality: float

    @property
    def cover_count(self) -> int:
        return self.table.n_tt if self.target else self.table.n_tf

    @property
    def class_total(self) -> int:
        return self.table.n_pos if self.target else self.table.n_neg

    @property
    def coverage(self) -> float:
        return self.cover_count / self.class_total

    @property
    def correctness(self) -> float:
        return self.cover_count / self.table.n_match if self.table.n_match else 0.0


def make_rule(term_ids, match_bits: int, class_bits: int, n_rows: int, weight: float) -> Rule:
    t = contingency(match_bits, class_bits, n_rows)
    target = select_target(t)
    return Rule(
        term_ids=tuple(term_ids),
        match_bits=match_bits,
        table=t,
        target=target,
        quality=quality(t, target, weight),
    )


@dataclass(frozen=True)
class QualityParams:
    weight: float = 0.75  # share of the score carried by the exclusion ratio
    min_cover: float = 0.08  # class fraction a rule must cover to be acceptable
    min_mism: float = 0.02  # class fraction each term must uniquely exclude
    max_terms: int = 8
    keep_frac: float = 1.0  # keep rules scoring at least this fraction of the best
    eps: float = 0.0  # slack on "perfectly correct" for the search cutoff

    def __post_init__(self):
        if not 0.0 <= self.weight <= 1.0:
            raise BadParams(f"weight must be in [0,1], got {self.weight}")
        if not 0.0 <= self.min_cover <= 1.0:
            raise BadParams(f"min_cover must be in [0,1], got {self.min_cover}")
        if not 0.0 <= self.min_mism <= 1.0:
            raise BadParams(f"min_mism must be in [0,1], got {self.min_mism}")
        if self.max_terms < 1:
            raise BadParams(f"max_terms must be >= 1, got {self.max_terms}")
        if not 0.0 < self.keep_frac <= 1.0:
            raise BadParams(f"keep_frac must be in (0,1], got {self.keep_frac}")
        if not 0.0 <= self.eps < 1.0:
            raise BadParams(f"eps must be in [0,1), got {self.eps}")

    @property
    def base_threshold(self) -> float:
        return self.weight + (1 - self.weight) * self.min_cover


def mismatch_floors(params: QualityParams, n_pos: int, n_neg: int) -> tuple[float, float]:
    """Per-class row-count floors for the term-redundancy test (strict >)."""
    return (params.min_mism * n_pos, params.min_mism * n_neg)


def min_cover_count(threshold: float, class_total: int, weight: float, start: int = 0) -> int:
    """Smallest per-class match count whose best achievable score reaches threshold.

    Scanned upward on the float-evaluated perfect_quality rather than solved
    algebraically, so the boundary count agrees exactly with the scorer.
    Returns class_total + 1 when even full coverage cannot reach threshold.
    """
    for count in range(start, class_total + 1):
        if perfect_quality(count, class_total, weight) >= threshold:
            return count
    return class_total + 1


def cover_floor_counts(
    threshold: float,
    n_pos: int,
    n_neg: int,
    weight: float,
    start: tuple[int, int] = (0, 0),
) -> tuple[int, int]:
    return (
        min_cover_count(threshold, n_pos, weight, start[0]),
        min_cover_count(threshold, n_neg, weight, start[1]),
    )


def thresholds(params: QualityParams, n_pos: int, n_neg: int):
    """Both floor families at the initial acceptance level.

    Returns ((cover count floor per class), (mismatch float floor per class)),
    positive class first. Cover floors are the minimal acceptable counts, the
    row-count form of min_cover * class share; mismatch floors stay as float
    products for the strict > comparison.
    """
    if params.weight >= 1.0:
        cover = (0, 0)  # exclusion-only score; coverage cannot bound it
    else:
        cover = cover_floor_counts(params.base_threshold, n_pos, n_neg, params.weight)
    return cover, mismatch_floors(params, n_pos, n_neg)


def format_rule(rule: Rule, components, class_labels: tuple[str, str]) -> str:
    terms = " AND ".join(components[cid].display for cid in rule.term_ids)
    label = class_labels[0] if rule.target else class_labels[1]
    return (
        f"IF {terms} THEN class={label}  "
        f"[alpha={rule.quality:.6f}, cover={rule.cover_count}/{rule.class_total}, "
        f"correct={rule.cover_count}/{rule.table.n_match}]"
    )
