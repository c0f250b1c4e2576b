"""Average-performance estimation over a labeled dataset.

Stratified k-fold cross-validation: each class's rows are shuffled with a
seeded generator and dealt round-robin over the folds, so per-class fold
sizes differ by at most one. Every test row is predicted with its class cell
masked, against training rows from the other folds only; discretization
grids are refit on each training split so the test rows never influence
their own encoding.

Within a fold, test rows are independent and may be predicted by a pool of
worker processes. The merge preserves row order and all accumulators are
integers, so the rendered report is byte-identical for any worker count.
Wall-clock time is recorded on the report object but never serialized.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from multiprocessing import get_context
from random import Random

from .data import Dataset
from .discretize import build_grids
from .encode import MODE_LEVELS, attrs_needing_grids, encode
from .errors import BadParams, BadValue, DatasetTooLarge, TooFewRows
from .predict import SOURCE_PRIOR, mask_class, predict_encoded, predict_for_row
from .rules import QualityParams

LOOCV_CAP = 600


@dataclass(frozen=True)
class ConfusionCounts:
    """Test-row counts by (actual class, predicted class), positive first."""

    pos_pos: int
    pos_neg: int
    neg_pos: int
    neg_neg: int

    @property
    def total(self) -> int:
        return self.pos_pos + self.pos_neg + self.neg_pos + self.neg_neg

    @property
    def correct(self) -> int:
        return self.pos_pos + self.neg_neg

    def add(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(
            self.pos_pos + other.pos_pos,
            self.pos_neg + other.pos_neg,
            self.neg_pos + other.neg_pos,
            self.neg_neg + other.neg_neg,
        )


@dataclass(frozen=True)
class EvaluationReport:
    dataset_label: str
    method: str  # "cv" or "loocv"
    mode: str
    k: int | None
    seed: int | None
    params: QualityParams
    overrides: dict
    class_labels: tuple[str, str]
    n_rows: int
    folds: tuple[ConfusionCounts, ...]
    pooled: ConfusionCounts
    correctness: float
    fallback_fraction: float
    mean_nodes: float
    wall_seconds: float  # informational only, never serialized

    @property
    def n_tests(self) -> int:
        return self.pooled.total


def _class_index(row, class_col: int, where: str) -> int:
    g = row[class_col]
    if g is None:
        raise BadValue(f"{where} has no class label; evaluation needs labeled rows")
    return g


def stratified_kfold(d: Dataset, k: int, seed: int) -> tuple[tuple[int, ...], ...]:
    """Row indices per fold; per-class counts differ by at most one."""
    if k < 2:
        raise BadParams(f"need at least 2 folds, got {k}")
    by_class: tuple[list[int], list[int]] = ([], [])
    for i, row in enumerate(d.rows):
        by_class[_class_index(row, d.class_col, f"row {i}")].append(i)
    rng = Random(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    for label, rows in zip(d.class_values, by_class):
        if len(rows) < k:
            raise TooFewRows(f"class {label!r} has {len(rows)} rows, fewer than {k} folds")
        rng.shuffle(rows)
        for j, idx in enumerate(rows):
            folds[j % k].append(idx)
    return tuple(tuple(sorted(fold)) for fold in folds)


# Worker-process state, set once per worker by the pool initializer. Fold
# evaluation shares one training split; leave-one-out shares the dataset.
_FOLD_STATE = None
_LOOCV_STATE = None


def _init_fold_worker(state) -> None:
    global _FOLD_STATE
    _FOLD_STATE = state


def _predict_fold_row(row):
    attributes, training, grids, class_col, mode, overrides, params = _FOLD_STATE
    return _predict_one(
        attributes, training, grids, class_col, mode, overrides, params, row
    )


def _predict_one(attributes, training, grids, class_col, mode, overrides, params, row):
    inst = encode(
        attributes, training, mask_class(row, class_col), class_col, grids, mode, overrides
    )
    p = predict_encoded(inst, params)
    return p.target, p.search.nodes_visited, p.source == SOURCE_PRIOR


def _init_loocv_worker(state) -> None:
    global _LOOCV_STATE
    _LOOCV_STATE = state


def _predict_loocv_row(index: int):
    d, params, mode, overrides = _LOOCV_STATE
    p = predict_for_row(d, index, params, mode, overrides)
    return p.target, p.search.nodes_visited, p.source == SOURCE_PRIOR


def _run_pool(threads: int, initializer, state, worker, items) -> list:
    if threads <= 1:
        initializer(state)
        return [worker(item) for item in items]
    with get_context("fork").Pool(threads, initializer, (state,)) as pool:
        return pool.map(worker, items)


class _Accumulator:
    def __init__(self, class_col: int):
        self.class_col = class_col
        self.nodes = 0
        self.fallbacks = 0

    def tally(self, rows, results) -> ConfusionCounts:
        counts = [[0, 0], [0, 0]]
        for row, (target, nodes, fell_back) in zip(rows, results):
            actual = _class_index(row, self.class_col, "test row")
            counts[actual][0 if target else 1] += 1
            self.nodes += nodes
            self.fallbacks += fell_back
        return ConfusionCounts(counts[0][0], counts[0][1], counts[1][0], counts[1][1])


def evaluate_cv(
    d: Dataset,
    params: QualityParams,
    k: int = 3,
    seed: int = 1,
    mode: str = MODE_LEVELS,
    overrides: dict | None = None,
    threads: int = 1,
    dataset_label: str = "data",
) -> EvaluationReport:
    started = time.perf_counter()
    folds = stratified_kfold(d, k, seed)
    acc = _Accumulator(d.class_col)
    fold_counts: list[ConfusionCounts] = []
    level_attrs = attrs_needing_grids(d.attributes, mode, overrides)
    for fold in folds:
        test_set = frozenset(fold)
        training = [row for i, row in enumerate(d.rows) if i not in test_set]
        grids = build_grids(d.attributes, training, d.class_col, level_attrs)
        state = (d.attributes, training, grids, d.class_col, mode, overrides, params)
        test_rows = [d.rows[i] for i in fold]
        results = _run_pool(
            threads, _init_fold_worker, state, _predict_fold_row, test_rows
        )
        fold_counts.append(acc.tally(test_rows, results))
    return _build_report(
        d, params, "cv", mode, k, seed, overrides, tuple(fold_counts), acc,
        dataset_label, started,
    )


def evaluate_loocv(
    d: Dataset,
    params: QualityParams,
    mode: str = MODE_LEVELS,
    overrides: dict | None = None,
    threads: int = 1,
    cap: int = LOOCV_CAP,
    force: bool = False,
    dataset_label: str = "data",
) -> EvaluationReport:
    started = time.perf_counter()
    n = len(d.rows)
    if n > cap and not force:
        raise DatasetTooLarge(
            f"{n} rows exceeds the leave-one-out guard of {cap}; pass force to override"
        )
    for i, row in enumerate(d.rows):
        _class_index(row, d.class_col, f"row {i}")
    state = (d, params, mode, overrides)
    results = _run_pool(
        threads, _init_loocv_worker, state, _predict_loocv_row, list(range(n))
    )
    acc = _Accumulator(d.class_col)
    pooled = acc.tally(d.rows, results)
    return _build_report(
        d, params, "loocv", mode, None, None, overrides, (pooled,), acc,
        dataset_label, started,
    )


def _build_report(
    d, params, method, mode, k, seed, overrides, fold_counts, acc, label, started
) -> EvaluationReport:
    pooled = fold_counts[0]
    for counts in fold_counts[1:]:
        pooled = pooled.add(counts)
    total = pooled.total
    return EvaluationReport(
        dataset_label=label,
        method=method,
        mode=mode,
        k=k,
        seed=seed,
        params=params,
        overrides=dict(overrides or {}),
        class_labels=d.class_values,
        n_rows=len(d.rows),
        folds=fold_counts if method == "cv" else (),
        pooled=pooled,
        correctness=pooled.correct / total,
        fallback_fraction=acc.fallbacks / total,
        mean_nodes=acc.nodes / total,
        wall_seconds=time.perf_counter() - started,
    )


def render_report(r: EvaluationReport) -> str:
    """Line-oriented key=value text; excludes wall time and worker count."""
    lines = [
        f"dataset={r.dataset_label}",
        f"method={r.method}",
        f"mode={r.mode}",
    ]
    if r.method == "cv":
        lines.append(f"folds={r.k}")
        lines.append(f"seed={r.seed}")
    if r.overrides:
        forced = ",".join(f"{i}:{m}" for i, m in sorted(r.overrides.items()))
        lines.append(f"overrides={forced}")
    p = r.params
    lines += [
        f"weight={p.weight!r}",
        f"min_cover={p.min_cover!r}",
        f"min_mism={p.min_mism!r}",
        f"max_terms={p.max_terms}",
        f"keep_frac={p.keep_frac!r}",
        f"eps={p.eps!r}",
        f"rows={r.n_rows}",
        f"tests={r.n_tests}",
        f"correctness={r.correctness:.6f}",
        f"fallback_fraction={r.fallback_fraction:.6f}",
        f"all_fallback={'true' if r.fallback_fraction == 1.0 else 'false'}",
        f"mean_nodes={r.mean_nodes:.6f}",
    ]
    for i, counts in enumerate(r.folds):
        lines.append(f"fold={i} tests={counts.total} correct={counts.correct}")
    lines.append("confusion:")
    pos, neg = r.class_labels
    total = r.n_tests
    cells = (
        (pos, pos, r.pooled.pos_pos),
        (pos, neg, r.pooled.pos_neg),
        (neg, pos, r.pooled.neg_pos),
        (neg, neg, r.pooled.neg_neg),
    )
    for actual, predicted, count in cells:
        lines.append(
            f"actual={actual} predicted={predicted} "
            f"count={count} proportion={count / total:.6f}"
        )
    return "\n".join(lines) + "\n"
