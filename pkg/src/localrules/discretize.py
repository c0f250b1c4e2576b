"""Supervised discretization: level grids for ordered and continuous attributes.

Continuous attributes get cut points from recursive entropy minimization with
the minimum-description-length stopping rule; ordered discrete attributes use
every declared value as a level. The resulting grid feeds the encoder's
boundary components.
"""

from __future__ import annotations

import math
from collections import Counter

from .data import (
    BOOL_KIND,
    CONTINUOUS_KIND,
    NOMINAL_KIND,
    ORDERED_KIND,
    Attribute,
)
from .errors import EmptyInput, LengthMismatch, WrongKind


def _entropy(counts) -> float:
    n = sum(counts)
    if n == 0:
        return 0.0
    h = 0.0
    for c in counts:
        if c:
            p = c / n
            h -= p * math.log2(p)
    return h


def _midpoint(a: float, b: float) -> float | None:
    # Halve first so the sum cannot overflow; reject degenerate float gaps.
    mid = a / 2 + b / 2
    return mid if a < mid < b else None


def best_split(pairs: list[tuple[float, object]]) -> tuple[int, float, float] | None:
    """Lowest-weighted-entropy cut for a value-sorted (value, label) list.

    Returns (boundary index, cut value, weighted entropy); ties go to the
    leftmost cut. None when no two distinct values exist.
    """
    n = len(pairs)
    left: Counter = Counter()
    right = Counter(label for _, label in pairs)
    best: tuple[int, float, float] | None = None
    for i in range(n - 1):
        label = pairs[i][1]
        left[label] += 1
        right[label] -= 1
        if pairs[i][0] == pairs[i + 1][0]:
            continue
        cut = _midpoint(pairs[i][0], pairs[i + 1][0])
        if cut is None:
            continue
        w = ((i + 1) * _entropy(left.values()) + (n - i - 1) * _entropy(right.values())) / n
        if best is None or w < best[2]:
            best = (i, cut, w)
    return best


def _mdl_accepts(pairs, split_at: int, w: float) -> bool:
    n = len(pairs)
    whole = Counter(label for _, label in pairs)
    lo = Counter(label for _, label in pairs[: split_at + 1])
    hi = Counter(label for _, label in pairs[split_at + 1 :])
    e, e1, e2 = _entropy(whole.values()), _entropy(lo.values()), _entropy(hi.values())
    k, k1, k2 = len(whole), len(lo), len(hi)
    gain = e - w
    threshold = math.log2(n - 1) / n + (
        math.log2(3**k - 2) - k * e + k1 * e1 + k2 * e2
    ) / n
    return gain > threshold


def _recurse(pairs: list[tuple[float, object]], out: list[float]) -> None:
    if len(pairs) < 2 or len({label for _, label in pairs}) < 2:
        return
    found = best_split(pairs)
    if found is None:
        return
    split_at, cut, w = found
    if not _mdl_accepts(pairs, split_at, w):
        return
    _recurse(pairs[: split_at + 1], out)
    out.append(cut)
    _recurse(pairs[split_at + 1 :], out)


def entropy_mdl_cuts(values, labels) -> list[float]:
    """Cut points for one continuous attribute given binary class labels.

    Inputs must be missing-free and of equal length >= 2; the result is a
    strictly increasing (possibly empty) list of thresholds, each strictly
    between two adjacent observed values.
    """
    if len(values) != len(labels):
        raise LengthMismatch(f"{len(values)} values vs {len(labels)} labels")
    if len(values) < 2:
        raise EmptyInput("need at least 2 values to consider a cut")
    pairs = sorted(zip(values, labels), key=lambda p: p[0])
    out: list[float] = []
    _recurse(pairs, out)
    return out


def initial_grid(attributes: tuple[Attribute, ...], rows, attr: int, class_col: int):
    """Level grid for one attribute, computed from the given training rows.

    Ordered attributes use every declared value (as category indices);
    continuous attributes use the entropy cuts. Fewer than two usable rows,
    or a single-class column, yields an empty grid: the attribute then simply
    contributes no boundary components.
    """
    a = attributes[attr]
    if a.kind == ORDERED_KIND:
        assert a.values is not None
        return tuple(range(len(a.values)))
    if a.kind != CONTINUOUS_KIND:
        raise WrongKind(f"attribute {a.name!r} is {a.kind}, not ordered/continuous")
    pairs = [(row[attr], row[class_col]) for row in rows if row[attr] is not None]
    if len(pairs) < 2:
        return ()
    return tuple(entropy_mdl_cuts([v for v, _ in pairs], [g for _, g in pairs]))


def build_grids(attributes, rows, class_col: int, level_attrs) -> dict[int, tuple]:
    """Grids for every attribute index in level_attrs.

    Unlike initial_grid this also accepts nominal and boolean attributes,
    which arise when an encoding override forces level treatment on an
    unordered attribute: their declared value order becomes the grid.
    """
    grids: dict[int, tuple] = {}
    for attr in level_attrs:
        a = attributes[attr]
        if a.kind == NOMINAL_KIND:
            assert a.values is not None
            grids[attr] = tuple(range(len(a.values)))
        elif a.kind == BOOL_KIND:
            grids[attr] = (False, True)
        else:
            grids[attr] = initial_grid(attributes, rows, attr, class_col)
    return grids
