"""Antecedent components for one prediction point.

Each component is a Boolean feature of the form "this row agrees with the
prediction row", together with its precomputed match set over the training
rows (an int bitmask, bit n = training row n matches).

Unordered attributes yield one equality component. Ordered and continuous
attributes in level mode yield one component per grid level y: the underlying
predicate is (value <= y), and a training row matches when its predicate truth
equals the prediction row's. Levels the prediction value exceeds therefore
match rows with value > y ("lower" side, they bound the point from below);
the remaining levels match rows with value <= y ("upper" side). At most one
component per side of one attribute can appear in a conjunction without
redundancy, which is what the search's group exclusivity exploits.

Missing values never support a rule: a missing training value mismatches
every component of its attribute, and a missing prediction value suppresses
the attribute entirely.
"""

from __future__ import annotations

from dataclasses import dataclass

from .data import (
    CLASS_KIND,
    CONTINUOUS_KIND,
    IGNORE_KIND,
    ORDERED_KIND,
    Attribute,
    format_cell,
)
from .errors import MissingGrid

EXACT = "exact"
LOWER = "lower"
UPPER = "upper"

MODE_EXACT = "exact"
MODE_LEVELS = "levels"


@dataclass(frozen=True)
class Component:
    cid: int
    attr: int
    kind: str  # EXACT, LOWER, or UPPER
    match_bits: int
    display: str
    level_index: int | None = None
    level: object = None  # grid threshold for LOWER/UPPER
    value: object = None  # prediction-row value for EXACT

    @property
    def group_key(self) -> tuple[int, str] | None:
        # Exact components are mutually independent; boundary components of
        # one attribute and side are interchangeable up to conjunction collapse.
        return None if self.kind == EXACT else (self.attr, self.kind)


@dataclass(frozen=True)
class EncodedInstance:
    components: tuple[Component, ...]
    n_rows: int
    class_bits: int  # bit n set = training row n has the positive class
    n_pos: int
    n_neg: int
    groups: dict
    class_labels: tuple[str, str]

    @property
    def n_components(self) -> int:
        return len(self.components)


def effective_mode(attr: Attribute, mode: str, overrides: dict | None, index: int) -> str:
    if attr.kind in (CLASS_KIND, IGNORE_KIND):
        return ""
    if overrides and index in overrides:
        return overrides[index]
    if mode == MODE_LEVELS and attr.kind in (ORDERED_KIND, CONTINUOUS_KIND):
        return MODE_LEVELS
    return MODE_EXACT


def attrs_needing_grids(attributes, mode: str, overrides: dict | None = None) -> list[int]:
    return [
        i
        for i, a in enumerate(attributes)
        if effective_mode(a, mode, overrides, i) == MODE_LEVELS
    ]


def _level_token(attr: Attribute, level) -> str:
    if attr.values is not None:
        return attr.values[level]
    if isinstance(level, bool):
        return "T" if level else "F"
    return repr(level)


def _exact_component(cid, i, attr, v0, training_rows) -> Component:
    bits = 0
    for n, row in enumerate(training_rows):
        if row[i] is not None and row[i] == v0:
            bits |= 1 << n
    return Component(
        cid=cid,
        attr=i,
        kind=EXACT,
        match_bits=bits,
        display=f"{attr.name}={format_cell(v0, attr)}",
        value=v0,
    )


def _level_components(next_cid, i, attr, v0, grid, training_rows) -> list[Component]:
    out = []
    for l, y in enumerate(grid):
        if v0 <= y:
            kind, op = UPPER, "<="
        else:
            kind, op = LOWER, ">"
        bits = 0
        for n, row in enumerate(training_rows):
            v = row[i]
            if v is None:
                continue
            if (v <= y) if kind == UPPER else (v > y):
                bits |= 1 << n
        out.append(
            Component(
                cid=next_cid + l,
                attr=i,
                kind=kind,
                match_bits=bits,
                display=f"{attr.name}{op}{_level_token(attr, y)}",
                level_index=l,
                level=y,
            )
        )
    return out


def encode(
    attributes: tuple[Attribute, ...],
    training_rows,
    pred_row,
    class_col: int,
    grids: dict | None = None,
    mode: str = MODE_LEVELS,
    overrides: dict | None = None,
) -> EncodedInstance:
    """Build the component set for pred_row against training_rows.

    grids maps attribute index -> ascending level tuple and is required for
    every attribute that ends up in level mode (empty tuple = the attribute
    contributes nothing). Component ids are dense and canonically ordered:
    equality components first by attribute, then boundary components by
    (attribute, level).
    """
    exact_cols: list[int] = []
    level_cols: list[int] = []
    for i, attr in enumerate(attributes):
        eff = effective_mode(attr, mode, overrides, i)
        if not eff or pred_row[i] is None:
            continue
        (level_cols if eff == MODE_LEVELS else exact_cols).append(i)

    components: list[Component] = []
    for i in exact_cols:
        components.append(
            _exact_component(len(components), i, attributes[i], pred_row[i], training_rows)
        )
    for i in level_cols:
        if grids is None or i not in grids:
            raise MissingGrid(f"attribute {attributes[i].name!r} needs a level grid")
        components.extend(
            _level_components(
                len(components), i, attributes[i], pred_row[i], grids[i], training_rows
            )
        )

    class_bits = 0
    n = len(training_rows)
    for row_index, row in enumerate(training_rows):
        g = row[class_col]
        assert g is not None, "training rows must be labeled"
        if g == 0:
            class_bits |= 1 << row_index
    n_pos = class_bits.bit_count()

    groups: dict = {}
    for c in components:
        if c.group_key is not None:
            groups.setdefault(c.group_key, []).append(c.cid)
    groups = {k: tuple(v) for k, v in groups.items()}

    class_values = attributes[class_col].values
    assert class_values is not None
    return EncodedInstance(
        components=tuple(components),
        n_rows=n,
        class_bits=class_bits,
        n_pos=n_pos,
        n_neg=n - n_pos,
        groups=groups,
        class_labels=(class_values[0], class_values[1]),
    )


def component_truth_ladder(attr_components, row_value) -> tuple[bool, ...]:
    """Per-level predicate truths (value <= y_l) for one attribute's components.

    Test-suite helper; the components must be that attribute's boundary
    components sorted by level index, and row_value must not be missing.
    """
    assert row_value is not None
    return tuple(row_value <= c.level for c in attr_components)
