"""Depth-first enumeration of candidate term sets with sound pruning.

Subsets are enumerated canonically (component ids strictly increasing along a
path), so each set is formed at most once. Five prunes apply at a node:

  1. depth: paths stop at max_terms.
  2. group exclusivity: at most one lower-side and one upper-side component of
     one attribute per path (a second one collapses into a single component,
     so those sets are duplicates by construction).
  3. perfect cutoff: a node whose match set is pure (correctness >= 1 - eps)
     is recorded and not expanded; a superset can only shrink a pure match
     set, and the companion "blocked" test below makes this order-independent.
  4. coverage floor: a node is dropped when, for every class, even a
     perfectly correct descendant at the node's per-class match count could
     not reach the current acceptance threshold. The per-class count floors
     are found by scanning the same float expression the scorer uses, so a
     rule sitting exactly on the threshold is never lost.
  5. term redundancy: every term must uniquely exclude rows. The rows
     matching all other terms but mismatching this one must exceed the
     mismatch floor for at least one class. Mismatch sets only shrink along a
     path, so a violation prunes the whole subtree.

"Blocked" formalizes the perfect cutoff without reference to traversal
order: a set is blocked when some one-term drop has a nonempty match set of
correctness >= 1 - eps. At eps = 0 a set survives (not blocked, admissible)
exactly when it properly contains no nonempty pure subset, which is what the
unpruned reference enumeration checks as a per-set predicate.

The acceptance threshold tightens dynamically to keep_frac * best-so-far; a
final filter re-applies max(base_threshold, keep_frac * best), so the result
is independent of the order in which rules are found. The search itself is
sequential and deterministic; callers parallelize across prediction points.

nodes_visited counts candidate sets actually formed and scored (children of a
pruned node, and of a node with an empty match set, are never formed; every
term of an empty node's child would have an empty mismatch set, so those
children are all inadmissible anyway).
"""

from __future__ import annotations

from dataclasses import dataclass

from .encode import EncodedInstance
from .errors import NoComponents, SingleClassTraining
from .rules import (
    Contingency,
    QualityParams,
    Rule,
    cover_floor_counts,
    min_cover_count,
    mismatch_floors,
    quality,
    select_target,
)


@dataclass(frozen=True)
class SearchOutcome:
    rules: tuple[Rule, ...]  # sorted by descending quality, then term ids
    best_quality: float | None  # None when nothing was accepted
    final_threshold: float  # max(base_threshold, keep_frac * best_quality)
    nodes_visited: int


def _sorted_rules(found: list[Rule]) -> tuple[Rule, ...]:
    return tuple(sorted(found, key=lambda r: (-r.quality, r.term_ids)))


def search_local_rules(inst: EncodedInstance, params: QualityParams) -> SearchOutcome:
    m = inst.n_components
    if m == 0:
        raise NoComponents("prediction point yields no components")
    if inst.n_pos == 0 or inst.n_neg == 0:
        raise SingleClassTraining("training rows contain a single class")

    comps = inst.components
    class_bits = inst.class_bits
    n_pos, n_neg = inst.n_pos, inst.n_neg
    full_mask = (1 << inst.n_rows) - 1
    weight = params.weight
    keep = params.keep_frac
    min_corr = 1.0 - params.eps
    mism_floor_pos, mism_floor_neg = mismatch_floors(params, n_pos, n_neg)

    threshold = params.base_threshold
    floor_pos, floor_neg = cover_floor_counts(threshold, n_pos, n_neg, weight)

    found: list[Rule] = []
    best: float | None = None
    visits = 0

    def walk(term_ids, match, drops, used_groups, last_cid, depth):
        nonlocal threshold, floor_pos, floor_neg, best, visits
        for cid in range(last_cid + 1, m):
            comp = comps[cid]
            gk = comp.group_key
            if gk is not None and gk in used_groups:
                continue
            child_match = match & comp.match_bits
            visits += 1
            cpos = (child_match & class_bits).bit_count()
            cneg = child_match.bit_count() - cpos
            if cpos < floor_pos and cneg < floor_neg:
                continue  # no descendant can reach the threshold

            child_drops = [d & comp.match_bits for d in drops]
            child_drops.append(match)
            admissible = True
            blocked = False
            for d in child_drops:
                mism = d ^ child_match  # child_match is a subset of every drop
                mp = (mism & class_bits).bit_count()
                if not (mp > mism_floor_pos or mism.bit_count() - mp > mism_floor_neg):
                    admissible = False
                    break
                if d:
                    dp = (d & class_bits).bit_count()
                    dn = d.bit_count() - dp
                    if (dp if dp >= dn else dn) >= min_corr * (dp + dn):
                        blocked = True
                        break
            if not admissible or blocked:
                continue

            table = Contingency(cpos, cneg, n_pos - cpos, n_neg - cneg)
            target = select_target(table)
            q = quality(table, target, weight)
            child_ids = term_ids + (cid,)
            if q >= threshold:
                found.append(Rule(child_ids, child_match, table, target, q))
                if best is None or q > best:
                    best = q
                    if keep * q > threshold:
                        threshold = keep * q
                        floor_pos = min_cover_count(threshold, n_pos, weight, floor_pos)
                        floor_neg = min_cover_count(threshold, n_neg, weight, floor_neg)

            if depth + 1 >= params.max_terms or child_match == 0:
                continue
            n_match = cpos + cneg
            if (cpos if cpos >= cneg else cneg) >= min_corr * n_match:
                continue  # pure enough; supersets are blocked by definition
            child_groups = used_groups if gk is None else used_groups | {gk}
            walk(child_ids, child_match, child_drops, child_groups, cid, depth + 1)

    walk((), full_mask, [], frozenset(), -1, 0)

    if best is None:
        return SearchOutcome((), None, params.base_threshold, visits)
    final = max(params.base_threshold, keep * best)
    kept = [r for r in found if r.quality >= final]
    return SearchOutcome(_sorted_rules(kept), best, final, visits)


def node_visit_count(inst: EncodedInstance, params: QualityParams) -> int:
    """Instrumentation entry point: candidate sets formed for this instance."""
    return search_local_rules(inst, params).nodes_visited
