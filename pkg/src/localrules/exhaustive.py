"""Unpruned reference enumeration used to certify the search.

Every nonempty term set up to max_terms is generated outright and tested
against the acceptance predicates directly: no subtree reasoning, no
threshold-driven skipping, every drop mask recomputed from scratch. Slow on
purpose; guarded to at most 16 components.

Group exclusivity is part of the rule-space definition rather than a prune
(two same-side components of one attribute collapse into one, so such sets
are duplicates of smaller sets), which keeps set equality with the search
well-defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .encode import EncodedInstance
from .errors import NoComponents, SingleClassTraining, TooManyComponents
from .rules import QualityParams, Rule, make_rule, mismatch_floors

MAX_COMPONENTS = 16


@dataclass(frozen=True)
class OracleResult:
    rules: tuple[Rule, ...]
    best_quality: float | None
    final_threshold: float
    subsets_examined: int


def exhaustive_rules(inst: EncodedInstance, params: QualityParams) -> OracleResult:
    m = inst.n_components
    if m == 0:
        raise NoComponents("prediction point yields no components")
    if m > MAX_COMPONENTS:
        raise TooManyComponents(f"{m} components; reference enumeration allows {MAX_COMPONENTS}")
    if inst.n_pos == 0 or inst.n_neg == 0:
        raise SingleClassTraining("training rows contain a single class")

    comps = inst.components
    class_bits = inst.class_bits
    full_mask = (1 << inst.n_rows) - 1
    floor_pos, floor_neg = mismatch_floors(params, inst.n_pos, inst.n_neg)
    min_corr = 1.0 - params.eps

    candidates: list[Rule] = []
    examined = 0
    for size in range(1, min(params.max_terms, m) + 1):
        for combo in combinations(range(m), size):
            groups = [comps[cid].group_key for cid in combo if comps[cid].group_key]
            if len(groups) != len(set(groups)):
                continue  # duplicate of a smaller set by conjunction collapse
            examined += 1

            keep = True
            for leave_out in combo:
                drop = full_mask
                for cid in combo:
                    if cid != leave_out:
                        drop &= comps[cid].match_bits
                mism = drop & ~comps[leave_out].match_bits
                mp = (mism & class_bits).bit_count()
                mn = mism.bit_count() - mp
                if not (mp > floor_pos or mn > floor_neg):
                    keep = False  # this term excludes nothing it may claim
                    break
                if drop:
                    dp = (drop & class_bits).bit_count()
                    dn = drop.bit_count() - dp
                    if max(dp, dn) >= min_corr * (dp + dn):
                        keep = False  # properly contains a (near-)pure rule
                        break
            if not keep:
                continue

            match = full_mask
            for cid in combo:
                match &= comps[cid].match_bits
            candidates.append(make_rule(combo, match, class_bits, inst.n_rows, params.weight))

    best = max((r.quality for r in candidates), default=None)
    if best is None or best < params.base_threshold:
        return OracleResult((), None, params.base_threshold, examined)
    final = max(params.base_threshold, params.keep_frac * best)
    kept = [r for r in candidates if r.quality >= final]
    kept.sort(key=lambda r: (-r.quality, r.term_ids))
    return OracleResult(tuple(kept), best, final, examined)
