"""Pruned search: frozen small cases, invariants, and reference equivalence.

Hand-checked expectations frozen here:

* Conflict pair (helpers.conflict_instance): components 0 and 1 perfectly
  predict opposite classes at full coverage. Node {0} scores 1.0 (exclusion
  50/50, coverage 50/50), tightens the threshold to 0.95, and is pure, so it
  is never expanded; {1} also scores 1.0. Exactly 2 nodes are formed and both
  singletons are accepted. The two-term set never exists on either side: the
  search never builds it, the reference blocks it (its one-term drops are the
  pure opposite-class match sets).

* Hypercube (helpers.hypercube_instance, m=10): 1024 rows, class = parity.
  Every subcube of dimension >= 1 splits evenly by class, so with zeroed
  floors and keep_frac=1e-9 no prune ever fires and the walk forms every
  nonempty subset exactly once: 2^10 - 1 = 1023 nodes. Only the full
  conjunction (match = the single all-true row, a positive) reaches the base
  threshold: alpha = 0.75 * (512/512) + 0.25 * (1/512) = 0.75048828125, a
  dyadic rational, so equality is exact.

* Disjoint components: x1 matches rows 0-4, x2 matches rows 5-9, x3 matches
  all ten, classes alternate. Nodes formed: {0}, {0,1} (empty match, floor-
  pruned at min_cover=0.08 but still counted), {0,2} (term 2 excludes
  nothing: inadmissible), {1}, {1,2}, {2} = 6 of the 7 subsets; {0,1,2} is
  never formed because the empty node {0,1} is not expanded.
"""

import random
from dataclasses import replace

import pytest

from helpers import (
    assert_equivalent,
    conflict_instance,
    hypercube_instance,
    outcome_key,
    permuted_copy,
    random_instance,
)
from localrules.data import Attribute
from localrules.encode import encode
from localrules.errors import NoComponents, SingleClassTraining
from localrules.exhaustive import exhaustive_rules
from localrules.rules import QualityParams
from localrules.search import node_visit_count, search_local_rules


def test_conflicting_components_yield_two_perfect_rules():
    inst, params = conflict_instance()
    out = search_local_rules(inst, params)
    assert out.nodes_visited == 2
    assert [r.term_ids for r in out.rules] == [(0,), (1,)]
    assert [r.quality for r in out.rules] == [1.0, 1.0]
    assert [r.target for r in out.rules] == [True, False]
    assert out.best_quality == 1.0
    assert out.final_threshold == 0.95
    assert out.rules[0].match_bits == (1 << 50) - 1
    assert out.rules[1].match_bits == ((1 << 100) - 1) ^ ((1 << 50) - 1)


def test_hypercube_forms_every_nonempty_subset_once():
    inst, params = hypercube_instance(10)
    out = search_local_rules(inst, params)
    assert out.nodes_visited == 2**10 - 1
    assert len(out.rules) == 1
    rule = out.rules[0]
    assert rule.term_ids == tuple(range(10))
    assert rule.quality == 0.75048828125
    assert rule.match_bits == 1 << 1023
    assert out.best_quality == 0.75048828125


def test_small_hypercube_node_count():
    inst, params = hypercube_instance(4)
    assert node_visit_count(inst, params) == 15


def _disjoint_instance():
    attrs = (
        Attribute("x1", "bool"),
        Attribute("x2", "bool"),
        Attribute("x3", "bool"),
        Attribute("c", "class", ("y", "n")),
    )
    rows = [(i < 5, i >= 5, True, i % 2) for i in range(10)]
    return encode(attrs, rows, (True, True, True, None), 3)


def test_empty_match_node_is_counted_but_not_expanded():
    inst = _disjoint_instance()
    params = QualityParams(weight=0.75, min_cover=0.08, min_mism=0.0, max_terms=3)
    out = search_local_rules(inst, params)
    assert out.nodes_visited == 6
    for rule in out.rules:
        assert rule.match_bits != 0


def test_raising_min_cover_never_increases_node_count():
    rng = random.Random(11)
    for _ in range(25):
        inst, params = random_instance(rng)
        counts = [
            node_visit_count(inst, replace(params, min_cover=c))
            for c in (0.0, 0.08, 0.25)
        ]
        assert counts[0] >= counts[1] >= counts[2], counts


def test_keep_frac_one_accepts_only_ties_for_best():
    rng = random.Random(13)
    seen_any = False
    for _ in range(25):
        inst, params = random_instance(rng)
        out = search_local_rules(inst, replace(params, keep_frac=1.0))
        for rule in out.rules:
            assert rule.quality == out.best_quality
        seen_any = seen_any or bool(out.rules)
    assert seen_any


def test_component_relabeling_leaves_accepted_set_invariant():
    rng = random.Random(17)
    for _ in range(20):
        inst, params = random_instance(rng)
        perm = list(range(inst.n_components))
        rng.shuffle(perm)
        base = search_local_rules(inst, params)
        shuffled = search_local_rules(permuted_copy(inst, perm), params)
        remapped = {
            (frozenset(perm[i] for i in r.term_ids), r.target, r.quality)
            for r in shuffled.rules
        }
        assert remapped == {
            (frozenset(r.term_ids), r.target, r.quality) for r in base.rules
        }
        if base.best_quality is None:
            assert shuffled.best_quality is None
        else:
            assert shuffled.best_quality == base.best_quality


def test_accepted_rules_never_repeat_a_boundary_group():
    rng = random.Random(19)
    for _ in range(30):
        inst, params = random_instance(rng)
        out = search_local_rules(inst, params)
        for rule in out.rules:
            keys = [
                inst.components[cid].group_key
                for cid in rule.term_ids
                if inst.components[cid].group_key is not None
            ]
            assert len(keys) == len(set(keys))


def test_term_count_respects_depth_limit():
    rng = random.Random(23)
    for _ in range(15):
        inst, params = random_instance(rng)
        out = search_local_rules(inst, replace(params, max_terms=2))
        assert all(len(r.term_ids) <= 2 for r in out.rules)


def test_nonzero_eps_runs_and_keeps_rules_sorted():
    rng = random.Random(29)
    for _ in range(10):
        inst, params = random_instance(rng)
        out = search_local_rules(inst, replace(params, eps=0.3))
        qualities = [r.quality for r in out.rules]
        assert qualities == sorted(qualities, reverse=True)


def test_no_components_raises():
    inst, params = conflict_instance()
    broken = replace(inst, components=(), groups={})
    with pytest.raises(NoComponents):
        search_local_rules(broken, params)


def test_single_class_training_raises():
    inst, params = conflict_instance()
    broken = replace(inst, class_bits=0, n_pos=0, n_neg=inst.n_rows)
    with pytest.raises(SingleClassTraining):
        search_local_rules(broken, params)


def test_search_matches_reference_on_random_instances():
    rng = random.Random(7)
    nonempty = 0
    for _ in range(60):
        inst, params = random_instance(rng)
        out = search_local_rules(inst, params)
        assert_equivalent(out, exhaustive_rules(inst, params))
        nonempty += bool(out.rules)
    assert nonempty >= 10  # the generator must not produce only trivia


def test_outcome_is_deterministic():
    inst, params = conflict_instance()
    assert outcome_key(search_local_rules(inst, params).rules) == outcome_key(
        search_local_rules(inst, params).rules
    )
