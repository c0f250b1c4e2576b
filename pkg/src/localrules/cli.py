"""Command-line front end: reproducible runs over CSV datasets.

Subcommands: predict, rules, evaluate, discretize, selftest. Every run
echoes its effective configuration into the output so results are
self-describing. Worker count and wall time never appear in the output
text (wall time goes to the error stream), so files written with --out are
byte-identical for any --threads value.

Exit codes: 0 success, 1 usage or parameter error, 2 data error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .data import Attribute, Dataset, load_dataset
from .discretize import build_grids
from .encode import attrs_needing_grids, encode
from .errors import BadParams, DataError
from .evaluate import evaluate_cv, evaluate_loocv, render_report
from .exhaustive import exhaustive_rules
from .predict import predict_encoded
from .rules import QualityParams, format_rule
from .search import search_local_rules

_MODES = ("levels", "exact")


@dataclass(frozen=True)
class RunConfig:
    data: str
    schema: str
    mode: str
    weight: float
    min_cover: float
    min_mism: float
    max_terms: int
    keep_frac: float
    eps: float
    overrides: dict  # attribute index -> forced mode
    override_names: tuple[str, ...]  # as given, for echoing
    threads: int
    out: str | None

    def params(self) -> QualityParams:
        return QualityParams(
            weight=self.weight,
            min_cover=self.min_cover,
            min_mism=self.min_mism,
            max_terms=self.max_terms,
            keep_frac=self.keep_frac,
            eps=self.eps,
        )

    def echo_lines(self) -> list[str]:
        # Deliberately omits --threads and --out: the written report must
        # not depend on the worker count or on where it is stored.
        lines = [
            f"data={self.data}",
            f"schema={self.schema}",
            f"mode={self.mode}",
        ]
        if self.override_names:
            lines.append("overrides=" + ",".join(self.override_names))
        lines += [
            f"weight={self.weight!r}",
            f"min_cover={self.min_cover!r}",
            f"min_mism={self.min_mism!r}",
            f"max_terms={self.max_terms}",
            f"keep_frac={self.keep_frac!r}",
            f"eps={self.eps!r}",
        ]
        return lines


def _auto_threads() -> int:
    counter = getattr(os, "process_cpu_count", os.cpu_count)
    return counter() or 1


def _add_param_flags(ap: argparse.ArgumentParser) -> None:
    ap.add_argument("--data", required=True, help="CSV file with a header row")
    ap.add_argument("--schema", required=True, help="sidecar `name: kind` file")
    ap.add_argument("--lambda", dest="weight", type=float, default=0.75,
                    help="exclusion/coverage tradeoff weight (default 0.75)")
    ap.add_argument("--cmin", dest="min_cover", type=float, default=0.08,
                    help="minimal coverage share (default 0.08)")
    ap.add_argument("--cmin-mism", dest="min_mism", type=float, default=0.02,
                    help="minimal per-term mismatch share (default 0.02)")
    ap.add_argument("--max-depth", dest="max_terms", type=int, default=8,
                    help="maximal terms per rule (default 8)")
    ap.add_argument("--kappa", dest="keep_frac", type=float, default=1.0,
                    help="keep rules within this fraction of the best (default 1.0)")
    ap.add_argument("--eps", type=float, default=0.0,
                    help="correctness slack for the perfect cutoff (default 0)")
    ap.add_argument("--mode", choices=_MODES, default="levels",
                    help="ordered/continuous comparison mode (default levels)")
    ap.add_argument("--override", action="append", default=[], metavar="ATTR=MODE",
                    help="force a mode for one attribute (repeatable)")
    ap.add_argument("--threads", type=int, default=0,
                    help="worker processes; 0 = all available")
    ap.add_argument("--out", help="also write the output text to this file")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localrules",
        description="Lazy rule induction around single prediction points.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", help="predict the class of one row")
    _add_param_flags(p)
    p.add_argument("--row", type=int, default=0, help="row to predict (default 0)")
    p.add_argument("--show-rules", action="store_true", help="list the accepted rules")

    p = sub.add_parser("rules", help="list accepted rules for one row")
    _add_param_flags(p)
    p.add_argument("--row", type=int, default=0, help="prediction point (default 0)")

    p = sub.add_parser("evaluate", help="cross-validated average correctness")
    _add_param_flags(p)
    p.add_argument("--folds", type=int, default=3, help="fold count (default 3)")
    p.add_argument("--seed", type=int, default=1, help="shuffle seed (default 1)")
    p.add_argument("--loocv", action="store_true", help="leave-one-out instead of k-fold")
    p.add_argument("--force", action="store_true", help="ignore the leave-one-out size guard")

    p = sub.add_parser("discretize", help="print induced grids per attribute")
    _add_param_flags(p)

    p = sub.add_parser("selftest", help="randomized search-vs-reference trials")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", default=None)

    return parser


def _parse_overrides(specs, attributes: tuple[Attribute, ...]):
    names = {a.name: i for i, a in enumerate(attributes)}
    skip = {i for i, a in enumerate(attributes) if a.kind in ("class", "ignore")}
    overrides: dict[int, str] = {}
    for spec in specs:  # left to right, so a later flag wins
        name, sep, mode = spec.partition("=")
        if not sep or mode not in _MODES:
            raise BadParams(f"override {spec!r} is not ATTR={'|'.join(_MODES)}")
        if name == "*":
            overrides.update((i, mode) for i in range(len(attributes)) if i not in skip)
        elif name not in names:
            raise BadParams(f"override names unknown attribute {name!r}")
        else:
            overrides[names[name]] = mode
    return overrides


def _config(args) -> tuple[RunConfig, Dataset]:
    d = load_dataset(args.data, args.schema)
    overrides = _parse_overrides(args.override, d.attributes)
    cfg = RunConfig(
        data=args.data,
        schema=args.schema,
        mode=args.mode,
        weight=args.weight,
        min_cover=args.min_cover,
        min_mism=args.min_mism,
        max_terms=args.max_terms,
        keep_frac=args.keep_frac,
        eps=args.eps,
        overrides=overrides,
        override_names=tuple(args.override),
        threads=args.threads if args.threads > 0 else _auto_threads(),
        out=args.out,
    )
    return cfg, d


def _emit(text: str, out: str | None) -> None:
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text, encoding="utf-8")


def _prepare_row(cfg: RunConfig, d: Dataset, row: int):
    from .data import split_for_prediction
    from .predict import mask_class

    pred_row, training = split_for_prediction(d, row)
    grids = build_grids(
        d.attributes,
        training,
        d.class_col,
        attrs_needing_grids(d.attributes, cfg.mode, cfg.overrides),
    )
    return encode(
        d.attributes,
        training,
        mask_class(pred_row, d.class_col),
        d.class_col,
        grids,
        cfg.mode,
        cfg.overrides,
    )


def _cmd_predict(args) -> int:
    cfg, d = _config(args)
    inst = _prepare_row(cfg, d, args.row)
    p = predict_encoded(inst, cfg.params())
    lines = cfg.echo_lines() + [
        f"row={args.row}",
        f"class={p.label}",
        f"probability={p.probability:.6f}",
        f"source={p.source}",
        f"rules={len(p.rules)}",
        f"nodes={p.search.nodes_visited}",
    ]
    if args.show_rules:
        lines += [format_rule(r, inst.components, inst.class_labels) for r in p.rules]
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0


def _cmd_rules(args) -> int:
    cfg, d = _config(args)
    inst = _prepare_row(cfg, d, args.row)
    outcome = search_local_rules(inst, cfg.params())
    best = "none" if outcome.best_quality is None else f"{outcome.best_quality:.6f}"
    lines = cfg.echo_lines() + [
        f"row={args.row}",
        f"rules={len(outcome.rules)}",
        f"best={best}",
        f"threshold={outcome.final_threshold:.6f}",
        f"nodes={outcome.nodes_visited}",
    ]
    lines += [format_rule(r, inst.components, inst.class_labels) for r in outcome.rules]
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0


def _cmd_evaluate(args) -> int:
    cfg, d = _config(args)
    label = Path(cfg.data).stem
    started = time.perf_counter()
    if args.loocv:
        report = evaluate_loocv(
            d, cfg.params(), cfg.mode, cfg.overrides, cfg.threads,
            force=args.force, dataset_label=label,
        )
    else:
        report = evaluate_cv(
            d, cfg.params(), args.folds, args.seed, cfg.mode, cfg.overrides,
            cfg.threads, dataset_label=label,
        )
    text = f"data={cfg.data}\nschema={cfg.schema}\n" + render_report(report)
    _emit(text, cfg.out)
    print(f"wall_seconds={time.perf_counter() - started:.3f}", file=sys.stderr)
    return 0


def _cmd_discretize(args) -> int:
    cfg, d = _config(args)
    wanted = attrs_needing_grids(d.attributes, cfg.mode, cfg.overrides)
    grids = build_grids(d.attributes, d.rows, d.class_col, wanted)
    lines = cfg.echo_lines()
    for i in wanted:
        attr = d.attributes[i]
        shown = (
            attr.values[y] if attr.values is not None else repr(y)
            for y in grids.get(i, ())
        )
        lines.append(f"{attr.name}: " + " ".join(shown))
    _emit("\n".join(lines) + "\n", cfg.out)
    return 0


_SELFTEST_POOL = (
    Attribute("b1", "bool"),
    Attribute("b2", "bool"),
    Attribute("n1", "nominal", ("u", "v", "w")),
    Attribute("o1", "ordered", ("1", "2", "3", "4")),
    Attribute("x1", "continuous"),
)


def _selftest_cell(rng: random.Random, attr: Attribute):
    if rng.random() < 0.08:
        return None
    if attr.kind == "bool":
        return rng.random() < 0.5
    if attr.kind in ("nominal", "ordered"):
        return rng.randrange(len(attr.values))
    return float(rng.randrange(20))


def _selftest_instance(rng: random.Random):
    while True:
        attrs = tuple(rng.sample(_SELFTEST_POOL, rng.randrange(2, 5))) + (
            Attribute("c", "class", ("y", "n")),
        )
        class_col = len(attrs) - 1
        rows = [
            tuple(_selftest_cell(rng, a) for a in attrs[:-1]) + (rng.randrange(2),)
            for _ in range(rng.randrange(12, 150))
        ]
        pred = tuple(_selftest_cell(rng, a) for a in attrs[:-1]) + (None,)
        mode = "exact" if rng.random() < 0.25 else "levels"
        grids = build_grids(
            attrs, rows, class_col, attrs_needing_grids(attrs, mode, None)
        )
        inst = encode(attrs, rows, pred, class_col, grids, mode)
        if not 1 <= inst.n_components <= 12:
            continue
        if inst.n_pos == 0 or inst.n_neg == 0:
            continue
        params = QualityParams(
            weight=rng.choice((0.5, 0.75, 0.9)),
            min_cover=rng.choice((0.0, 0.02, 0.08, 0.2)),
            min_mism=rng.choice((0.0, 0.02, 0.1)),
            max_terms=rng.randrange(2, 9),
            keep_frac=rng.choice((0.8, 0.95, 1.0)),
        )
        return inst, params


def _same_outcome(a, b) -> bool:
    if len(a.rules) != len(b.rules):
        return False
    for x, y in zip(a.rules, b.rules):
        if x.term_ids != y.term_ids or x.target != y.target:
            return False
        if abs(x.quality - y.quality) > 1e-12:
            return False
    if (a.best_quality is None) != (b.best_quality is None):
        return False
    if a.best_quality is not None and abs(a.best_quality - b.best_quality) > 1e-12:
        return False
    return abs(a.final_threshold - b.final_threshold) <= 1e-12


def run_selftest(trials: int, seed: int) -> tuple[int, int]:
    rng = random.Random(seed)
    passed = failed = 0
    for trial in range(trials):
        inst, params = _selftest_instance(rng)
        if _same_outcome(search_local_rules(inst, params), exhaustive_rules(inst, params)):
            passed += 1
        else:
            failed += 1
            print(
                f"trial {trial}: search and reference disagree "
                f"(components={inst.n_components}, rows={inst.n_rows})",
                file=sys.stderr,
            )
    return passed, failed


def _cmd_selftest(args) -> int:
    passed, failed = run_selftest(args.trials, args.seed)
    text = f"trials={args.trials}\npassed={passed}\nfailed={failed}\n"
    _emit(text, args.out)
    return 0 if failed == 0 else 1


_COMMANDS = {
    "predict": _cmd_predict,
    "rules": _cmd_rules,
    "evaluate": _cmd_evaluate,
    "discretize": _cmd_discretize,
    "selftest": _cmd_selftest,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return _COMMANDS[args.command](args)
    except BadParams as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
