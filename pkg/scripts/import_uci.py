#!/usr/bin/env python3
"""Convert raw UCI benchmark files into the data/ CSV + schema format.

The congressional voting and diabetes datasets are observational and cannot
be regenerated, so this sandbox ships only their schemas. Fetch the raw
files yourself and run this converter:

    python scripts/import_uci.py vote house-votes-84.data
    python scripts/import_uci.py pima pima-indians-diabetes.data
    python scripts/import_uci.py diabetes pima-indians-diabetes.data

pima and diabetes are two published result lines over the same 768-row
source file, so both kinds accept it. Each conversion asserts the published
row and class counts before writing; a truncated or mislabeled download
fails loudly instead of producing a plausible-looking file.
"""

from __future__ import annotations

import csv
import sys
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

VOTE_COLUMNS = (
    "handicapped-infants",
    "water-project-cost-sharing",
    "adoption-of-the-budget-resolution",
    "physician-fee-freeze",
    "el-salvador-aid",
    "religious-groups-in-schools",
    "anti-satellite-test-ban",
    "aid-to-nicaraguan-contras",
    "mx-missile",
    "immigration",
    "synfuels-corporation-cutback",
    "education-spending",
    "superfund-right-to-sue",
    "crime",
    "duty-free-exports",
    "export-administration-act-south-africa",
)

PIMA_COLUMNS = (
    "pregnancies",
    "glucose",
    "blood-pressure",
    "skin-thickness",
    "insulin",
    "bmi",
    "pedigree",
    "age",
)


def _read_records(raw: Path, n_fields: int) -> list[list[str]]:
    records = []
    with raw.open(newline="", encoding="utf-8") as fh:
        for recno, rec in enumerate(csv.reader(fh)):
            if not rec:
                continue
            if len(rec) != n_fields:
                sys.exit(f"{raw}: record {recno} has {len(rec)} fields, expected {n_fields}")
            records.append([tok.strip() for tok in rec])
    return records


def convert_vote(raw: Path) -> tuple[str, list[list[str]]]:
    # raw layout: party first, then 16 y/n/? votes
    records = _read_records(raw, 17)
    if len(records) != 435:
        sys.exit(f"{raw}: expected 435 records, got {len(records)}")
    rows = []
    tally = {"democrat": 0, "republican": 0}
    for rec in records:
        party, votes = rec[0], rec[1:]
        if party not in tally:
            sys.exit(f"{raw}: unknown party label {party!r}")
        bad = [v for v in votes if v not in ("y", "n", "?")]
        if bad:
            sys.exit(f"{raw}: unexpected vote token(s) {bad!r}")
        tally[party] += 1
        rows.append(votes + [party])
    if tally != {"democrat": 267, "republican": 168}:
        sys.exit(f"{raw}: class counts {tally} do not match the published 267/168")
    return "vote", rows


def convert_pima(raw: Path, out_name: str) -> tuple[str, list[list[str]]]:
    records = _read_records(raw, 9)
    if len(records) != 768:
        sys.exit(f"{raw}: expected 768 records, got {len(records)}")
    rows = []
    positives = 0
    for recno, rec in enumerate(records):
        try:
            [float(tok) for tok in rec[:8]]
        except ValueError:
            sys.exit(f"{raw}: record {recno} has a non-numeric measurement")
        if rec[8] not in ("0", "1"):
            sys.exit(f"{raw}: record {recno} class must be 0 or 1, got {rec[8]!r}")
        positives += rec[8] == "1"
        rows.append(rec[:8] + ["positive" if rec[8] == "1" else "negative"])
    if positives != 268:
        sys.exit(f"{raw}: expected 268 positives, got {positives}")
    return out_name, rows


def main(argv: list[str]) -> int:
    if len(argv) != 2 or argv[0] not in ("vote", "pima", "diabetes"):
        print(__doc__, file=sys.stderr)
        return 1
    kind, raw = argv[0], Path(argv[1])
    if not raw.exists():
        sys.exit(f"raw file not found: {raw}")
    if kind == "vote":
        name, rows = convert_vote(raw)
        header = VOTE_COLUMNS + ("party",)
    else:
        name, rows = convert_pima(raw, kind)
        header = PIMA_COLUMNS + ("c",)
    out = DATA_DIR / f"{name}.csv"
    body = "\n".join(",".join(r) for r in rows)
    out.write_text(",".join(header) + "\n" + body + "\n", encoding="utf-8")
    print(f"{out}: {len(rows)} rows")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
