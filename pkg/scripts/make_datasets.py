#!/usr/bin/env python3
"""Generate the synthetic benchmark datasets into data/.

The three monk problems enumerate the full 432-row attribute space with
their standard target functions. The tic-tac-toe dataset enumerates every
distinct final board of a played-out game (x moves first); a board is
positive when x has three in a row. Each generator asserts the published
row and class counts before anything is written, so a silent drift in the
definitions cannot produce a plausible-looking but wrong file.
"""

from __future__ import annotations

import sys
from itertools import product
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

MONK_DOMAINS = {
    "a1": (1, 2, 3),
    "a2": (1, 2, 3),
    "a3": (1, 2),
    "a4": (1, 2, 3),
    "a5": (1, 2, 3, 4),
    "a6": (1, 2),
}

MONK_TARGETS = {
    "monks1": lambda a1, a2, a3, a4, a5, a6: a1 == a2 or a5 == 1,
    "monks2": lambda *a: sum(1 for v in a if v == 1) == 2,
    "monks3": lambda a1, a2, a3, a4, a5, a6: (a5 == 3 and a4 == 1)
    or (a5 != 4 and a2 != 3),
}

MONK_POSITIVES = {"monks1": 216, "monks2": 142, "monks3": 228}


def monk_schema() -> str:
    lines = [f"{name}: ordered {{{', '.join(map(str, dom))}}}"
             for name, dom in MONK_DOMAINS.items()]
    lines.append("c: class {yes, no}")
    return "\n".join(lines) + "\n"


def write_monk(name: str) -> None:
    target = MONK_TARGETS[name]
    rows = []
    for combo in product(*MONK_DOMAINS.values()):
        rows.append(combo + ("yes" if target(*combo) else "no",))
    assert len(rows) == 432, f"{name}: expected 432 rows, got {len(rows)}"
    positives = sum(1 for r in rows if r[-1] == "yes")
    assert positives == MONK_POSITIVES[name], (
        f"{name}: expected {MONK_POSITIVES[name]} positives, got {positives}"
    )
    header = ",".join(list(MONK_DOMAINS) + ["c"])
    body = "\n".join(",".join(map(str, r)) for r in rows)
    (DATA_DIR / f"{name}.csv").write_text(header + "\n" + body + "\n", encoding="utf-8")
    (DATA_DIR / f"{name}.schema").write_text(monk_schema(), encoding="utf-8")
    print(f"{name}: 432 rows, {positives} positive")


WIN_LINES = (
    (0, 1, 2), (3, 4, 5), (6, 7, 8),  # rows
    (0, 3, 6), (1, 4, 7), (2, 5, 8),  # columns
    (0, 4, 8), (2, 4, 6),  # diagonals
)


def winner(board: tuple) -> str | None:
    for a, b, c in WIN_LINES:
        if board[a] is not None and board[a] == board[b] == board[c]:
            return board[a]
    return None


def final_boards() -> set[tuple]:
    """Distinct boards where a game actually ended: a win or a full board."""
    finals: set[tuple] = set()
    seen: set[tuple[tuple, str]] = set()

    def play(board: tuple, mover: str) -> None:
        if (board, mover) in seen:
            return
        seen.add((board, mover))
        if winner(board) is not None or all(v is not None for v in board):
            finals.add(board)
            return
        for i in range(9):
            if board[i] is None:
                play(board[:i] + (mover,) + board[i + 1 :], "o" if mover == "x" else "x")

    play((None,) * 9, "x")
    return finals


def write_tictactoe() -> None:
    finals = final_boards()
    assert len(finals) == 958, f"expected 958 final boards, got {len(finals)}"
    x_wins = sum(1 for b in finals if winner(b) == "x")
    o_wins = sum(1 for b in finals if winner(b) == "o")
    draws = len(finals) - x_wins - o_wins
    assert (x_wins, o_wins, draws) == (626, 316, 16), (x_wins, o_wins, draws)

    cells = [f"{r}{c}" for r in "tmb" for c in "lmr"]  # top-left .. bottom-right
    header = ",".join(cells + ["c"])
    lines = [header]
    for board in sorted(finals, key=lambda b: tuple(v or "b" for v in b)):
        tokens = [v if v is not None else "b" for v in board]
        tokens.append("positive" if winner(board) == "x" else "negative")
        lines.append(",".join(tokens))
    (DATA_DIR / "tictactoe.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    schema = "\n".join(f"{cell}: nominal {{x, o, b}}" for cell in cells)
    schema += "\nc: class {positive, negative}\n"
    (DATA_DIR / "tictactoe.schema").write_text(schema, encoding="utf-8")
    print(f"tictactoe: 958 rows, {x_wins} positive ({o_wins} o-wins, {draws} draws)")


def main() -> int:
    DATA_DIR.mkdir(exist_ok=True)
    for name in MONK_TARGETS:
        write_monk(name)
    write_tictactoe()
    return 0


if __name__ == "__main__":
    sys.exit(main())
