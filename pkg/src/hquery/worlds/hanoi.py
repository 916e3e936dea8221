"""Towers of Hanoi backend and the stock query forms used to solve it."""

from __future__ import annotations

from ..errors import HostError
from ..values import serialize
from .base import World

MOVES = [[0, 1], [0, 2], [1, 0], [1, 2], [2, 0], [2, 1]]


def _malformed(step, towers):
    return HostError(f"malformed hanoi move({serialize(step)}, {serialize(towers)})")


def hanoi_move(step, towers):
    """Move the top disk of ``towers[step[0]]`` onto ``towers[step[1]]``.

    Returns a new configuration, or ``[]`` if the move is illegal. An empty
    ``towers`` (the result of an earlier illegal move) stays empty. The input
    is never modified.
    """
    if isinstance(towers, list) and not towers:
        return []
    if not (isinstance(step, list) and len(step) == 2 and isinstance(towers, list) and len(towers) == 3):
        raise _malformed(step, towers)
    src, dst = step
    if src not in (0, 1, 2) or dst not in (0, 1, 2) or isinstance(src, bool) or isinstance(dst, bool):
        raise _malformed(step, towers)
    if not all(isinstance(t, list) for t in towers):
        raise _malformed(step, towers)
    source, target = towers[src], towers[dst]
    if not source:
        return []
    if target and not target[-1] > source[-1]:
        return []
    moved = [list(t) for t in towers]
    moved[dst].append(moved[src].pop())
    return moved


def start_config(disks: int) -> list:
    return [list(range(disks, 0, -1)), [], []]


def goal_config(disks: int) -> list:
    return [[], [], list(range(disks, 0, -1))]


def optimal_moves(disks: int, src=0, dst=2, via=1) -> list:
    """Reference recursive solution (2**disks - 1 moves)."""
    if disks == 0:
        return []
    return (
        optimal_moves(disks - 1, src, via, dst)
        + [[src, dst]]
        + optimal_moves(disks - 1, via, dst, src)
    )


def vanilla_query(disks: int = 3) -> str:
    """Nested-product form: one FROM source per step, goal tested in WHERE."""
    steps = 2 ** disks - 1
    names = [f"m{i}" for i in range(1, steps + 1)]
    nested = serialize(start_config(disks))
    for n in names:
        nested = f"move({n}.this, {nested})"
    return (
        f"moves = {serialize(MOVES)};\n"
        f"SELECT {', '.join(n + '.this' for n in names)}\n"
        f"FROM {', '.join(n + '=moves' for n in names)}\n"
        f"WHERE {serialize(goal_config(disks))} == {nested}\n"
        "AS list;"
    )


def hierarchical_query(disks: int = 3, strategy: str = "default", select: str = "this") -> str:
    """Recursive form with the chosen search strategy.

    ``strategy`` is one of ``default``, ``nocycle``, ``unique``, ``memorize``.
    The level-based stop is at ``2**disks - 1``; the memorize form uses the
    same number as its path-length bound instead of a level counter.
    """
    steps = 2 ** disks - 1
    start, goal = serialize(start_config(disks)), serialize(goal_config(disks))
    head = f"moves = {serialize(MOVES)};\nSELECT {select} FROM moves WHERE {goal} == move(this, tower)\n"
    if strategy == "memorize":
        return head + (
            f"START WITH tower = {start}\n"
            f"CONNECT BY MEMORIZE {steps}\n"
            "           tower = move(this, tower)\n"
            "STOP WITH [] == move(this, tower);"
        )
    keyword = {"default": "", "nocycle": "NO CYCLE ", "unique": "UNIQUE "}[strategy]
    return head + (
        f"START WITH tower = {start}, level = 1\n"
        f"CONNECT BY {keyword}tower = move(this, tower), level = level + 1\n"
        f"STOP WITH level == {steps} or [] == move(this, tower);"
    )


class HanoiWorld(World):
    world_id = "hanoi"

    def attach(self, interp):
        super().attach(interp)
        interp.add_function("move", hanoi_move, pure=True)
        interp.add_variable("moves", MOVES)
