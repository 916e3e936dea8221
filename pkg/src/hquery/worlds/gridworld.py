"""2D occupancy-grid world for path-planning queries.

Map files are UTF-8 text, one line per row (line 0 is y = 0), all lines of
equal length: ``#`` obstacle, ``.`` free, ``S`` start, ``G`` goal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from ..errors import HostError
from ..values import Entity, is_number, serialize
from .base import World

DIRECTIONS = [[0, 1], [0, -1], [1, -1], [-1, -1], [1, 0], [-1, 0], [-1, 1], [1, 1]]


class MapFormatError(ValueError):
    pass


@dataclass
class GridMap:
    width: int
    height: int
    cells: np.ndarray  # bool, shape (height, width), True = obstacle
    start: list
    goal: list
    robot_pos: list = field(default_factory=list)

    def __post_init__(self):
        for name in ("start", "goal"):
            x, y = getattr(self, name)
            if not self.in_bounds(x, y) or self.cells[y, x]:
                raise MapFormatError(f"{name} {[x, y]} must be a free in-bounds cell")
        if not self.robot_pos:
            self.robot_pos = list(self.start)

    def in_bounds(self, x, y) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def blocked(self, x, y) -> bool:
        return bool(self.cells[y, x])

    @classmethod
    def parse(cls, text: str) -> "GridMap":
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines:
            raise MapFormatError("empty map")
        width = len(lines[0])
        if width == 0 or any(len(line) != width for line in lines):
            raise MapFormatError("map lines must be non-empty and of equal length")
        cells = np.zeros((len(lines), width), dtype=bool)
        starts, goals = [], []
        for y, line in enumerate(lines):
            for x, ch in enumerate(line):
                if ch == "#":
                    cells[y, x] = True
                elif ch == "S":
                    starts.append([x, y])
                elif ch == "G":
                    goals.append([x, y])
                elif ch != ".":
                    raise MapFormatError(f"unexpected character {ch!r} at x={x}, y={y}")
        if len(starts) != 1 or len(goals) != 1:
            raise MapFormatError("map needs exactly one S and exactly one G")
        return cls(width, len(lines), cells, starts[0], goals[0])

    @classmethod
    def load(cls, path) -> "GridMap":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def render(self) -> str:
        rows = []
        for y in range(self.height):
            row = []
            for x in range(self.width):
                if [x, y] == self.start:
                    row.append("S")
                elif [x, y] == self.goal:
                    row.append("G")
                else:
                    row.append("#" if self.cells[y, x] else ".")
            rows.append("".join(row))
        return "\n".join(rows) + "\n"


def shipped_map(name: str = "wall7.map") -> GridMap:
    """One of the maps bundled with the package (default: 7x7 with a 3-cell wall)."""
    return GridMap.parse(resources.files("hquery.worlds").joinpath("maps", name).read_text("utf-8"))


def _point(p, what):
    if not (isinstance(p, list) and len(p) == 2 and all(is_number(c) for c in p)):
        raise HostError(f"{what}: expected an [x, y] pair, got {serialize(p)}")
    return p


def _cell(p, what):
    x, y = _point(p, what)
    if float(x) != int(x) or float(y) != int(y):
        raise HostError(f"{what}: grid positions must be integral, got {serialize(p)}")
    return int(x), int(y)


class GridWorld(World):
    """A single robot on an occupancy grid.

    ``move`` relocates the robot without checking obstacles; a following
    ``checkCollision`` reports whether it ended up inside one.
    """

    world_id = "grid"

    def __init__(self, grid: GridMap, robot_name: str = "robot"):
        self.grid = grid
        self.robot_name = robot_name
        self.robot = Entity(self.world_id, 1)
        self.events: list = []

    def _check_robot(self, r, what):
        if r != self.robot and r != self.robot_name:
            raise HostError(f"{what}: unknown robot {serialize(r)}")

    def position(self, robot):
        self._check_robot(robot, "position")
        return list(self.grid.robot_pos)

    def move(self, robot, pos):
        self._check_robot(robot, "move")
        x, y = _cell(pos, "move")
        if not self.grid.in_bounds(x, y):
            return []
        self.grid.robot_pos = [x, y]
        return [x, y]

    def check_collision(self, robot):
        self._check_robot(robot, "checkCollision")
        x, y = self.grid.robot_pos
        return self.grid.blocked(x, y)

    @staticmethod
    def distance(a, b):
        ax, ay = _point(a, "distance")
        bx, by = _point(b, "distance")
        return math.hypot(ax - bx, ay - by)

    def play_sound(self, path):
        self.events.append(path)
        return True

    def is_root(self, handle):
        return handle == 0

    def entities(self):
        return [self.robot]

    def attach(self, interp):
        super().attach(interp)
        interp.add_function("position", self.position)
        interp.add_function("move", self.move)
        interp.add_function("checkCollision", self.check_collision)
        interp.add_function("distance", self.distance, pure=True)
        interp.add_function("playSound", self.play_sound)
        interp.add_variable("robot", self.robot)
        interp.add_variable("world", Entity(self.world_id, 0))
        interp.add_variable("start_pos", list(self.grid.start))
        interp.add_variable("target_pos", list(self.grid.goal))
        interp.add_variable("directions", DIRECTIONS)


def navigation_query(max_len: int, maximum: int | None = None) -> str:
    """Grid version of the robot navigation query.

    Paths stop when the goal is reached, when the remaining steps cannot
    cover the remaining distance, when the robot leaves the map, or when it
    collides (a collision is also logged through ``playSound``).
    """
    cap = f" MAXIMUM {maximum}" if maximum is not None else ""
    return f"""\
start_pos = position(robot);
SELECT (this + cur_pos) FROM directions
WHERE  target_pos == move(robot, this + cur_pos)
START WITH cur_pos = start_pos, level = 1
CONNECT BY MEMORIZE {max_len}{cap}
           cur_pos = move(robot, cur_pos + this),
           level = level + 1
STOP WITH  target_pos == move(robot, this + cur_pos) OR
           [] == move(robot, this + cur_pos) OR
           distance(target_pos, this + cur_pos) > 1.5 * ({max_len} - level) OR
           IF(checkCollision(robot);
              playSound("bell.ogg"),
              True)
AS list;
"""
