from __future__ import annotations

import math

import numpy as np

from ..errors import HostError
from ..values import is_number, serialize


def grid_formatter(table, args):
    """Accumulate rows into a 2D grid.

    Each row is ``[value, ..., x, y]``: the first cell is summed into the
    cell containing ``(x, y)``. ``args`` is ``[origin [x, y], size [w, h],
    resolution]``; rows outside the grid are dropped. Returns
    ``{"width", "height", "data"}`` with ``data`` in row-major order.
    """
    if len(args) != 3:
        raise HostError("grid expects (origin [x, y], size [w, h], resolution)")
    origin, size, res = args
    for what, pair in (("origin", origin), ("size", size)):
        if not (isinstance(pair, list) and len(pair) == 2 and all(is_number(v) for v in pair)):
            raise HostError(f"grid: {what} must be a numeric pair, got {serialize(pair)}")
    if not is_number(res) or res <= 0:
        raise HostError(f"grid: resolution must be a positive number, got {serialize(res)}")
    width = int(round(size[0] / res))
    height = int(round(size[1] / res))
    grid = np.zeros((height, width), dtype=float)
    if table.rows and len(table.labels) < 3:
        raise HostError("grid needs rows of the form [value, ..., x, y]")
    for row in table.rows:
        value, x, y = row[0], row[-2], row[-1]
        if not all(is_number(v) for v in (value, x, y)):
            raise HostError(f"grid: non-numeric row {serialize(list(row))}")
        ix = math.floor((x - origin[0]) / res)
        iy = math.floor((y - origin[1]) / res)
        if 0 <= ix < width and 0 <= iy < height:
            grid[iy, ix] += value
    return {"width": width, "height": height, "data": grid.ravel().tolist()}
