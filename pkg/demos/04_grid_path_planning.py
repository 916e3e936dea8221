# %% [markdown]
# # Path planning on an occupancy grid
# The bundled map is 7 x 7 with a three-cell wall between start and goal.

# %%
from hquery import Interpreter
from hquery.worlds import GridWorld, shipped_map
from hquery.worlds.gridworld import navigation_query

grid = shipped_map()
print(grid.render())

# %% [markdown]
# `move` relocates the robot and `checkCollision` reports whether it ended up
# in an obstacle. MEMORIZE builds the state graph once, then lists simple
# paths shortest first.

# %%
world = GridWorld(grid)
ss = Interpreter()
ss.attach(world)
paths = ss.eval(navigation_query(8))
print(len(paths), "paths of at most 8 steps")
print("shortest:", paths[0])
print("collision sounds logged:", len(world.events))

# %%
canvas = [list(row) for row in grid.render().split()]
for x, y in paths[0][:-1]:
    canvas[y][x] = "*"
print("\n".join("".join(row) for row in canvas))

# %% [markdown]
# The search really moves the robot, so it has to go back to the start
# before the next query. MAXIMUM caps the number of paths; the capped list
# is a prefix of the full one.

# %%
print("robot left at", grid.robot_pos)
grid.robot_pos = list(grid.start)
first_five = ss.eval(navigation_query(8, maximum=5))
print(first_five == paths[:5])
