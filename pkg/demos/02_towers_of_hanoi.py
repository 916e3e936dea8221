# %% [markdown]
# # Towers of Hanoi as a hierarchical query
# A tower configuration is a list of three lists (bottom disk first).
# `move(step, towers)` returns the new configuration or `[]` when illegal.

# %%
from hquery import Interpreter
from hquery.worlds import HanoiWorld
from hquery.worlds.hanoi import hanoi_move, hierarchical_query, optimal_moves

print(hanoi_move([0, 1], [[3, 2, 1], [], []]))
print(hanoi_move([1, 0], [[3], [], []]))

# %% [markdown]
# ## Depth-first search with a level limit
# WHERE tests the goal against the configuration after the candidate move.
# STOP WITH ends a branch at the depth limit or on an illegal move.

# %%
source = hierarchical_query(3, "default")
print(source)

ss = Interpreter()
ss.attach(HanoiWorld())
solutions = ss.eval(source)
print(len(solutions), "solutions of at most 7 moves; expansions:", ss.stats.expansions)
print(solutions[0] == optimal_moves(3))

# %% [markdown]
# ## Selecting more than the move
# With several SELECT items each level of the path becomes a list.

# %%
path = ss.eval(hierarchical_query(2, "memorize", select="this, tower"))[0]
for step, towers in path:
    print(step, towers)
