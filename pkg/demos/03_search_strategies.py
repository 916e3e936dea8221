# %% [markdown]
# # Comparing search strategies
# Same puzzle, five formulations. The vanilla form enumerates the full
# 7-fold product of moves; the hierarchical forms prune while searching.

# %%
import numpy as np

from hquery.cli import format_bench, run_bench

rows = run_bench(3)  # vanilla is included for 3 disks, it takes a few seconds
print(format_bench(rows, 3))

# %%
work = np.array([r.rows if r.strategy == "vanilla" else r.expansions for r in rows], dtype=float)
for r, w in zip(rows, work / work.max()):
    print(f"{r.strategy:>9} {'#' * max(1, int(60 * w))}")

# %% [markdown]
# ## Larger instances
# With 4 disks the plain depth-first search explodes, so it runs under a
# node budget and reports "budget" when that runs out. Memorize stays small
# because every state is stored once.

# %%
print(format_bench(run_bench(4, vanilla=False, budget=20_000), 4))
