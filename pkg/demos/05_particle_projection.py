# %% [markdown]
# # Querying a particle world
# A seeded toy world of spheres and boxes. The world root `space` expands to
# its particles when used in FROM.

# %%
import numpy as np

from hquery import Interpreter
from hquery.worlds import ParticleWorld

world = ParticleWorld(seed=7, n=10)
ss = Interpreter()
ss.attach(world)

heaviest = ss.eval("""
spheres = SELECT obj FROM space WHERE isSphere(this) AS list;
maxMass = max(SELECT mass FROM spheres AS list);
""")
print("heaviest sphere:", heaviest)
print("host check:", max(p["mass"] for p in world.dump() if p["shape"] == "sphere"))

# %% [markdown]
# ## Projection onto a grid
# The `grid` response format sums the first column into cells addressed by
# the last two columns.

# %%
out = ss.eval("""
SELECT mass, posX(this), posY(this) FROM space WHERE hasBody(this)
AS grid([-5, -5], [10, 10], 2.0);
""")
mass = np.array(out["data"]).reshape(out["height"], out["width"])
np.set_printoptions(precision=1, suppress=True)
print(mass)
print("total mass conserved:", np.isclose(mass.sum(), sum(p.mass for p in world.particles)))
