# %% [markdown]
# # The attractor and the unstable manifold
#
# The attractor is the closure of the unstable manifold of X.  We grow the
# manifold for a number of generations, sample a long orbit, and check that
# orbit points hug the manifold.  Files land in ``demos/out``.

# %%
from pathlib import Path

import numpy as np

from lozilab import SOLVED_C0, attractor_orbit, cone_constants, grow_unstable_manifold, triangle
from lozilab.export import write_points_csv, write_svg
from lozilab.geometry import manifold_distance_bound

out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)
p = SOLVED_C0

# %%
orbit = attractor_orbit(p, 100_000, transient=1000)
write_points_csv(out / "attractor.csv", orbit)
write_svg(out / "attractor.svg", orbit[:20_000], y_stretch=1.75, radius=0.0015)
print("orbit inside Theta (min margin):", float(triangle(p).signed_distances(orbit).min()))

# %%
for g in (5, 10, 15, 20, 25):
    pl = grow_unstable_manifold(p, g)
    slope = np.nanmax(np.abs(pl.segment_slopes()))
    print(f"generation {g:2d}: {len(pl):7d} vertices, {int(pl.turning.sum()):6d} turning points, "
          f"max |slope| {slope:.6f} (d = {float(cone_constants(p).d):.6f})")

# %%
bound = manifold_distance_bound(p, orbit[:1000], 25, 1e-3)
print("largest distance bound from 1000 orbit points to generation 25:", float(bound.max()))
