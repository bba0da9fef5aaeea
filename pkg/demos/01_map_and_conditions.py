# %% [markdown]
# # The map and its parameter conditions
#
# F(x, y) = (1 + y - a|x| - cx, bx) is affine on each side of the y-axis.
# This walk-through evaluates it, finds the two fixed points and runs the
# whole condition pipeline at a comfortable parameter triple.

# %%
import numpy as np

from lozilab import Params, check_all, cone_constants, eval_map, fixed_points, period2_point, triangle_invariance

p = Params(1.8, 0.3, 0.0)
print("F(1, 0)  =", eval_map(p, (1, 0)))
print("F(-1, 0) =", eval_map(p, (-1, 0)))

# %% [markdown]
# X sits in the first quadrant and repels along a direction with a negative
# eigenvalue; Y is the fixed point of the left branch.

# %%
fp = fixed_points(p)
print("X =", tuple(map(float, fp.X.point)), "eigenvalues", float(fp.X.eigen.lambda_unstable), float(fp.X.eigen.lambda_stable))
print("Y =", tuple(map(float, fp.Y.point)))
print("period-2 point Q =", tuple(map(float, period2_point(p))))

# %% [markdown]
# Cone constant d and the guaranteed stretching b/d.

# %%
cc = cone_constants(p)
print(f"d = {float(cc.d):.6f}, b/d = {float(cc.expansion):.6f} (needs > sqrt 2 = {np.sqrt(2):.6f})")

# %% [markdown]
# Every inequality comes back with a signed margin: positive means satisfied.

# %%
print(check_all(p))
print("F(Theta) inside Theta:", triangle_invariance(p))

# %%
bad = Params(1.7, 0.5, 0.0)
print(check_all(bad))
