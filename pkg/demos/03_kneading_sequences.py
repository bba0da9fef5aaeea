# %% [markdown]
# # Kneading sequences at the two solved parameter sets
#
# Turning point 0 is F(D); turning point 1 is S, the next one along the
# unstable manifold.  The S-sequences of the two maps differ first at index 14.

# %%
from lozilab import SOLVED_C0, SOLVED_C01, compare_sequences, eval_map, kneading_sequence, precision, turning_points

s0 = kneading_sequence(SOLVED_C0, 1, 17)
s1 = kneading_sequence(SOLVED_C01, 1, 17)
print("c=0   ", s0)
print("c=0.1 ", s1)
print("first mismatch at", compare_sequences(s0, s1))

# %% [markdown]
# How close to the divider does F^14(S) come?  For c = 0.1 it is within
# about 1e-3, which is why the symbol there is delicate.

# %%
for name, p in (("c=0", SOLVED_C0), ("c=0.1", SOLVED_C01)):
    q = turning_points(p, 2)[1]
    for _ in range(14):
        q = eval_map(p, q)
    print(name, "x(F^14(S)) =", float(q.x))

# %% [markdown]
# Longer prefixes need more digits.  Double precision certifies roughly 60
# symbols; the long double profile pushes past 70.

# %%
for profile in ("double", "extended"):
    with precision(profile):
        seq = kneading_sequence(SOLVED_C0, 1, 80)
    print(f"{profile:8s} reliable {seq.reliable_length:3d}  {seq.symbols}")
