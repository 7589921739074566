"""One Neumann vertex with d leads: quadrature against the closed form."""
# %%
import numpy as np

from qgraph import average_entropy, closed_form_S1d_entropy, scattering_matrix, single_vertex

# %% [markdown]
# A lone vertex has no edges, so nothing depends on k. Reflection is 2/d - 1
# and every other channel gets 2/d.

# %%
S = scattering_matrix(single_vertex(3), 1.0)
print(np.round(S.probabilities, 6))  # 1/9 back, 4/9 to each of the others

# %%
print(" d   quadrature      closed form")
for d in range(3, 13):
    h = average_entropy(single_vertex(d), 1).average
    print(f"{d:2d}  {h:.10f}  {closed_form_S1d_entropy(d):.10f}")

# %% [markdown]
# The curve peaks at d = 6 and then decays: a large vertex mostly reflects.

# %%
ds = np.arange(3, 201)
h = np.array([closed_form_S1d_entropy(int(d)) for d in ds])
print("argmax d =", ds[h.argmax()], " H(200) =", round(h[-1], 4))
