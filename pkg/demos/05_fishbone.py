"""Fishbone chains: i star elements in a row between two leads."""
# %%
from qgraph import DIRICHLET, NEUMANN, fishbone
from qgraph.entropy import average_entropy

# %% [markdown]
# Longer chains need many more quadrature panels; i <= 6 keeps this quick.

# %%
print(" i   Neumann    Dirichlet  panels")
for i in range(1, 7):
    hn = average_entropy(fishbone(i, NEUMANN), 1)
    hd = average_entropy(fishbone(i, DIRICHLET), 1)
    print(f"{i:2d}  {hn.average:.6f}  {hd.average:.6f}  {hn.panels_used}/{hd.panels_used}")

# %% [markdown]
# Neumann dead ends plateau near 0.415; Dirichlet ones keep falling
# towards 0.105 (see `qgraph reproduce fig12` for i up to 20).
