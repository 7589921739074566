"""Transmission through a ring made of one short and one long edge."""
# %%
import numpy as np

from qgraph import fig1a
from qgraph.entropy import channel_probabilities

# %% [markdown]
# Leads sit on the two vertices; the edges have lengths 1 and n - 1.

# %%
k = np.linspace(0.0, np.pi, 512, endpoint=False) + 1e-3
for n in range(2, 8):
    p, batch = channel_probabilities(fig1a(n), np.concatenate([k, k + np.pi]))
    t = p[:, 1]
    shift = np.max(np.abs(t[: len(k)] - t[len(k) :]))
    print(f"n={n}  min T={t.min():.3f}  max |T(k)-T(k+pi)| = {shift:.1e}")

# %% [markdown]
# Even n repeat after pi, odd n only after 2 pi. For n = 2 the
# transmission never drops below about 0.64.
