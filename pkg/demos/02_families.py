"""Average entropy across the star, cycle, wheel and complete families."""
# %%
from qgraph import complete, cycle, star, wheel
from qgraph.reproduce import mean_entropy

# %% [markdown]
# Two leads sit on vertices 1 and 2; "all" puts one lead on every vertex.
# mean_entropy memoises, so re-running a cell is cheap.

# %%
for name, make in [("star", star), ("cycle", cycle), ("wheel", wheel), ("complete", complete)]:
    lo = 2 if name in ("cycle", "complete") else 3
    row = [mean_entropy(make(n)) for n in range(lo, 11)]
    print(f"{name:9s}", " ".join(f"{h:.4f}" for h in row))

# %%
# one lead per vertex
for name, make in [("cycle", cycle), ("wheel", wheel), ("complete", complete)]:
    lo = 2 if name != "wheel" else 3
    row = [mean_entropy(make(n, "all")) for n in range(lo, 11)]
    print(f"{name:9s}", " ".join(f"{h:.4f}" for h in row))

# %% [markdown]
# Stars peak at n = 4, wheels at n = 3 (two leads) and n = 6 (all leads),
# complete graphs with all leads at n = 4. Cycles split by parity.
