"""Build a graph by hand, save it, sweep it and call the CLI on it."""
# %%
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

from qgraph import MetricGraph, average_entropy, save_graph, scattering_matrix, secular_determinant, transmission_sweep

# %%
# a triangle with a tail and a dead end; lengths are integers
g = MetricGraph.build("kite", 5, [(1, 2, 1), (2, 3, 2), (3, 1, 3), (3, 4, 1), (2, 5, 1)], leads=[1, 4])
S = scattering_matrix(g, 0.7)
print("unitarity error", S.unitarity_error)
print("|det(1-U)| at 0.7 =", abs(secular_determinant(g, 0.7)))

# %%
table = transmission_sweep(g, 1, 1e-6, 2 * np.pi, 9)
for k, p, h in zip(table.k, table.probabilities, table.entropy):
    print(f"k={k:.3f}  p={np.round(p, 4)}  H={h:.4f}")

# %%
print("mean entropy", average_entropy(g, 1).average)

# %%
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "kite.json"
    save_graph(g, path)
    out = subprocess.run([sys.executable, "-m", "qgraph", "entropy", "--graph", str(path)], capture_output=True, text=True)
    print(out.stdout)
