"""Event locality on a ring of dining philosophers.

Declaration order lists each kind of place around the whole ring, so every
transition touches places far apart.  Reordering groups each philosopher's
places together.  Run with ``python3 demos/philosophers_locality.py [N]``.
"""
# %%
import sys

from varorder import Category, OrderingConfig, dependency_graph, philosophers, render_matrix, reorder, run_cell
from varorder.bench import Model

n = int(sys.argv[1]) if len(sys.argv) > 1 else 10
net = philosophers(n)
model = Model(f"philosophers-{n}", dependency_graph(net), net)
print(model.name, "shape", model.graph.shape)

# %%
# Normalized WES and the decision diagram peak for three categories.
for label in ("none", "bi,cm", "tot,sloan"):
    rec = run_cell(model, Category.parse(label), strategy="sat-like")
    print(f"{label:10} WES_n {float(rec.metrics.wes_n):.3f}  states {rec.reach.state_count}  "
          f"peak {rec.reach.peak_node_count}  reach {rec.reach_ms:.0f} ms")

# %%
# Matrix pictures as portable bitmaps.
sp = reorder(model.graph, OrderingConfig("cm")).split
with open(f"philosophers-{n}-declared.pbm", "wb") as fh:
    fh.write(render_matrix(model.graph))
with open(f"philosophers-{n}-cm.pbm", "wb") as fh:
    fh.write(render_matrix(model.graph, sp))
print("wrote", f"philosophers-{n}-declared.pbm", f"philosophers-{n}-cm.pbm")
