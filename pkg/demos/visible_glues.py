"""Draw a random path to the top row with its visible glues highlighted."""

import random
import sys

from atam.pathcalc import Path, manhattan, visible_glues
from atam.render import render_ascii

rng = random.Random(int(sys.argv[1]) if len(sys.argv) > 1 else 1)
cells, seen = [(0, 0)], {(0, 0)}
while len(cells) < 40:
    x, y = cells[-1]
    opts = [(x + dx, y + dy) for dx, dy in ((1, 0), (0, 1), (-1, 0), (0, -1))]
    opts = [c for c in opts if 0 <= c[0] <= 7 and 0 <= c[1] <= 5 and c not in seen]
    if not opts:
        break
    cells.append(rng.choice(opts))
    seen.add(cells[-1])
top = max(y for _, y in cells)
cells = cells[: max(i for i, c in enumerate(cells) if c[1] == top) + 1]

p = Path((0, c) for c in cells)
rep = visible_glues(p)
a = cells[-1]
print(f"A={a}: |east|={len(rep.east)} >= {a[1]}, |south|={len(rep.south)} >= {a[0]}, "
      f"|union|={len(rep.east | rep.south)} >= {manhattan((0, 0), a) - 1}")
print("e: north glue seen from the east, s: east glue seen from the south, x: both")
print(render_ascii(p.as_assembly(), p, visible=True), end="")
