"""Build the main path of the cave family and classify it."""

import sys

from atam import analysis, builder
from atam.generators import efficient_path
from atam.model import grow
from atam.pathcalc import manhattan
from atam.render import render_ascii

k = int(sys.argv[1]) if len(sys.argv) > 1 else 0
g = efficient_path(k)
s = builder.SOracle(g.endpoint_B, g.bound.grow(2))
res = builder.build_path(g.tas, "right", None, s)
cls = analysis.classify_path(g.tas, res.path, res)
asm, _ = grow(g.tas)

print(f"efficient_path({k}): {len(g.tas.tileset)} types, main path width {g.expected_width}")
print(f"A={tuple(g.endpoint_A)} B={tuple(g.endpoint_B)} |AB|={manhattan(g.endpoint_A, g.endpoint_B)}")
print(f"built path: {len(res.path)} tiles, {res.path.distinct_tiles()} types, {res.halt_reason.value}")
print(f"fragile={cls.fragile} left_tentacular={cls.left_tentacular} right_tentacular={cls.right_tentacular}")
print(render_ascii(asm, res.path), end="")
