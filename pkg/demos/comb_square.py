"""Grow the comb square for a few sizes and check it is the only terminal assembly."""

import sys

from atam.enumeration import verify_square
from atam.generators import comb
from atam.model import grow
from atam.render import render_ascii

n = int(sys.argv[1]) if len(sys.argv) > 1 else 6
g = comb(n)
asm, _ = grow(g.tas)
print(f"comb({n}): {len(g.tas.tileset)} tile types")
print(render_ascii(asm), end="")
print("unique terminal assembly is the square:", bool(verify_square(g.tas, n)))
