"""Randomized small-system corpus for the fragile-or-tentacular implication.

Each system comes from a random self-avoiding walk in the upper half plane
whose cells are labelled with tile names, some of them repeated, and turned
into tiles with ``generators.path_system``. A system enters the corpus when
its terminal assemblies can be enumerated completely and are all finite.
For every point ``A`` in the first quadrant that lies in every terminal
assembly, the right-priority path to ``A`` is built, and the instance is kept
when the path stays in rows ``0..y_A`` and has fewer than ``|OA| - 1`` types.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from atam import analysis, builder
from atam.enumeration import Finiteness, ResourceError, explore_terminals
from atam.generators import path_system
from atam.model import Position, Rect, grow
from atam.pathcalc import manhattan

CORPUS_SEED = 20240
CORPUS_SIZE = 100
MAX_STATES = 3000


@dataclass
class Instance:
    cells: list
    names: list
    target: Position
    types: int
    fragile: bool
    two_way: bool


@dataclass
class CorpusReport:
    walks: int = 0
    finite_systems: int = 0
    candidate_points: int = 0
    instances: list = None
    violations: list = None


def random_walk(rng: random.Random, length: int):
    cells = [(0, 0)]
    seen = {(0, 0)}
    while len(cells) < length:
        x, y = cells[-1]
        opts = [(x + dx, y + dy) for dx, dy in ((1, 0), (0, 1), (-1, 0), (0, -1))]
        opts = [c for c in opts if c not in seen and c[1] >= 0]
        if not opts:
            return None
        c = rng.choice(opts)
        cells.append(c)
        seen.add(c)
    return cells


def random_labels(rng: random.Random, length: int) -> list[str]:
    """Fresh names, except that a non-seed cell reuses an earlier non-seed name 40% of the time."""
    names = ["t0"]
    for i in range(1, length):
        if i > 1 and rng.random() < 0.4:
            names.append(rng.choice(names[1:]))
        else:
            names.append(f"t{i}")
    return names


def build_corpus(seed: int = CORPUS_SEED, size: int = CORPUS_SIZE) -> CorpusReport:
    """Scan ``size`` finite systems drawn from ``seed`` for hypothesis instances."""
    rng = random.Random(seed)
    rep = CorpusReport(instances=[], violations=[])
    while rep.finite_systems < size:
        rep.walks += 1
        length = rng.randint(5, 14)
        cells = random_walk(rng, length)
        if cells is None:
            continue
        names = random_labels(rng, length)
        tas = path_system(cells, names)
        asm, terminal = grow(tas, rng, 300)
        if not terminal:
            continue
        bound = Rect(*asm.bbox()).grow(2)
        try:
            res = explore_terminals(tas, bound, MAX_STATES)
        except ResourceError:
            continue
        if res.finiteness is not Finiteness.ALL_FINITE:
            continue
        rep.finite_systems += 1
        common = set.intersection(*(set(a.domain) for a in res.terminal))
        for a in sorted(common):
            if a.x < 0 or a.y < 0 or manhattan((0, 0), a) < 3:
                continue
            rep.candidate_points += 1
            try:
                built = builder.build_path(tas, "right", None, builder.SOracle(a, bound))
            except builder.BuildError:
                continue
            p = built.path
            if p.end != a or any(not 0 <= q.y <= a.y for q in p.positions):
                continue
            if p.distinct_tiles() >= manhattan((0, 0), a) - 1:
                continue
            cls = analysis.classify_path(tas, p, built)
            inst = Instance(cells, names, a, p.distinct_tiles(), cls.fragile, cls.two_way)
            rep.instances.append(inst)
            if not (cls.fragile or cls.two_way):
                rep.violations.append(inst)
    return rep
