"""Right-/left-priority path building.

``build_path`` grows one path from the seed, one tile at a time:

1. when the last tile repeats the type of an earlier tile ``P_h`` whose
   output side differs from the last tile's input side, the tile that
   followed ``P_h`` is grown again on that side;
2. otherwise the first side, turning from the input side (counterclockwise
   for right priority, clockwise for left priority), that admits a tile
   keeping the path extensible to the target is used, smallest tile first;
3. if neither applies, a new branch is started from the existing assembly.

Everything grown stays in the assembly, so abandoned tiles keep blocking
later growth.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .model import CLOCKWISE, TAS, Direction, Position, Rect
from .pathcalc import Path, hands


class PriorityMode(str, Enum):
    RIGHT = "right"
    LEFT = "left"


class Case(str, Enum):
    CASE1 = "CASE1"
    CASE2 = "CASE2"
    CASE3 = "CASE3"


class HaltReason(str, Enum):
    REACHED_S_MEMBER = "REACHED_S_MEMBER"
    COLLISION_BRANCHED = "COLLISION_BRANCHED"
    STUCK = "STUCK"


class BuildError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class TileOrdering:
    """Total order on tile ids; ascending id unless ``ranking`` is given."""

    ranking: tuple[int, ...] | None = None

    def key(self, tile: int) -> int:
        if self.ranking is None:
            return tile
        return self.ranking.index(tile)

    def smallest(self, tiles: Sequence[int]) -> int:
        return min(tiles, key=self.key)


@dataclass(frozen=True)
class SOracle:
    """Paths of the system from the seed to ``target`` staying inside ``region``."""

    target: Position
    region: Rect

    def __post_init__(self):
        object.__setattr__(self, "target", Position(*self.target))
        object.__setattr__(self, "region", Rect(*self.region))
        if self.target not in self.region:
            raise ValueError("target must lie inside the region")


@dataclass(frozen=True)
class TraceStep:
    case: str
    index: int
    side: Direction | None = None
    tile: int | None = None
    pos: Position | None = None
    note: str = ""

    def __str__(self) -> str:
        parts = [self.case, f"i={self.index}"]
        if self.side is not None:
            parts.append(f"side={self.side.name}")
        if self.tile is not None:
            parts.append(f"tile={self.tile}")
        if self.pos is not None:
            parts.append(f"pos={self.pos.x},{self.pos.y}")
        if self.note:
            parts.append(self.note)
        return " ".join(parts)


@dataclass(frozen=True)
class Branch:
    fork_index: int
    side: Direction
    collision_index: int
    hand: str | None
    path: Path


@dataclass
class BuildResult:
    path: Path
    halt_reason: HaltReason
    collision_tile: int | None
    branches: list[Branch]
    trace: list[TraceStep]
    placements: list[tuple[Position, int]] = field(default_factory=list)
    collision_tiles: list[int] = field(default_factory=list)

    @property
    def cases(self) -> list[str]:
        return [s.case for s in self.trace if s.case in (Case.CASE1, Case.CASE2, Case.CASE3)]

    def describe(self) -> str:
        lines = [f"halt: {self.halt_reason.value}", f"length: {len(self.path)}"]
        lines.append(f"collision_tile: {'NONE' if self.collision_tile is None else self.collision_tile}")
        for b in self.branches:
            lines.append(f"branch: fork={b.fork_index} side={b.side.name} hand={b.hand} after={b.collision_index}")
        lines.extend(str(s) for s in self.trace)
        return "\n".join(lines) + "\n"


def rotation(mode: PriorityMode, input_side: Direction | None) -> list[Direction]:
    """Candidate output sides in priority order."""
    if input_side is None:
        if mode is PriorityMode.RIGHT:
            return [Direction.N, Direction.E, Direction.S, Direction.W]
        return [Direction.N, Direction.W, Direction.S, Direction.E]
    if mode is PriorityMode.RIGHT:
        return [input_side.ccw(k) for k in (1, 2, 3)]
    return [input_side.cw(k) for k in (1, 2, 3)]


def replay_candidate(p: Path, i: int):
    """``(side, tile)`` dictated by the earliest earlier tile of the same type, or None."""
    if i != len(p) - 1:
        raise ValueError("replay_candidate looks at the last tile only")
    t = p[i][0]
    inp = p.input_side(i)
    for h in range(i):
        if p[h][0] != t:
            continue
        s = p.output_side(h)
        if s is not None and s != inp:
            return s, p[h + 1][0]
    return None


# --------------------------------------------------------------------------
# S-membership


class _Extender:
    """Decides whether a producible prefix extends to the target in the region."""

    def __init__(self, tas: TAS, s: SOracle, blocked=frozenset()):
        self.tas = tas
        self.s = s
        self.blocked = frozenset(Position(*b) for b in blocked)
        self.bind = [[tas.tileset.binders(t.id, d) for d in CLOCKWISE] for t in tas.tiles]
        self.failed: set = set()

    def reachable(self, head, tile, occupied) -> bool:
        """Relaxed test ignoring self-avoidance of the extension itself."""
        target, region = self.s.target, self.s.region
        seen = {(head, tile)}
        queue = deque([(head, tile)])
        while queue:
            (x, y), t = queue.popleft()
            for di, d in enumerate(CLOCKWISE):
                q = (x + d.dx, y + d.dy)
                if q in occupied or q not in region:
                    continue
                for u in self.bind[t][di]:
                    if q == target:
                        return True
                    if (q, u) not in seen:
                        seen.add((q, u))
                        queue.append((q, u))
        return False

    def extensible(self, prefix: Path) -> bool:
        target, region = self.s.target, self.s.region
        if any(p not in region or p in self.blocked for p in prefix.positions):
            return False
        if prefix.end == target:
            return True
        if target in prefix:
            return False
        occupied = set(prefix.positions) | self.blocked
        tile, head = prefix[-1]
        return self._dfs(tuple(head), tile, occupied)

    def _dfs(self, head, tile, occupied) -> bool:
        key = (head, tile, frozenset(occupied))
        if key in self.failed:
            return False
        if not self.reachable(head, tile, occupied):
            self.failed.add(key)
            return False
        target, region = self.s.target, self.s.region
        x, y = head
        moves = []
        for di, d in enumerate(CLOCKWISE):
            q = (x + d.dx, y + d.dy)
            if q in occupied or q not in region:
                continue
            for u in self.bind[tile][di]:
                if q == target:
                    return True
                moves.append((abs(q[0] - target[0]) + abs(q[1] - target[1]), q, u))
        moves.sort()
        for _, q, u in moves:
            occupied.add(q)
            ok = self._dfs(q, u, occupied)
            occupied.discard(q)
            if ok:
                return True
        self.failed.add(key)
        return False


def prefix_extensible(tas: TAS, prefix: Path, s: SOracle) -> bool:
    return _Extender(tas, s).extensible(prefix)


# --------------------------------------------------------------------------


def build_path(
    tas: TAS,
    mode: PriorityMode = PriorityMode.RIGHT,
    ord: TileOrdering | None = None,
    s: SOracle | None = None,
    blocked=(),
) -> BuildResult:
    """Grow one path from the seed toward ``s.target``.

    ``blocked`` cells are treated as already occupied by foreign tiles: the
    path never enters them.
    """
    if s is None:
        raise ValueError("an S oracle (target and region) is required")
    ord = ord or TileOrdering()
    mode = PriorityMode(mode)
    ext = _Extender(tas, s, blocked)
    seed = Path([(tas.seed_tile, tas.seed_pos)])
    if not ext.extensible(seed):
        raise BuildError("UNSATISFIABLE_S", f"no producible path from the seed reaches {tuple(s.target)} inside the region")
    ts = tas.tileset
    region = s.region

    cells: dict = {tas.seed_pos: tas.seed_tile}
    foreign = ext.blocked
    tree_path: dict = {tas.seed_pos: seed}
    first_child: dict = {}
    blocked_side: dict = {}
    placements = [(tas.seed_pos, tas.seed_tile)]
    trace: list[TraceStep] = []
    forks: list[tuple[Position, Direction, int]] = []
    collisions: list[int] = []
    path = seed
    halt = None

    def place(parent: Path, side: Direction, tile: int) -> Path:
        q = parent.end.step(side)
        cells[q] = tile
        placements.append((q, tile))
        first_child.setdefault(parent.end, side)
        new = parent.extend(tile, q)
        tree_path[q] = new
        return new

    while True:
        i = len(path) - 1
        t_i, p_i = path[i]
        if p_i == s.target:
            halt = HaltReason.REACHED_S_MEMBER
            break
        moved = False
        rc = replay_candidate(path, i)
        if rc is not None:
            side, u = rc
            q = p_i.step(side)
            if q not in region:
                trace.append(TraceStep("REGION_ESCAPE", i, side, u, q, "case 1 replay leaves the region"))
                blocked_side[p_i] = side
            elif q in cells or q in foreign:
                trace.append(TraceStep("CASE1_BLOCKED", i, side, u, q, "case 1 replay collides"))
                blocked_side[p_i] = side
            else:
                path = place(path, side, u)
                trace.append(TraceStep(Case.CASE1, i, side, u, q))
                moved = True
        else:
            for side in rotation(mode, path.input_side(i)):
                q = p_i.step(side)
                if q in cells or q in foreign or q not in region:
                    continue
                cands = [u for u in ts.binders(t_i, side) if ext.extensible(path.extend(u, q))]
                if cands:
                    u = ord.smallest(cands)
                    path = place(path, side, u)
                    trace.append(TraceStep(Case.CASE2, i, side, u, q))
                    moved = True
                    break
        if moved:
            continue

        # case 3
        collisions.append(i)
        if s.target in cells:
            path = tree_path[s.target]
            trace.append(TraceStep(Case.CASE3, i, note="empty branch: assembly already reaches the target"))
            halt = HaltReason.REACHED_S_MEMBER
            break
        started = False
        for f, _ in placements:
            fpath = tree_path[f]
            ft = cells[f]
            for side in rotation(mode, fpath.input_side(len(fpath) - 1)):
                q = f.step(side)
                if q in cells or q in foreign or q not in region:
                    continue
                cands = [u for u in ts.binders(ft, side) if ext.extensible(fpath.extend(u, q))]
                if cands:
                    u = ord.smallest(cands)
                    forks.append((f, side, i))
                    path = place(fpath, side, u)
                    trace.append(TraceStep(Case.CASE3, i, side, u, q, f"fork at {f.x},{f.y}"))
                    started = True
                    break
            if started:
                break
        if not started:
            # no S-extensible branch left; tell apart paths that already
            # branched after a collision from ones that never did
            halt = HaltReason.COLLISION_BRANCHED if forks else HaltReason.STUCK
            break

    branches = []
    for f, side, coll in forks:
        k = path.index_of(f)
        if k is None or k + 1 >= len(path) or path.output_side(k) != side:
            continue
        hand = None
        inp = path.input_side(k)
        ref = first_child.get(f)
        if ref == side:
            ref = blocked_side.get(f)
        if inp is not None and ref is not None and ref != side:
            left, right = hands(inp, ref)
            hand = "left" if side in left else "right" if side in right else None
        branches.append(Branch(k, side, coll, hand, path[k + 1:]))
    return BuildResult(
        path=path,
        halt_reason=halt,
        collision_tile=collisions[-1] if collisions else None,
        branches=branches,
        trace=trace,
        placements=placements,
        collision_tiles=collisions,
    )


# --------------------------------------------------------------------------
# trace audit


def audit_trace(
    tas: TAS,
    res: BuildResult,
    mode: PriorityMode = PriorityMode.RIGHT,
    ord: TileOrdering | None = None,
    s: SOracle | None = None,
    blocked=(),
) -> list[str]:
    """Replay ``res.trace`` and list every step that breaks the case priority.

    A CASE1 step must be the replay of the earliest earlier copy of the last
    tile. A CASE2 step is only allowed when there was no replay or the
    replay was reported blocked, and it must take the first side in
    rotation order with an extensible tile, smallest tile first. A CASE3
    step is only allowed when neither of the other cases had a move. An
    empty list means the trace is sound.
    """
    if s is None:
        raise ValueError("an S oracle (target and region) is required")
    ord = ord or TileOrdering()
    mode = PriorityMode(mode)
    ext = _Extender(tas, s, blocked)
    ts = tas.tileset
    path = Path([(tas.seed_tile, tas.seed_pos)])
    cells = {tas.seed_pos: tas.seed_tile}
    tree_path = {tas.seed_pos: path}
    placed = [tas.seed_pos]
    problems: list[str] = []
    replay_blocked = False

    def free(q) -> bool:
        return q not in cells and q not in ext.blocked and q in s.region

    def case2_move(p: Path):
        i = len(p) - 1
        t, pos = p[i]
        for side in rotation(mode, p.input_side(i)):
            q = pos.step(side)
            if not free(q):
                continue
            cands = [u for u in ts.binders(t, side) if ext.extensible(p.extend(u, q))]
            if cands:
                return side, ord.smallest(cands)
        return None

    def put(p: Path, side: Direction, u: int) -> Path:
        q = p.end.step(side)
        cells[q] = u
        placed.append(q)
        new = p.extend(u, q)
        tree_path[q] = new
        return new

    for n, step in enumerate(res.trace):
        where = f"step {n} ({step})"
        if step.index != len(path) - 1:
            problems.append(f"{where}: index does not match the current path length {len(path)}")
            break
        rc = replay_candidate(path, len(path) - 1)
        if step.case in ("CASE1_BLOCKED", "REGION_ESCAPE"):
            if rc is None or rc != (step.side, step.tile):
                problems.append(f"{where}: reported replay is not the replay candidate")
            elif free(path.end.step(step.side)):
                problems.append(f"{where}: replay reported blocked but its cell is free")
            replay_blocked = True
            continue
        if step.case == Case.CASE1:
            if rc is None or rc != (step.side, step.tile):
                problems.append(f"{where}: CASE1 move is not the replay candidate")
            elif not free(path.end.step(step.side)):
                problems.append(f"{where}: CASE1 move into an occupied cell")
            path = put(path, step.side, step.tile)
        elif step.case == Case.CASE2:
            if rc is not None and not replay_blocked:
                problems.append(f"{where}: CASE2 used while a replay was available")
            want = case2_move(path)
            if want != (step.side, step.tile):
                problems.append(f"{where}: CASE2 move differs from the priority choice {want}")
            path = put(path, step.side, step.tile)
        elif step.case == Case.CASE3:
            if rc is not None and not replay_blocked:
                problems.append(f"{where}: CASE3 used while a replay was available")
            if case2_move(path) is not None:
                problems.append(f"{where}: CASE3 used while a CASE2 move existed")
            if step.side is None:
                path = tree_path[s.target] if s.target in tree_path else path
            else:
                fork = None
                for f in placed:
                    fp = tree_path[f]
                    mv = case2_move(fp)
                    if mv is not None:
                        fork = (f, mv)
                        break
                if fork is None or fork[1] != (step.side, step.tile) or fork[0].step(step.side) != step.pos:
                    problems.append(f"{where}: CASE3 branch is not the first extensible branch start {fork}")
                f = step.pos.step(step.side.opposite)
                path = put(tree_path[f], step.side, step.tile)
        else:
            problems.append(f"{where}: unknown trace entry")
        replay_blocked = False
    if not problems and path != res.path:
        problems.append("replayed path differs from the reported path")
    return problems
