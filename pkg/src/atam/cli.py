"""Command-line front end.

Every subcommand reads and writes the tileset text format and only calls
into the library; exit status is 0 on success, 1 when a verification fails
and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import analysis, builder, enumeration, generators
from .model import Position, Rect, grow
from .pathcalc import binding_path
from .render import render_assembly
from .textformat import ParseError, TilesetDocument, parse_tileset, render_tileset


class UsageError(Exception):
    pass


def _pair(text: str, flag: str) -> Position:
    try:
        x, y = (int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"{flag}: expected X,Y, got {text!r}") from None
    return Position(x, y)


def _rect(text: str, flag: str) -> Rect:
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        vals = []
    if len(vals) != 4:
        raise UsageError(f"{flag}: expected XMIN,YMIN,XMAX,YMAX, got {text!r}")
    return Rect(*vals)


def _read(args) -> TilesetDocument:
    text = open(args.input, encoding="utf-8").read() if args.input else sys.stdin.read()
    return parse_tileset(text)


def _bound(doc: TilesetDocument, args, margin: int) -> Rect:
    if getattr(args, "bound", None):
        return _rect(args.bound, "--bound")
    if "bound" in doc.meta:
        return _rect(doc.meta["bound"], "meta bound").grow(margin)
    raise UsageError("--bound is required when the tileset carries no 'bound' metadata")


def _meta_pos(doc: TilesetDocument, key: str) -> Position | None:
    return _pair(doc.meta[key], f"meta {key}") if key in doc.meta else None


def _out(text: str) -> None:
    sys.stdout.write(text)


# --------------------------------------------------------------------------


def cmd_generate(args) -> int:
    if args.family == "comb":
        if args.n is None:
            raise UsageError("generate comb: --n is required")
        g = generators.comb(args.n)
    else:
        if args.k is None:
            raise UsageError("generate effpath: --k is required")
        g = generators.efficient_path(args.k)
    _out(render_tileset(TilesetDocument(g.tas, g.meta)))
    return 0


def cmd_simulate(args) -> int:
    doc = _read(args)
    rng = random.Random(args.seed_rng) if args.seed_rng is not None else None
    asm, terminal = grow(doc.tas, rng, args.max_tiles)
    _out(f"terminal: {'yes' if terminal else 'no'}\ntiles: {len(asm)}\n")
    _out(render_assembly(asm, "ascii"))
    return 0


def cmd_terminals(args) -> int:
    doc = _read(args)
    bound = _bound(doc, args, args.margin)
    res = enumeration.explore_terminals(doc.tas, bound, args.max_states)
    _out(f"bound: {','.join(map(str, bound))}\nfiniteness: {res.finiteness.value}\nterminal: {len(res.terminal)}\n")
    a, b = _meta_pos(doc, "A"), _meta_pos(doc, "B")
    ok = res.finiteness is enumeration.Finiteness.ALL_FINITE
    if a is not None and b is not None:
        covered = sum(binding_path(doc.tas, asm, a, b) is not None for asm in res.terminal)
        _out(f"A_to_B: {covered}/{len(res.terminal)}\n")
        ok = ok and covered == len(res.terminal)
    if args.show:
        for k, asm in enumerate(res.terminal):
            _out(f"-- terminal {k} ({len(asm)} tiles)\n")
            _out(render_assembly(asm, "ascii"))
    return 0 if ok else 1


def _oracle(doc: TilesetDocument, args) -> builder.SOracle:
    target = _pair(args.target, "--target") if args.target else _meta_pos(doc, "B")
    if target is None:
        raise UsageError("--target is required when the tileset carries no endpoint B")
    region = _rect(args.region, "--region") if args.region else _bound(doc, args, 2)
    try:
        return builder.SOracle(target, region)
    except ValueError as exc:
        raise UsageError(f"--target: {exc}") from None


def _order(args) -> builder.TileOrdering:
    if not args.order:
        return builder.TileOrdering()
    try:
        return builder.TileOrdering(tuple(int(v) for v in args.order.split(",")))
    except ValueError:
        raise UsageError(f"--order: expected comma-separated tile ids, got {args.order!r}") from None


def cmd_build_path(args) -> int:
    doc = _read(args)
    s = _oracle(doc, args)
    try:
        res = builder.build_path(doc.tas, args.priority, _order(args), s)
    except builder.BuildError as exc:
        _out(f"error: {exc}\n")
        return 1
    _out(res.describe())
    return 0 if res.halt_reason is builder.HaltReason.REACHED_S_MEMBER else 1


def cmd_analyze(args) -> int:
    doc = _read(args)
    s = _oracle(doc, args)
    everything = not (args.fragile or args.tentacular or args.pump)
    try:
        res = builder.build_path(doc.tas, args.priority, _order(args), s)
    except builder.BuildError as exc:
        _out(f"error: {exc}\n")
        return 1
    p = res.path
    _out(f"path: {len(p)} tiles, {p.distinct_tiles()} types, halt {res.halt_reason.value}\n")
    cls = analysis.classify_path(doc.tas, p, res)
    if everything or args.fragile:
        _out(f"fragile: {'yes' if cls.fragile else 'no'}\n")
        if cls.breaking is not None:
            r = cls.breaking.repetition
            _out(f"  breaking repetition: {r.i},{r.j} vector {cls.breaking.vector.x},{cls.breaking.vector.y}\n")
    if everything or args.tentacular:
        _out(f"left_tentacular: {'yes' if cls.left_tentacular else 'no'}\n")
        _out(f"right_tentacular: {'yes' if cls.right_tentacular else 'no'}\n")
        for r, bi, hand, grown, v in cls.tentacles:
            _out(f"  {hand} tentacle: repetition {r.i},{r.j} branch {bi} vector {v.x},{v.y} length {len(grown)}\n")
    if everything or args.pump:
        ok, cert = analysis.is_pumpable(p)
        _out(f"pumpable: {'yes' if ok else 'no'}\n")
        if ok:
            i, j, v = cert
            _out(f"  segment {i}..{j} vector {v[0]},{v[1]}\n")
    return 0


def cmd_witness(args) -> int:
    doc = _read(args)
    try:
        w = analysis.lower_bound_witness(doc.tas, args.n, args.round_limit)
    except analysis.WitnessError as exc:
        _out(f"error: {exc}\n")
        if exc.witness is not None:
            _out(exc.witness.describe())
        return 1
    _out(w.describe())
    return 0 if w.claim_holds else 1


def cmd_verify_square(args) -> int:
    doc = _read(args)
    verdict = enumeration.verify_square(doc.tas, args.n, args.max_states)
    _out(f"verify_square: {'true' if verdict else 'false'}\n")
    if not verdict:
        _out(f"reason: {verdict.reason}\n")
        if verdict.counterexample is not None:
            _out(render_assembly(verdict.counterexample, "ascii"))
    return 0 if verdict else 1


def cmd_bruteforce(args) -> int:
    rep = enumeration.brute_force_min_tiles(
        args.n, args.max_tiles, args.max_glue_pairs, args.anywhere_seed, args.workers
    )
    _out(rep.to_text())
    return 0


def cmd_render(args) -> int:
    doc = _read(args)
    rng = random.Random(args.seed_rng) if args.seed_rng is not None else None
    asm, _ = grow(doc.tas, rng, args.max_tiles)
    path = None
    if args.path or args.visible:
        a, b = _meta_pos(doc, "A"), _meta_pos(doc, "B")
        if a is None or b is None:
            raise UsageError("--path needs endpoints A and B in the tileset metadata")
        path = binding_path(doc.tas, asm, a, b)
    style = "svg" if args.svg else "ascii"
    _out(render_assembly(asm, style, doc.tas, path, labels=args.labels, visible=args.visible))
    return 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="atam", description="temperature-1 tile assembly toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def reader(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--input", "-i", help="tileset file (default: stdin)")
        return p

    g = sub.add_parser("generate", help="emit a generated tileset")
    g.add_argument("family", choices=["comb", "effpath"])
    g.add_argument("--n", type=int)
    g.add_argument("--k", type=int)
    g.set_defaults(func=cmd_generate)

    s = reader("simulate", "grow one assembly sequence")
    s.add_argument("--seed-rng", type=int)
    s.add_argument("--max-tiles", type=int, default=10_000)
    s.set_defaults(func=cmd_simulate)

    t = reader("terminals", "enumerate terminal assemblies in a bound")
    t.add_argument("--bound")
    t.add_argument("--margin", type=int, default=2)
    t.add_argument("--max-states", type=int, default=200_000)
    t.add_argument("--show", action="store_true")
    t.set_defaults(func=cmd_terminals)

    for name, fn, help in (
        ("build-path", cmd_build_path, "build a right- or left-priority path"),
        ("analyze", cmd_analyze, "fragility, tentacles and pumping of a built path"),
    ):
        b = reader(name, help)
        b.add_argument("--priority", choices=["right", "left"], default="right")
        b.add_argument("--target")
        b.add_argument("--region")
        b.add_argument("--bound")
        b.add_argument("--order")
        if name == "analyze":
            b.add_argument("--fragile", action="store_true")
            b.add_argument("--tentacular", action="store_true")
            b.add_argument("--pump", action="store_true")
        b.set_defaults(func=fn)

    w = reader("witness", "round-by-round lower-bound construction")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--round-limit", type=int)
    w.set_defaults(func=cmd_witness)

    v = reader("verify-square", "check that every terminal assembly is the n x n square")
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--max-states", type=int, default=200_000)
    v.set_defaults(func=cmd_verify_square)

    bf = sub.add_parser("bruteforce", help="search tiny tilesets for square fillers")
    bf.add_argument("--n", type=int, required=True)
    bf.add_argument("--max-tiles", type=int, required=True)
    bf.add_argument("--max-glue-pairs", type=int)
    bf.add_argument("--anywhere-seed", action="store_true")
    bf.add_argument("--workers", type=int, default=1)
    bf.set_defaults(func=cmd_bruteforce)

    r = reader("render", "draw one assembly")
    fmt = r.add_mutually_exclusive_group(required=True)
    fmt.add_argument("--svg", action="store_true")
    fmt.add_argument("--ascii", action="store_true")
    r.add_argument("--path", action="store_true")
    r.add_argument("--labels", action="store_true")
    r.add_argument("--visible", action="store_true")
    r.add_argument("--seed-rng", type=int)
    r.add_argument("--max-tiles", type=int, default=10_000)
    r.set_defaults(func=cmd_render)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"atam {args.command}: {exc}\n")
        return 2
    except ParseError as exc:
        sys.stderr.write(f"atam {args.command}: input: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"atam {args.command}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
