"""``dualcx`` command-line front end.

Exit codes: 0 pass, 1 fail or property violated, 2 invalid input, 3 unknown
(search budget exhausted).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import kernels
from .certify import Certificate, certify, replay_certificate
from .complex import ComplexError, connected_components, euler_characteristic, is_simplicial
from .curves import ConfigError, find_nontrivial_cycle_sequence, forms_tree, is_connected, is_cycle_sequence, is_trivial, reduce_a, reduce_ab
from .dual import StratificationError, build_dual, check_regularity
from .generate import MUTATION_CHECK, MUTATIONS, build_instance, family_a, family_b, make_rng, random_config
from .homotopy import DEFAULT_BUDGET, BudgetExhausted, betti, cone_map, is_collapsible
from .io import InputError, dump, load_complex, load_config, load_labeling, load_loop, load_sequence, load_strata, read_json
from .loops import (
    LoopEssential,
    LoopError,
    boundary_pair_graph,
    complement_components,
    dominating_subcomplex,
    image_of_loop,
    reduce_loop,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2, 3


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _labeled(args):
    g = load_complex(args.complex)
    cfg = load_config(args.config)
    return g, cfg, load_labeling(args.labeling, g, cfg)


def cmd_validate(args) -> int:
    report: dict = {"schema_version": 1}
    ok = True
    g = cfg = None
    if args.complex:
        g = load_complex(args.complex)
        bad = [v.to_dict() for v in g.violations]
        report["complex"] = {"violations": bad}
        ok &= not bad
    if args.config:
        cfg = load_config(args.config)
        report["config"] = {"connected": is_connected(cfg)}
    if args.labeling:
        if g is None or cfg is None:
            raise InputError("--labeling needs --complex and --config")
        bad = [v.to_dict() for v in load_labeling(args.labeling, g, cfg).validate()]
        report["labeling"] = {"violations": bad}
        ok &= not bad
    if args.strata:
        s = load_strata(args.strata)
        try:
            build_dual(s)
            report["strata"] = {"problems": [], "regular": check_regularity(s)}
        except StratificationError as exc:
            report["strata"] = {"problems": exc.problems}
            ok = False
    report["verdict"] = "pass" if ok else "fail"
    _emit(args, report)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_certify(args) -> int:
    g, cfg, lab = _labeled(args)
    cert = certify(g, lab, args.budget)
    _emit(args, cert.to_json())
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "unknown": EXIT_UNKNOWN}[cert.verdict]


def cmd_replay(args) -> int:
    g, cfg, lab = _labeled(args)
    cert = Certificate.from_dict(read_json(args.certificate))
    ok = replay_certificate(cert, g, lab)
    _emit(args, {"replayed": ok, "verdict": cert.verdict, "violation": cert.violation})
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_generate(args) -> int:
    rng = make_rng(args.seed)
    if args.family == "a":
        inst = family_a(rng, args.components, args.points)
    elif args.family == "b":
        if args.mutation is None:
            raise InputError(f"--family b needs --mutation, one of {', '.join(MUTATIONS)}")
        inst = family_b(rng, args.mutation, args.components)
    else:
        cfg = random_config(rng, args.components or 3, args.points or 3)
        inst = build_instance(rng, cfg)
        inst.meta = {"family": "any", "mutation": None}
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    meta = dict(inst.meta, seed=args.seed, expected_violation=MUTATION_CHECK.get(inst.meta.get("mutation")))
    dump(inst.complex.to_json(), out / "complex.json")
    dump(inst.labeling.to_json(), out / "labeling.json")
    dump(inst.config.to_json(), out / "config.json")
    dump(meta, out / "meta.json")
    sys.stdout.write(f"wrote complex.json labeling.json config.json meta.json to {out}\n")
    return EXIT_PASS


def cmd_betti(args) -> int:
    g = load_complex(args.complex)
    g.require_structure()
    _emit(args, {"betti": list(betti(g)), "euler": euler_characteristic(g),
                 "components": len(connected_components(g)), "simplicial": is_simplicial(g)})
    return EXIT_PASS


def cmd_collapse(args) -> int:
    g = load_complex(args.complex)
    try:
        steps = is_collapsible(g, args.budget)
    except BudgetExhausted as exc:
        _emit(args, {"collapsible": None, "visited": exc.visited})
        return EXIT_UNKNOWN
    if steps is None:
        _emit(args, {"collapsible": False, "betti": list(betti(g))})
        return EXIT_FAIL
    _emit(args, {"collapsible": True, "steps": [list(s) for s in steps]})
    return EXIT_PASS


def cmd_cone(args) -> int:
    g = load_complex(args.complex)
    cone, apex, _ = cone_map(g, args.apex)
    _emit(args, cone.to_json())
    return EXIT_PASS


def cmd_tree(args) -> int:
    cfg = load_config(args.config)
    res = forms_tree(cfg, args.method)
    _emit(args, {"is_tree": res.is_tree, "peel_order": list(res.peel_order or [])})
    return EXIT_PASS if res else EXIT_FAIL


def cmd_cycfind(args) -> int:
    cfg = load_config(args.config)
    if not is_connected(cfg):
        raise InputError(f"{args.config}: configuration is not connected")
    cyc = find_nontrivial_cycle_sequence(cfg)
    _emit(args, {"cycle_sequence": None if cyc is None else cyc.to_list()})
    return EXIT_PASS if cyc is None else EXIT_FAIL


def cmd_reduce(args) -> int:
    seq = load_sequence(args.sequence)
    red = reduce_a(seq) if args.mode == "a" else reduce_ab(seq)
    payload = {"mode": args.mode, "reduction": red.to_list(), "trivial": is_trivial(seq)}
    if args.config:
        payload["is_cycle_sequence"] = is_cycle_sequence(seq, load_config(args.config))
    _emit(args, payload)
    return EXIT_PASS


def cmd_loop_image(args) -> int:
    g, cfg, lab = _labeled(args)
    loop = load_loop(args.loop)
    try:
        loop.check(g)
    except LoopError as exc:
        raise InputError(f"{args.loop}: {exc}") from exc
    img = image_of_loop(loop, lab)
    _emit(args, {"image": img.to_list(), "reduction": reduce_ab(img).to_list(),
                 "is_cycle_sequence": is_cycle_sequence(img, cfg)})
    return EXIT_PASS


def cmd_loop_reduce(args) -> int:
    g = load_complex(args.complex)
    loop = load_loop(args.loop)
    try:
        loop.check(g)
    except LoopError as exc:
        raise InputError(f"{args.loop}: {exc}") from exc
    try:
        moves = reduce_loop(loop, g, args.budget, method=args.method)
    except LoopEssential as exc:
        _emit(args, {"reduced": False, "essential": True, "reason": str(exc)})
        return EXIT_FAIL
    if moves is None:
        _emit(args, {"reduced": None, "essential": False})
        return EXIT_UNKNOWN
    _emit(args, {"reduced": True, "moves": [m.to_dict() for m in moves]})
    return EXIT_PASS


def cmd_pairgraph(args) -> int:
    g, cfg, lab = _labeled(args)
    gp = dominating_subcomplex(lab, args.component)
    graphs = []
    ok = True
    for u in complement_components(g, gp):
        pg = boundary_pair_graph(g, gp, u)
        ok &= pg.is_connected()
        graphs.append(dict(pg.to_dict(), u_prime=sorted(u), connected=pg.is_connected()))
    _emit(args, {"component": args.component, "graphs": graphs})
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_dual(args) -> int:
    s = load_strata(args.strata)
    try:
        g, ids = build_dual(s)
    except StratificationError as exc:
        _emit(args, {"problems": exc.problems})
        return EXIT_FAIL
    _emit(args, g.to_json())
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dualcx", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s 0.1.0 ({kernels.BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, fn, *opts, help=None):
        sp = sub.add_parser(name, help=help)
        for o in opts:
            sp.add_argument(f"--{o}", required=o in ("complex", "config", "labeling", "loop", "sequence", "strata", "certificate"))
        sp.add_argument("--out", help="output file (stdout when omitted)")
        sp.set_defaults(fn=fn)
        return sp

    sp = sub.add_parser("validate", help="validate any combination of input files")
    for o in ("complex", "config", "labeling", "strata"):
        sp.add_argument(f"--{o}")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_validate)

    sp = cmd("certify", cmd_certify, "complex", "labeling", "config", help="run every hypothesis check")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    cmd("replay", cmd_replay, "certificate", "complex", "labeling", "config", help="re-check a certificate")

    sp = sub.add_parser("generate", help="write a seeded instance")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--family", choices=("a", "b", "any"), default="a")
    sp.add_argument("--mutation", choices=MUTATIONS)
    sp.add_argument("--components", type=int)
    sp.add_argument("--points", type=int, help="extra points (family a) or total points (family any)")
    sp.add_argument("--out", default=".")
    sp.set_defaults(fn=cmd_generate)

    cmd("betti", cmd_betti, "complex", help="rational Betti numbers")
    sp = cmd("collapse", cmd_collapse, "complex", help="search for a collapse to a point")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp = cmd("cone", cmd_cone, "complex", help="cone over a complex")
    sp.add_argument("--apex", type=int)
    sp = cmd("tree", cmd_tree, "config", help="peel test")
    sp.add_argument("--method", choices=("greedy", "exhaustive"), default="greedy")
    cmd("cycfind", cmd_cycfind, "config", help="non-trivial cycle sequence with distinct entries")
    sp = cmd("reduce", cmd_reduce, "sequence", help="(a) or (a,b) reduction")
    sp.add_argument("--mode", choices=("a", "ab"), default="ab")
    sp.add_argument("--config")
    cmd("loop-image", cmd_loop_image, "complex", "labeling", "config", "loop", help="image of an edge loop")
    sp = cmd("loop-reduce", cmd_loop_reduce, "complex", "loop", help="moves contracting a loop")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--method", choices=("auto", "collapse", "bfs"), default="auto")
    sp = cmd("pairgraph", cmd_pairgraph, "complex", "labeling", "config", help="boundary pair graphs")
    sp.add_argument("--component", required=True)
    cmd("dual", cmd_dual, "strata", help="dual complex of stratification data")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, ComplexError, ConfigError) as exc:
        print(f"dualcx: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
