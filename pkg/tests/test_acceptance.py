"""One test per acceptance criterion; each records a PASS/FAIL line."""

import itertools
import json
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from conftest import ACCEPTANCE_LINES, word
from dualcx import cli, kernels
from dualcx.certify import certify, replay_certificate
from dualcx.complex import euler_characteristic
from dualcx.curves import (
    CurveConfig,
    find_nontrivial_cycle_sequence,
    forms_tree,
    is_connected,
    is_cycle_sequence,
    is_trivial,
    reduce_ab,
)
from dualcx.generate import MUTATION_CHECK, MUTATIONS, family_a, family_b, make_rng, move_instance, random_complex, random_config
from dualcx.homotopy import betti, cone_map, elementary_collapse, free_pairs, is_collapsible, is_cone_with_apex
from dualcx.loops import (
    backtracks,
    boundary_pair_graph,
    cancel_backtrack,
    complement_components,
    dominating_subcomplex,
    gamma_components,
    image_of_loop,
    move_across_triangle,
    step2_case,
    triangle_moves,
)
from dualcx.oracles import distinct_cycle_sequences, peel_exhaustive, triviality_outcomes

pytestmark = pytest.mark.acceptance

COUNTEREXAMPLES = Path(__file__).parent / "counterexamples"


@contextmanager
def criterion(number, title, limit):
    start = time.perf_counter()
    info = {}
    status = "FAIL"
    try:
        yield info
        elapsed = time.perf_counter() - start
        if elapsed > limit:
            info["timing"] = f"over the {limit:g} s limit"
            raise AssertionError(f"criterion {number} took {elapsed:.2f} s, limit {limit:g} s")
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        detail = ", ".join(f"{k}={v}" for k, v in info.items())
        line = f"criterion {number} [{status}] {title} ({elapsed:.2f} s; {detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)


def padded(b, n=6):
    return tuple(b) + (0,) * (n - len(b))


def test_criterion_1_worked_example():
    q1 = word("P1 C1 P2 C2 P3 C3 P3 C4 P4 C5 P5 C3 P3 C2 P2 C1")
    q2 = word("P1 C1 P2 C2 P3 C3 P3 C4 P4 C5 P5 C5 P4 C4 P3 C2 P2 C1")
    with criterion(1, "Q1 reduces to (C3,P3,C4,P4,C5,P5); Q2 is trivial", 60) as info:
        best = float("inf")
        for _ in range(20):
            t = time.perf_counter()
            r1 = reduce_ab(q1)
            t2 = is_trivial(q2)
            best = min(best, time.perf_counter() - t)
        info["best_ms"] = f"{best * 1e3:.3f}"
        info["backend"] = kernels.BACKEND
        assert r1 == tuple(word("C3 P3 C4 P4 C5 P5"))
        assert t2 is True
        assert best < 1e-3


def _patterns(length, letters):
    def go(p, m):
        if len(p) == length:
            yield tuple(p)
            return
        for a in range(min(m + 1, letters)):
            yield from go(p + [a], max(m, a + 1))

    yield from go([], 0)


def test_criterion_2_order_independence():
    with criterion(2, "canonical triviality equals all-orders triviality", 60) as info:
        rng = make_rng(2)
        checked = 0
        for _ in range(200):
            cfg = random_config(rng, rng.randint(1, 4), rng.randint(1, 5))
            entries = cfg.entries()
            alphabet = rng.sample(entries, min(6, len(entries)))
            for _ in range(100):
                w = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 12)))
                assert triviality_outcomes(w) == {is_trivial(w)}, w
                checked += 1
        info["sampled"] = checked
        # every word of length <= 10 over <= 6 letters, up to renaming letters
        patterns = 0
        for n in range(11):
            for w in _patterns(n, 6):
                assert triviality_outcomes(w) == {is_trivial(w)}, w
                patterns += 1
        info["exhaustive_patterns"] = patterns


def _all_configs(n_comp, max_points):
    comps = [f"C{i + 1}" for i in range(n_comp)]
    subsets = [s for k in range(1, n_comp + 1) for s in itertools.combinations(comps, k)]
    for m in range(max_points + 1):
        for choice in itertools.combinations_with_replacement(subsets, m):
            yield CurveConfig(comps, {f"P{j + 1}": list(s) for j, s in enumerate(choice)})


def test_criterion_3_cycle_extraction_both_ways():
    with criterion(3, "non-tree gives a distinct non-trivial cycle; tree admits none", 300) as info:
        trees = others = 0
        for n in range(1, 5):
            for cfg in _all_configs(n, 5):
                if not is_connected(cfg):
                    continue
                cyc = find_nontrivial_cycle_sequence(cfg)
                if forms_tree(cfg):
                    trees += 1
                    assert cyc is None
                    assert next(distinct_cycle_sequences(cfg), None) is None, cfg
                else:
                    others += 1
                    assert cyc is not None and is_cycle_sequence(cyc, cfg), cfg
                    assert not is_trivial(cyc) and len(set(cyc)) == len(cyc), cfg
        info["trees"] = trees
        info["non_trees"] = others


def test_criterion_4_greedy_equals_exhaustive_peel():
    with criterion(4, "greedy peel equals exhaustive peel", 120) as info:
        total = 0
        for n in range(1, 6):
            subsets = range(1, 1 << n)
            for m in range(7):
                for choice in itertools.combinations_with_replacement(subsets, m):
                    masks = list(choice)
                    g = kernels.peel_greedy(n, masks)
                    e = peel_exhaustive(n, masks)
                    assert (g is None) == (e is None), (n, masks)
                    total += 1
        info["configs"] = total


def test_criterion_5_move_invariance():
    with criterion(5, "(a,b)-reduction preserved by every applicable move", 60) as info:
        cases = dict.fromkeys(["i", "ii", "iii", "iv", "backtrack"], 0)
        for seed in range(1000):
            inst, loop = move_instance(make_rng(seed))
            g, lab = inst.complex, inst.labeling
            before = reduce_ab(image_of_loop(loop, lab))
            for i, F in triangle_moves(g, loop):
                cases[step2_case(lab, loop, i)] += 1
                after = move_across_triangle(g, loop, i, F)
                assert reduce_ab(image_of_loop(after, lab)) == before, (seed, i, F)
            for i in backtracks(loop):
                cases["backtrack"] += 1
                assert reduce_ab(image_of_loop(cancel_backtrack(loop, i), lab)) == before, (seed, i)
        info.update(cases)
        assert all(cases.values()), cases


def test_criterion_6_collapse_and_cone_laws():
    with criterion(6, "collapses keep Betti numbers; cones are contractible cones", 120) as info:
        rng = make_rng(6)
        collapses = collapsible = 0
        for _ in range(500):
            c = random_complex(rng)
            b = padded(betti(c))
            for step in free_pairs(c):
                assert padded(betti(elementary_collapse(c, step))) == b
                collapses += 1
            if is_collapsible(c) is not None:
                collapsible += 1
                assert b == padded((1,)) and euler_characteristic(c) == 1
            cone, apex, _ = cone_map(c)
            assert padded(betti(cone)) == padded((1,))
            assert is_cone_with_apex(cone, apex)
        info["collapses"] = collapses
        info["collapsible"] = collapsible


def test_criterion_7_mayer_vietoris_components():
    with criterion(7, "#components of U cap V (pairs) equals #components of U", 60) as info:
        checked = 0
        for seed in range(200):
            inst = family_a(make_rng(7000 + seed))
            g = inst.complex
            assert betti(g)[1:2] in ((), (0,))
            for c in inst.config.components:
                gp = dominating_subcomplex(inst.labeling, c)
                assert gp.is_connected()
                assert len(gamma_components(g, gp)) == len(complement_components(g, gp)), (seed, c)
                checked += 1
        info["subcomplexes"] = checked


def test_criterion_8_pair_graph_connectivity():
    with criterion(8, "every complement component has a connected pair graph", 120) as info:
        graphs = 0
        bad = []
        for seed in range(200):
            inst = family_a(make_rng(8000 + seed))
            g = inst.complex
            assert is_collapsible(g) is not None
            for c in inst.config.components:
                gp = dominating_subcomplex(inst.labeling, c)
                assert gp.is_connected() and gp.dimension <= 1
                for u in complement_components(g, gp):
                    graphs += 1
                    if not boundary_pair_graph(g, gp, u).is_connected():
                        bad.append((seed, inst))
        info["graphs"] = graphs
        for seed, inst in bad:
            cert = certify(inst.complex, inst.labeling)
            COUNTEREXAMPLES.mkdir(exist_ok=True)
            (COUNTEREXAMPLES / f"pair_graph_{seed}.json").write_text(cert.to_json())
            assert replay_certificate(cert, inst.complex, inst.labeling)
        info["counterexamples"] = len(bad)
        assert not bad


def _cli_instance(tmp, seed, family, mutation=None):
    d = tmp / f"{family}-{mutation}-{seed}"
    argv = ["generate", "--seed", str(seed), "--family", family, "--out", str(d)]
    if mutation:
        argv += ["--mutation", mutation]
    assert cli.main(argv) == cli.EXIT_PASS
    files = ["--complex", str(d / "complex.json"), "--labeling", str(d / "labeling.json"), "--config", str(d / "config.json")]
    code = cli.main(["certify", *files, "--out", str(d / "cert.json")])
    cert = json.loads((d / "cert.json").read_text())
    replayed = cli.main(["replay", "--certificate", str(d / "cert.json"), *files, "--out", str(d / "replay.json")])
    return code, cert, replayed


def test_criterion_9_certify_pipeline(tmp_path, capsys):
    with criterion(9, "family (a) passes; each mutation fails naming itself", 180) as info:
        for seed in range(200):
            code, cert, replayed = _cli_instance(tmp_path, 9000 + seed, "a")
            assert code == cli.EXIT_PASS and cert["verdict"] == "pass", (seed, cert["failures"])
            assert replayed == cli.EXIT_PASS
        per = 40
        for mutation in MUTATIONS:
            for seed in range(per):
                code, cert, replayed = _cli_instance(tmp_path, 90000 + seed, "b", mutation)
                assert code == cli.EXIT_FAIL and cert["verdict"] == "fail", (mutation, seed)
                assert cert["failures"] == [MUTATION_CHECK[mutation]], (mutation, seed, cert["failures"])
                assert cert["violation"] == MUTATION_CHECK[mutation]
                assert replayed == cli.EXIT_PASS, (mutation, seed)
        capsys.readouterr()
        info["family_a"] = 200
        info["family_b"] = per * len(MUTATIONS)
