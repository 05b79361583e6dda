"""End-to-end certification: hypothesis checks, tree verdict, replayable evidence."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping

from .complex import DeltaComplex, connected_components
from .curves import CurveConfig, CycleSequence, Entry, find_nontrivial_cycle_sequence, forms_tree, is_connected, is_cycle_sequence, is_trivial, reduce_ab
from .homotopy import DEFAULT_BUDGET, BudgetExhausted, CollapseStep, betti, collapse_sequence, is_collapsible
from .loops import (
    EdgeLoop,
    LiftError,
    LoopEssential,
    Move,
    StrataLabeling,
    apply_moves,
    boundary_pair_graph,
    check_g_prime,
    complement_components,
    dominating_subcomplex,
    image_of_loop,
    lift_cycle_sequence,
    reduce_loop,
)

SCHEMA_VERSION = 1

CHECKS = (
    "complex-valid",
    "regularity",
    "labeling-monotonicity",
    "config-connected",
    "collapsibility",
    "g-prime-connectivity",
    "lift-connectivity",
    "pair-graph-connectivity",
)

PASS, FAIL, UNKNOWN, SKIPPED = "pass", "fail", "unknown", "skipped"


@dataclass
class Certificate:
    verdict: str
    violation: str | None = None
    failures: list[str] = field(default_factory=list)
    checks: dict[str, dict] = field(default_factory=dict)
    evidence: dict[str, Any] = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "verdict": self.verdict,
            "violation": self.violation,
            "failures": list(self.failures),
            "checks": self.checks,
            "evidence": self.evidence,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: Mapping) -> "Certificate":
        return cls(d["verdict"], d.get("violation"), list(d.get("failures", [])), dict(d.get("checks", {})),
                   dict(d.get("evidence", {})), d.get("schema_version", SCHEMA_VERSION))


def _point_members(lab: StrataLabeling, p: str) -> set[int]:
    e = Entry.point(p)
    return {s for s in lab.complex if lab.meets(s, e)}


def _pair_graph_failures(g: DeltaComplex, lab: StrataLabeling) -> list[dict]:
    bad = []
    for c in lab.config.components:
        gp = dominating_subcomplex(lab, c)
        for u in complement_components(g, gp):
            pg = boundary_pair_graph(g, gp, u)
            comps = pg.components()
            if len(comps) > 1:
                bad.append({
                    "component": c,
                    "u_prime": sorted(u),
                    "pair_components": [sorted(list(p) for p in comp) for comp in comps],
                })
    return bad


def run_checks(g: DeltaComplex, lab: StrataLabeling, budget: int = DEFAULT_BUDGET) -> tuple[dict[str, dict], list[CollapseStep] | None]:
    cfg = lab.config
    res: dict[str, dict] = {}
    structural = [v for v in g.violations if v.structural]
    res["complex-valid"] = {"status": FAIL if structural else PASS,
                            "evidence": [v.to_dict() for v in structural[:20]]}
    if structural:
        for name in CHECKS[1:]:
            res[name] = {"status": SKIPPED}
        return res, None

    irregular = [v for v in g.violations if v.kind == "regularity"]
    res["regularity"] = {"status": FAIL if irregular else PASS, "evidence": [v.simplex for v in irregular]}

    lab_bad = lab.validate()
    res["labeling-monotonicity"] = {"status": FAIL if lab_bad else PASS, "evidence": [v.to_dict() for v in lab_bad[:20]]}
    res["config-connected"] = {"status": PASS if is_connected(cfg) else FAIL}

    steps = None
    try:
        steps = is_collapsible(g, budget)
        if steps is None:
            res["collapsibility"] = {"status": FAIL, "evidence": {"betti": list(betti(g))}}
        else:
            res["collapsibility"] = {"status": PASS, "evidence": [list(s) for s in steps]}
    except BudgetExhausted as exc:
        res["collapsibility"] = {"status": UNKNOWN, "evidence": {"visited": exc.visited}}

    if lab_bad:
        for name in ("g-prime-connectivity", "lift-connectivity", "pair-graph-connectivity"):
            res[name] = {"status": SKIPPED, "reason": "labeling-monotonicity"}
        return res, steps

    gp_bad = {c: r for c in cfg.components if (r := check_g_prime(lab, c))}
    res["g-prime-connectivity"] = {"status": FAIL if gp_bad else PASS, "evidence": gp_bad}

    split = {}
    for p in cfg.points:
        n = len(connected_components(g, _point_members(lab, p)))
        if n != 1:
            split[p] = n
    res["lift-connectivity"] = {"status": FAIL if split else PASS, "evidence": split}

    if res["collapsibility"]["status"] != PASS or gp_bad:
        res["pair-graph-connectivity"] = {"status": SKIPPED, "reason": "collapsibility and g-prime-connectivity must pass"}
    else:
        bad = _pair_graph_failures(g, lab)
        res["pair-graph-connectivity"] = {"status": FAIL if bad else PASS, "evidence": bad}
    return res, steps


def contradiction_chain(g: DeltaComplex, lab: StrataLabeling, steps, budget: int = DEFAULT_BUDGET) -> dict:
    """find cycle sequence -> lift to a loop -> contract the loop.

    Each stage records its output; ``stage`` names the first one that did
    not go through, or ``"complete"``.
    """
    out: dict[str, Any] = {}
    try:
        cyc = find_nontrivial_cycle_sequence(lab.config)
    except ValueError as exc:
        return {"stage": "cycle-sequence", "error": str(exc)}
    if cyc is None:
        return {"stage": "cycle-sequence", "error": "configuration forms a tree"}
    out["cycle_sequence"] = cyc.to_list()
    try:
        loop = lift_cycle_sequence(lab, cyc)
    except LiftError as exc:
        out.update(stage="lift", error=str(exc))
        return out
    out["loop"] = loop.to_dict()
    try:
        moves = reduce_loop(loop, g, budget, collapse=steps)
    except LoopEssential as exc:
        out.update(stage="reduce", error=str(exc))
        return out
    if moves is None:
        out.update(stage="reduce", error="budget exhausted")
        return out
    out["moves"] = [m.to_dict() for m in moves]
    out["stage"] = "complete"
    return out


def certify(g: DeltaComplex, lab: StrataLabeling, budget: int = DEFAULT_BUDGET) -> Certificate:
    checks, steps = run_checks(g, lab, budget)
    failures = [n for n in CHECKS if checks[n]["status"] == FAIL]
    unknown = [n for n in CHECKS if checks[n]["status"] == UNKNOWN]
    evidence: dict[str, Any] = {}
    tree = None
    if checks["config-connected"]["status"] == PASS and not lab.config.validate():
        tree = forms_tree(lab.config)
        evidence["tree"] = {"is_tree": tree.is_tree, "peel_order": list(tree.peel_order or [])}
    if steps is not None:
        evidence["collapse"] = [list(s) for s in steps]
    if tree is not None and not tree and not checks["labeling-monotonicity"]["status"] == FAIL:
        evidence["chain"] = contradiction_chain(g, lab, steps, budget)
    if failures:
        return Certificate(FAIL, failures[0], failures, checks, evidence)
    if unknown:
        return Certificate(UNKNOWN, None, [], checks, evidence)
    if tree:
        return Certificate(PASS, None, [], checks, evidence)
    chain = evidence.get("chain", {})
    if chain.get("stage") == "complete":
        return Certificate(FAIL, "contradiction", ["contradiction"], checks, evidence)
    if chain.get("stage") == "lift":
        return Certificate(FAIL, "lift-admissible-path", ["lift-admissible-path"], checks, evidence)
    return Certificate(UNKNOWN, None, [], checks, evidence)


# -- replay ----------------------------------------------------------------------------


def _replay_check(name: str, g: DeltaComplex, lab: StrataLabeling, ev) -> bool:
    if name == "complex-valid":
        ids = {v["simplex"] for v in ev}
        return bool(ids) and ids <= {v.simplex for v in g.violations if v.structural}
    if name == "regularity":
        return bool(ev) and all(s in g and len(set(g.vertices(s))) < len(g.vertices(s)) for s in ev)
    if name == "labeling-monotonicity":
        live = {(v.simplex, v.kind) for v in lab.validate()}
        return bool(ev) and all((v["simplex"], v["kind"]) in live for v in ev)
    if name == "config-connected":
        return not is_connected(lab.config)
    if name == "collapsibility":
        return is_collapsible(g) is None and list(betti(g)) == ev["betti"]
    if name == "g-prime-connectivity":
        return bool(ev) and all(check_g_prime(lab, c) for c in ev)
    if name == "lift-connectivity":
        return bool(ev) and all(len(connected_components(g, _point_members(lab, p))) == n for p, n in ev.items())
    if name == "pair-graph-connectivity":
        for item in ev:
            gp = dominating_subcomplex(lab, item["component"])
            pg = boundary_pair_graph(g, gp, item["u_prime"])
            if len(pg.components()) != len(item["pair_components"]):
                return False
        return bool(ev)
    return False


def _replay_chain(g: DeltaComplex, lab: StrataLabeling, chain: Mapping) -> bool:
    cyc = CycleSequence.from_list(chain["cycle_sequence"])
    if not is_cycle_sequence(cyc, lab.config) or is_trivial(cyc) or len(set(cyc)) != len(cyc):
        return False
    loop = EdgeLoop.from_dict(chain["loop"])
    loop.check(g)
    if not reduce_ab(image_of_loop(loop, lab)).same_cycle(reduce_ab(cyc)):
        return False
    end = apply_moves(g, loop, [Move.from_dict(m) for m in chain["moves"]])
    return end.is_trivial


def replay_certificate(cert: Certificate, g: DeltaComplex, lab: StrataLabeling) -> bool:
    """Re-derive the verdict from the recorded evidence alone."""
    ev = cert.evidence
    if cert.verdict == PASS:
        steps = [CollapseStep(*s) for s in ev.get("collapse", [])]
        if len(collapse_sequence(g, steps)) != 1:
            return False
        order = ev.get("tree", {}).get("peel_order", [])
        return _replay_peel(lab.config, order)
    if cert.verdict == FAIL:
        if cert.violation == "contradiction":
            return _replay_chain(g, lab, ev["chain"])
        if cert.violation == "lift-admissible-path":
            chain = ev["chain"]
            try:
                lift_cycle_sequence(lab, CycleSequence.from_list(chain["cycle_sequence"]))
            except LiftError:
                return True
            return False
        return all(_replay_check(n, g, lab, cert.checks[n].get("evidence")) for n in cert.failures)
    return cert.verdict == UNKNOWN


def _replay_peel(cfg: CurveConfig, order) -> bool:
    if sorted(order) != sorted(cfg.components):
        return False
    remaining = set(order)
    for c in order[:-1]:
        rest = remaining - {c}
        hits = sum(1 for on in cfg.points.values() if c in on and on & rest)
        if hits != 1:
            return False
        remaining.discard(c)
    return True
