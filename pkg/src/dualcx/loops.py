"""Labeled dual complexes, edge loops and the moves that preserve their images.

A labeling sends every simplex of a (dimension <= 2) complex to a component or
a marked point of a curve configuration, decreasing along cofaces: a coface
keeps the label of its face or passes from a component to a point on it.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

from .complex import (
    ComplexError,
    DeltaComplex,
    NotFaceClosedError,
    Subcomplex,
    connected_components,
    group_components,
)
from .curves import COMPONENT, ConfigError, CurveConfig, CycleSequence, Entry, is_cycle_sequence
from .homotopy import DEFAULT_BUDGET, BudgetExhausted, CollapseStep, betti, is_boundary, is_collapsible


class LabelingError(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations[:4]))


class LoopError(ValueError):
    pass


class MoveError(LoopError):
    pass


class LiftError(ValueError):
    def __init__(self, reason: str, entry: Entry | None = None, detail: str = ""):
        self.reason = reason
        self.entry = entry
        msg = reason if entry is None else f"{reason} at {entry!r}"
        super().__init__(msg + (f": {detail}" if detail else ""))


class LoopEssential(RuntimeError):
    """The loop has a non-zero rational homology class, so it cannot be contracted."""


@dataclass(frozen=True, order=True)
class LabelViolation:
    simplex: int
    kind: str
    detail: str = ""

    def __str__(self) -> str:
        return f"simplex {self.simplex}: {self.kind}" + (f" ({self.detail})" if self.detail else "")

    def to_dict(self) -> dict:
        return {"simplex": self.simplex, "kind": self.kind, "detail": self.detail}


class StrataLabeling:
    def __init__(self, complex: DeltaComplex, config: CurveConfig, labels: Mapping[int, Entry]):
        self.complex = complex
        self.config = config
        self.labels = dict(labels)

    def f(self, sid: int) -> Entry:
        return self.labels[sid]

    def meets(self, sid: int, point: Entry) -> bool:
        """``point`` lies in the image of ``sid``."""
        return self.config.contains(self.labels[sid], point)

    def validate(self) -> list[LabelViolation]:
        g, cfg = self.complex, self.config
        out: list[LabelViolation] = []
        if g.dimension > 2:
            out.append(LabelViolation(-1, "dimension", f"complex has dimension {g.dimension}"))
        for s in self.labels:
            if s not in g:
                out.append(LabelViolation(s, "unknown-simplex"))
        for s in g:
            e = self.labels.get(s)
            if e is None:
                out.append(LabelViolation(s, "missing-label"))
                continue
            if not cfg.resolves(e):
                out.append(LabelViolation(s, "unresolved-entry", repr(e)))
                continue
            if g.dim_of(s) == 2 and e.kind != "point":
                out.append(LabelViolation(s, "two-cell-not-point", repr(e)))
            for face in g.faces(s):
                fe = self.labels.get(face)
                if fe is None or not cfg.resolves(fe):
                    continue
                if not cfg.contains(fe, e):
                    out.append(LabelViolation(s, "monotonicity", f"{e!r} is not inside {fe!r} of face {face}"))
        out.sort()
        return out

    def require_valid(self) -> None:
        bad = self.validate()
        if bad:
            raise LabelingError(bad)

    def to_dict(self) -> dict:
        return {"labels": {str(s): e.to_dict() for s, e in sorted(self.labels.items())}}

    @classmethod
    def from_dict(cls, data: Mapping, complex: DeltaComplex, config: CurveConfig) -> "StrataLabeling":
        if not isinstance(data, Mapping) or not isinstance(data.get("labels"), Mapping):
            raise ConfigError('expected an object with a "labels" map')
        labels = {}
        for key, value in data["labels"].items():
            try:
                sid = int(key)
            except ValueError as exc:
                raise ConfigError(f"label key {key!r} is not a simplex id") from exc
            labels[sid] = Entry.from_dict(value)
        return cls(complex, config, labels)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


# -- edge paths ----------------------------------------------------------------


@dataclass(frozen=True)
class EdgePath:
    """Vertices ``S_1 .. S_{n+1}`` joined by edges ``C_1 .. C_n``."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(self.vertices) != len(self.edges) + 1:
            raise LoopError("an edge path needs one more vertex than edges")

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def is_trivial(self) -> bool:
        return not self.edges

    def check(self, g: DeltaComplex) -> None:
        for i, e in enumerate(self.edges):
            a, b = self.vertices[i], self.vertices[i + 1]
            if e not in g or g.dim_of(e) != 1:
                raise LoopError(f"{e} is not an edge")
            if a == b:
                raise LoopError(f"consecutive vertices {a} coincide")
            if g.vertex_set(e) != {a, b}:
                raise LoopError(f"edge {e} does not join {a} and {b}")
        for v in self.vertices:
            if v not in g or g.dim_of(v) != 0:
                raise LoopError(f"{v} is not a vertex")

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "edges": list(self.edges)}

    @classmethod
    def from_dict(cls, data: Mapping) -> "EdgePath":
        try:
            return cls(tuple(int(v) for v in data["vertices"]), tuple(int(e) for e in data["edges"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise LoopError(f"malformed path: {exc}") from exc


@dataclass(frozen=True)
class EdgeLoop(EdgePath):
    def __post_init__(self):
        super().__post_init__()
        if self.vertices[0] != self.vertices[-1]:
            raise LoopError("an edge loop must end at its first vertex")

    @classmethod
    def constant(cls, v: int) -> "EdgeLoop":
        return cls((v,), ())

    def rotate(self, k: int) -> "EdgeLoop":
        n = len(self.edges)
        if n == 0:
            return self
        k %= n
        verts = self.vertices[k:n] + self.vertices[:k]
        return EdgeLoop(verts + (verts[0],), self.edges[k:] + self.edges[:k])

    def chain(self, g: DeltaComplex) -> dict[int, int]:
        """The 1-chain traced by the loop (orientation from vertex order)."""
        out: dict[int, int] = {}
        for i, e in enumerate(self.edges):
            sign = 1 if g.vertices(e) == (self.vertices[i], self.vertices[i + 1]) else -1
            out[e] = out.get(e, 0) + sign
        return {e: x for e, x in out.items() if x}


def image_of_loop(loop: EdgePath, lab: StrataLabeling) -> CycleSequence:
    """Interleaved labels ``(f(S_1), f(C_1), ..., f(S_n), f(C_n))``."""
    for s in loop.vertices + loop.edges:
        if s not in lab.complex:
            raise LoopError(f"simplex {s} of the loop is not in the labeled complex")
    out = []
    for v, e in zip(loop.vertices, loop.edges):
        out.append(lab.f(v))
        out.append(lab.f(e))
    return CycleSequence(out)


# -- moves -----------------------------------------------------------------------


class Move(NamedTuple):
    kind: str
    index: int
    simplex: int | None = None

    def to_dict(self) -> dict:
        d = {"move": self.kind, "index": self.index}
        if self.simplex is not None:
            d["simplex"] = self.simplex
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "Move":
        return cls(d["move"], int(d["index"]), d.get("simplex"))


def _third_edge(g: DeltaComplex, F: int, a: int, b: int) -> int:
    rest = [e for e in g.faces(F) if e not in (a, b)]
    if len(rest) != 1:
        raise MoveError(f"edges {a}, {b} are not two distinct sides of {F}")
    return rest[0]


def move_across_triangle(g: DeltaComplex, loop: EdgeLoop, i: int, F: int) -> EdgeLoop:
    """Replace ``C_i, S_{i+1}, C_{i+1}`` (0-based ``i``) by the third side of ``F``."""
    n = len(loop.edges)
    if not 0 <= i <= n - 2:
        raise MoveError(f"index {i} out of range for a loop with {n} edges")
    ci, cj = loop.edges[i], loop.edges[i + 1]
    if ci == cj:
        raise MoveError("the two edges coincide; cancel the backtrack instead")
    if F not in g or g.dim_of(F) != 2 or ci not in g.faces(F) or cj not in g.faces(F):
        raise MoveError(f"{F} is not a 2-simplex containing edges {ci} and {cj}")
    third = _third_edge(g, F, ci, cj)
    if g.vertex_set(third) != {loop.vertices[i], loop.vertices[i + 2]}:
        raise MoveError(f"third edge {third} does not join {loop.vertices[i]} and {loop.vertices[i + 2]}")
    verts = loop.vertices[: i + 1] + loop.vertices[i + 2:]
    edges = loop.edges[:i] + (third,) + loop.edges[i + 2:]
    return EdgeLoop(verts, edges)


def expand_across_triangle(g: DeltaComplex, loop: EdgeLoop, i: int, F: int) -> EdgeLoop:
    """Inverse of :func:`move_across_triangle`: route edge ``C_i`` around ``F``."""
    n = len(loop.edges)
    if not 0 <= i < n:
        raise MoveError(f"index {i} out of range for a loop with {n} edges")
    e = loop.edges[i]
    if F not in g or g.dim_of(F) != 2 or e not in g.faces(F):
        raise MoveError(f"{F} is not a 2-simplex containing edge {e}")
    a, b = loop.vertices[i], loop.vertices[i + 1]
    (x,) = g.vertex_set(F) - {a, b}
    first = next(s for s in g.faces(F) if g.vertex_set(s) == {a, x})
    second = next(s for s in g.faces(F) if g.vertex_set(s) == {x, b})
    verts = loop.vertices[: i + 1] + (x,) + loop.vertices[i + 1:]
    edges = loop.edges[:i] + (first, second) + loop.edges[i + 1:]
    return EdgeLoop(verts, edges)


def cancel_backtrack(loop: EdgeLoop, i: int) -> EdgeLoop:
    """Excise ``S_{i+1} -C-> S_{i+2} -C-> S_{i+3}`` (0-based ``i``, equal edges)."""
    n = len(loop.edges)
    if not 0 <= i <= n - 2 or loop.edges[i] != loop.edges[i + 1]:
        raise MoveError(f"no backtrack at index {i}")
    assert loop.vertices[i] == loop.vertices[i + 2]
    return EdgeLoop(loop.vertices[: i + 1] + loop.vertices[i + 3:], loop.edges[:i] + loop.edges[i + 2:])


def insert_backtrack(g: DeltaComplex, loop: EdgeLoop, k: int, edge: int) -> EdgeLoop:
    """Reverse of :func:`cancel_backtrack`: go out along ``edge`` from vertex ``k`` and back."""
    if not 0 <= k <= len(loop.edges):
        raise MoveError(f"vertex position {k} out of range")
    v = loop.vertices[k]
    ends = g.vertex_set(edge) if edge in g and g.dim_of(edge) == 1 else frozenset()
    if v not in ends or len(ends) != 2:
        raise MoveError(f"{edge} is not an edge at vertex {v}")
    (w,) = ends - {v}
    verts = loop.vertices[: k + 1] + (w, v) + loop.vertices[k + 1:]
    edges = loop.edges[:k] + (edge, edge) + loop.edges[k:]
    return EdgeLoop(verts, edges)


def apply_move(g: DeltaComplex, loop: EdgeLoop, move: Move) -> EdgeLoop:
    kind = move.kind
    if kind == "contract":
        return move_across_triangle(g, loop, move.index, move.simplex)
    if kind == "expand":
        return expand_across_triangle(g, loop, move.index, move.simplex)
    if kind == "cancel":
        return cancel_backtrack(loop, move.index)
    if kind == "insert":
        return insert_backtrack(g, loop, move.index, move.simplex)
    if kind == "rotate":
        return loop.rotate(move.index)
    raise MoveError(f"unknown move {kind!r}")


def apply_moves(g: DeltaComplex, loop: EdgeLoop, moves: Iterable[Move]) -> EdgeLoop:
    for m in moves:
        loop = apply_move(g, loop, m)
    return loop


def triangle_moves(g: DeltaComplex, loop: EdgeLoop) -> list[tuple[int, int]]:
    """All ``(i, F)`` where :func:`move_across_triangle` applies."""
    out = []
    for i in range(len(loop.edges) - 1):
        ci, cj = loop.edges[i], loop.edges[i + 1]
        if ci == cj:
            continue
        for F in sorted(set(g.cofaces(ci)) & set(g.cofaces(cj))):
            third = [e for e in g.faces(F) if e not in (ci, cj)]
            if len(third) == 1 and g.vertex_set(third[0]) == {loop.vertices[i], loop.vertices[i + 2]}:
                out.append((i, F))
    return out


def backtracks(loop: EdgeLoop) -> list[int]:
    return [i for i in range(len(loop.edges) - 1) if loop.edges[i] == loop.edges[i + 1]]


def step2_case(lab: StrataLabeling, loop: EdgeLoop, i: int) -> str:
    """Which of the four label patterns ``f(S_i), f(S_{i+1}), f(S_{i+2})`` shows."""
    x, y, z = (lab.f(loop.vertices[i + k]) for k in range(3))
    if x == y == z:
        return "i"
    if x == z:
        return "ii"
    if x == y or y == z:
        return "iii"
    return "iv"


# -- dominating subcomplex, complements, boundary pairs -----------------------------


def dominating_subcomplex(lab: StrataLabeling, c0: str) -> Subcomplex:
    """Simplices labeled by the component ``c0``; raises if not face-closed."""
    if c0 not in lab.config.components:
        raise ConfigError(f"{c0!r} is not a component")
    target = Entry.component(c0)
    members = {s for s in lab.complex if lab.labels.get(s) == target}
    return Subcomplex(lab.complex, frozenset(members))


def check_g_prime(lab: StrataLabeling, c0: str) -> list[str]:
    """Connectedness and dimension <= 1 of the subcomplex dominating ``c0``."""
    try:
        gp = dominating_subcomplex(lab, c0)
    except NotFaceClosedError as exc:
        return [f"not face-closed: {exc}"]
    report = []
    if not gp.members:
        report.append("empty")
        return report
    comps = connected_components(lab.complex, gp.members)
    if len(comps) > 1:
        report.append(f"disconnected: {len(comps)} components")
    if gp.dimension > 1:
        report.append(f"dimension {gp.dimension} > 1")
    return report


def complement_components(g: DeltaComplex, gp: Subcomplex) -> list[frozenset[int]]:
    """Components of the simplices outside ``gp`` under mutual face adjacency."""
    if gp.parent is not g and gp.parent != g:
        raise ComplexError("subcomplex belongs to a different complex")
    return connected_components(g, set(g) - gp.members)


class BoundaryPair(NamedTuple):
    B: int
    S: int


def boundary_pairs(g: DeltaComplex, gp: Subcomplex, u_prime: Iterable[int] | None = None) -> list[BoundaryPair]:
    region = None if u_prime is None else set(u_prime)
    out = []
    for B in g.of_dim(1):
        if B in gp.members or (region is not None and B not in region):
            continue
        for S in sorted(set(g.vertices(B))):
            if S in gp.members:
                out.append(BoundaryPair(B, S))
    out.sort()
    return out


def _pair_edges(g: DeltaComplex, gp: Subcomplex, nodes: Iterable[BoundaryPair]) -> list[tuple[BoundaryPair, BoundaryPair, str]]:
    nodes = set(nodes)
    by_edge: dict[int, list[BoundaryPair]] = {}
    for p in nodes:
        by_edge.setdefault(p.B, []).append(p)
    found: dict[tuple[BoundaryPair, BoundaryPair], str] = {}
    for F in g.of_dim(2):
        sides = g.faces(F)
        here = [p for B in dict.fromkeys(sides) for p in by_edge.get(B, ())]
        for a in here:
            for b in here:
                if a >= b:
                    continue
                if a.S == b.S and a.B != b.B:
                    found.setdefault((a, b), "d-1")
                elif a.S != b.S:
                    for E in sides:
                        if E in gp.members and g.vertex_set(E) == {a.S, b.S}:
                            found.setdefault((a, b), "d-2")
                            break
    return sorted((a, b, rule) for (a, b), rule in found.items())


@dataclass
class PairGraph:
    nodes: list[BoundaryPair]
    edges: list[tuple[BoundaryPair, BoundaryPair, str]] = field(default_factory=list)

    def components(self) -> list[frozenset[BoundaryPair]]:
        return group_components(self.nodes, [(a, b) for a, b, _ in self.edges])

    def is_connected(self) -> bool:
        """Vacuously true without nodes."""
        return len(self.components()) <= 1

    def to_dict(self) -> dict:
        return {
            "nodes": [list(p) for p in self.nodes],
            "edges": [{"a": list(a), "b": list(b), "rule": r} for a, b, r in self.edges],
        }


def _require_g_prime(gp: Subcomplex) -> None:
    if gp.dimension > 1 or not gp.members or not gp.is_connected():
        raise ComplexError("the dominating subcomplex must be nonempty, connected and of dimension <= 1")


def boundary_pair_graph(g: DeltaComplex, gp: Subcomplex, u_prime: Iterable[int]) -> PairGraph:
    """Pairs (B, S) in one complement component, joined by the (d-1)/(d-2) rules."""
    _require_g_prime(gp)
    region = frozenset(u_prime)
    if region not in complement_components(g, gp):
        raise ComplexError("u_prime is not a component of the complement")
    nodes = boundary_pairs(g, gp, region)
    return PairGraph(nodes, _pair_edges(g, gp, nodes))


def gamma_components(g: DeltaComplex, gp: Subcomplex) -> list[frozenset[BoundaryPair]]:
    """Components of the discrete model of ``U ∩ V``: all boundary pairs, same adjacency rules."""
    nodes = boundary_pairs(g, gp)
    return group_components(nodes, [(a, b) for a, b, _ in _pair_edges(g, gp, nodes)])


def mayer_vietoris_counts(g: DeltaComplex, gp: Subcomplex) -> tuple[int, int]:
    """``(#components of U ∩ V, #components of U)`` computed along independent routes."""
    return len(gamma_components(g, gp)), len(complement_components(g, gp))


# -- lifting cycle sequences ---------------------------------------------------------


def _members(lab: StrataLabeling, entry: Entry) -> set[int]:
    if entry.kind == COMPONENT:
        return {s for s in lab.complex if lab.f(s) == entry}
    return {s for s in lab.complex if lab.meets(s, entry)}


def _bfs(g: DeltaComplex, members: set[int], sources: Sequence[int], targets: set[int]) -> EdgePath | None:
    prev: dict[int, tuple[int, int] | None] = {}
    queue = deque()
    for s in sorted(sources):
        if s in members and s not in prev:
            prev[s] = None
            queue.append(s)
    while queue:
        v = queue.popleft()
        if v in targets:
            verts, edges = [v], []
            while prev[v] is not None:
                v, e = prev[v]
                verts.append(v)
                edges.append(e)
            return EdgePath(tuple(reversed(verts)), tuple(reversed(edges)))
        for e in sorted(g.cofaces(v)):
            if e not in members:
                continue
            ends = g.vertex_set(e)
            if len(ends) != 2:
                continue
            (w,) = ends - {v}
            if w in members and w not in prev:
                prev[w] = (v, e)
                queue.append(w)
    return None


def lift_cycle_sequence(lab: StrataLabeling, cyc: Sequence[Entry]) -> EdgeLoop:
    """An edge loop whose image (a,b)-reduces to ``cyc`` up to rotation.

    Point entries ``a_i`` become shortest paths from a vertex labeled
    ``a_{i-1}`` to one labeled ``a_{i+1}`` through simplices whose image
    contains ``a_i``; component entries become shortest paths inside the
    simplices labeled by that component joining the neighbouring pieces.
    Ties go to the lowest simplex id.
    """
    g, cfg = lab.complex, lab.config
    cyc = CycleSequence(cyc)
    if len(set(cyc)) != len(cyc):
        raise LiftError("entries must be distinct")
    if len(cyc) < 2 or not is_cycle_sequence(cyc, cfg):
        raise LiftError("not a cycle sequence")
    start = next(k for k, e in enumerate(cyc) if e.is_point)
    cyc = cyc.rotate(start)
    n = len(cyc)
    members = {e: _members(lab, e) for e in cyc}
    for e in cyc:
        if not members[e] or len(connected_components(g, members[e])) != 1:
            raise LiftError("connectivity", e)
    verts_with = {e: {s for s in g.of_dim(0) if lab.f(s) == e} for e in cyc}
    paths: list[EdgePath | None] = [None] * n
    for k in range(0, n, 2):
        path = _bfs(g, members[cyc[k]], sorted(verts_with[cyc[k - 1]]), verts_with[cyc[(k + 1) % n]])
        if path is None:
            raise LiftError("no admissible path", cyc[k])
        paths[k] = path
    for k in range(1, n, 2):
        src = paths[k - 1].vertices[-1]
        dst = paths[(k + 1) % n].vertices[0]
        path = _bfs(g, members[cyc[k]], [src], {dst})
        if path is None:
            raise LiftError("no admissible path", cyc[k])
        paths[k] = path
    verts = list(paths[0].vertices)
    edges = list(paths[0].edges)
    for p in paths[1:]:
        verts.extend(p.vertices[1:])
        edges.extend(p.edges)
    return EdgeLoop(tuple(verts), tuple(edges))


# -- contracting loops -----------------------------------------------------------------


def is_essential(g: DeltaComplex, loop: EdgeLoop) -> bool:
    """True when the loop carries a non-zero class in rational first homology."""
    b = betti(g)
    if len(b) < 2 or b[1] == 0:
        return False
    chain = loop.chain(g)
    return bool(chain) and not is_boundary(g, chain, 1)


def transport_through_collapses(g: DeltaComplex, loop: EdgeLoop, steps: Iterable[CollapseStep]) -> list[Move]:
    """Moves that push the loop off each collapsed pair in turn.

    A collapsed free edge is routed around its 2-cell; a collapsed leaf vertex
    is only reachable through a backtrack, which is cancelled.
    """
    moves: list[Move] = []
    cur = loop

    def step(m: Move) -> None:
        nonlocal cur
        cur = apply_move(g, cur, m)
        moves.append(m)

    for sigma, tau in steps:
        if cur.is_trivial:
            break
        d = g.dim_of(sigma)
        if d == 1:
            while sigma in cur.edges:
                step(Move("expand", cur.edges.index(sigma), tau))
        elif d == 0:
            while sigma in cur.vertices and not cur.is_trivial:
                if cur.vertices[0] == sigma:
                    step(Move("rotate", 1))
                i = cur.vertices.index(sigma, 1) - 1
                step(Move("cancel", i))
    if not cur.is_trivial:
        raise LoopError("collapse sequence did not end at a single vertex")
    return moves


def _neighbours(g: DeltaComplex, loop: EdgeLoop, max_len: int):
    for i in backtracks(loop):
        yield Move("cancel", i)
    for i, F in triangle_moves(g, loop):
        yield Move("contract", i, F)
    n = len(loop.edges)
    if n > 1:
        yield Move("rotate", 1)
    if n + 1 <= max_len:
        for i, e in enumerate(loop.edges):
            for F in sorted(set(g.cofaces(e))):
                yield Move("expand", i, F)
    if n + 2 <= max_len:
        for k, v in enumerate(loop.vertices[:-1] or loop.vertices):
            for e in sorted(set(g.cofaces(v))):
                if len(g.vertex_set(e)) == 2:
                    yield Move("insert", k, e)


def _bfs_moves(g: DeltaComplex, loop: EdgeLoop, budget: int, slack: int) -> list[Move] | None:
    max_len = len(loop.edges) + slack
    prev: dict[EdgeLoop, tuple[EdgeLoop, Move] | None] = {loop: None}
    queue = deque([loop])
    while queue:
        cur = queue.popleft()
        if cur.is_trivial:
            path = []
            while prev[cur] is not None:
                cur, m = prev[cur]
                path.append(m)
            return path[::-1]
        if len(prev) > budget:
            return None
        for m in _neighbours(g, cur, max_len):
            nxt = apply_move(g, cur, m)
            if nxt not in prev:
                prev[nxt] = (cur, m)
                queue.append(nxt)
    return None


def reduce_loop(
    loop: EdgeLoop,
    g: DeltaComplex,
    budget: int = DEFAULT_BUDGET,
    collapse: Sequence[CollapseStep] | None = None,
    method: str = "auto",
    slack: int = 4,
) -> list[Move] | None:
    """Moves taking ``loop`` to a constant loop, or None when the budget runs out.

    With a collapse sequence (given, or found within ``budget`` when
    ``method="auto"``) the loop is transported through each collapse, which
    always terminates. Otherwise a breadth-first search over single moves runs,
    allowing the loop to grow by at most ``slack`` edges. Raises
    :class:`LoopEssential` when the loop is non-zero in rational homology.
    """
    loop.check(g)
    if loop.is_trivial:
        return []
    if is_essential(g, loop):
        raise LoopEssential("loop has a non-zero class in H_1(G; Q)")
    if method not in ("auto", "collapse", "bfs"):
        raise ValueError(f"unknown method {method!r}")
    steps = collapse
    if steps is None and method != "bfs":
        try:
            steps = is_collapsible(g, budget)
        except BudgetExhausted:
            steps = None
    if steps is not None and method != "bfs":
        return transport_through_collapses(g, loop, steps)
    if method == "collapse":
        return None
    return _bfs_moves(g, loop, budget, slack)
