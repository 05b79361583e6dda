"""Seeded instance generators.

Every generator takes a ``random.Random`` (Mersenne Twister, seeded with one
64-bit integer) and nothing else, so equal seeds give byte-identical output.

Labeled instances are assembled from pieces:

* each component ``C`` gets a tree of ``C``-labeled vertices and edges, built
  from disjoint arcs (one per marked point on ``C`` plus a spare arc) joined
  by connector paths;
* each marked point ``P`` gets an apex ``w_P`` and the cone from ``w_P`` over
  its arcs, with ``P``-labeled bridge edges tying the arcs into a tree; an
  optional ``P``-labeled triangle hangs off the apex.

For tree configurations the result is contractible and satisfies every
hypothesis checked by :mod:`dualcx.certify`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .complex import DeltaComplex, simplicial_closure
from .curves import CurveConfig, Entry
from .loops import EdgeLoop, StrataLabeling

MUTATIONS = (
    "non-regular",
    "non-monotone",
    "non-collapsible",
    "two-islands",
    "split-point-fiber",
    "pair-graph-split",
)

# the certify check each mutation is built to break, and nothing else
MUTATION_CHECK = {
    "non-regular": "regularity",
    "non-monotone": "labeling-monotonicity",
    "non-collapsible": "collapsibility",
    "two-islands": "g-prime-connectivity",
    "split-point-fiber": "lift-connectivity",
    "pair-graph-split": "pair-graph-connectivity",
}


class NotApplicable(ValueError):
    pass


def make_rng(seed: int) -> random.Random:
    return random.Random(seed & (2**64 - 1))


# -- configurations ----------------------------------------------------------------


def random_tree_config(rng: random.Random, n_components: int, extra_points: int = 0) -> CurveConfig:
    """Each new component is glued to the rest through exactly one point."""
    comps = [f"C{i + 1}" for i in range(n_components)]
    points: dict[str, list[str]] = {}
    for k in range(1, n_components):
        if points and rng.random() < 0.35:
            name = rng.choice(sorted(points))
            points[name].append(comps[k])
        else:
            name = f"P{len(points) + 1}"
            points[name] = [rng.choice(comps[:k]), comps[k]]
    for _ in range(extra_points):
        points[f"P{len(points) + 1}"] = [rng.choice(comps)]
    return CurveConfig(comps, points)


def random_config(rng: random.Random, n_components: int, n_points: int, max_on: int = 3) -> CurveConfig:
    comps = [f"C{i + 1}" for i in range(n_components)]
    points = {}
    for j in range(n_points):
        k = rng.randint(1, min(max_on, n_components))
        points[f"P{j + 1}"] = rng.sample(comps, k)
    return CurveConfig(comps, points)


def connected_random_config(rng: random.Random, n_components: int, n_points: int) -> CurveConfig:
    while True:
        cfg = random_config(rng, n_components, n_points)
        from .curves import is_connected

        if is_connected(cfg):
            return cfg


# -- labeled complexes ---------------------------------------------------------------


@dataclass
class _Draft:
    """Cells keyed by sorted vertex tuples, with their labels."""

    labels: dict[tuple[int, ...], Entry] = field(default_factory=dict)
    n: int = 0

    def vertex(self, e: Entry) -> int:
        v = self.n
        self.n += 1
        self.labels[(v,)] = e
        return v

    def cell(self, verts, e: Entry) -> tuple[int, ...]:
        key = tuple(sorted(verts))
        self.labels[key] = e
        return key


@dataclass
class Instance:
    complex: DeltaComplex
    config: CurveConfig
    labeling: StrataLabeling
    arcs: dict[tuple[str, str], list[int]] = field(default_factory=dict)
    spare: dict[str, list[int]] = field(default_factory=dict)
    apex: dict[str, int] = field(default_factory=dict)
    tree_edges: dict[str, list[tuple[int, int]]] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)


def _finish(d: _Draft, cfg: CurveConfig) -> tuple[DeltaComplex, dict[int, Entry], dict[tuple[int, ...], int]]:
    g = simplicial_closure(d.labels)
    # simplicial_closure numbers vertices by sorted label, which is 0..n-1 here
    ids = {tuple(sorted(g.vertices(s))): s for s in g}
    labels = {ids[key]: e for key, e in d.labels.items()}
    return g, labels, ids


def _arc_tree(rng: random.Random, d: _Draft, comp: Entry, arcs: list[list[int]]) -> list[tuple[int, int]]:
    """Join the arcs of one component into a tree; returns its edges."""
    edges = []
    for arc in arcs:
        for a, b in zip(arc, arc[1:]):
            d.cell((a, b), comp)
            edges.append((a, b))
    for k in range(1, len(arcs)):
        x = rng.choice(arcs[rng.randrange(k)])
        y = rng.choice(arcs[k])
        hops = [x] + [d.vertex(comp) for _ in range(rng.randint(0, 2))] + [y]
        for a, b in zip(hops, hops[1:]):
            d.cell((a, b), comp)
            edges.append((a, b))
    return edges


def _cone_point(rng: random.Random, d: _Draft, pt: Entry, arcs: list[list[int]], flap: bool) -> int:
    w = d.vertex(pt)
    base_edges = [tuple(e) for arc in arcs for e in zip(arc, arc[1:])]
    for k in range(1, len(arcs)):
        x = rng.choice(arcs[rng.randrange(k)])
        y = rng.choice(arcs[k])
        d.cell((x, y), pt)
        base_edges.append((x, y))
    for arc in arcs:
        for x in arc:
            d.cell((x, w), pt)
    for x, y in base_edges:
        d.cell((x, y, w), pt)
    if flap:
        p1, p2 = d.vertex(pt), d.vertex(pt)
        for e in ((w, p1), (w, p2), (p1, p2)):
            d.cell(e, pt)
        d.cell((w, p1, p2), pt)
    return w


def build_instance(rng: random.Random, cfg: CurveConfig, arc_len: tuple[int, int] = (2, 3), flap_rate: float = 0.3) -> Instance:
    """Labeled complex over any configuration (contractible iff ``cfg`` is a tree)."""
    d = _Draft()
    arcs: dict[tuple[str, str], list[int]] = {}
    spare: dict[str, list[int]] = {}
    tree_edges = {}
    on_comp = {c: [p for p, on in cfg.points.items() if c in on] for c in cfg.components}
    for c in cfg.components:
        ce = Entry.component(c)
        pieces = []
        for p in on_comp[c] + [None]:
            arc = [d.vertex(ce) for _ in range(rng.randint(*arc_len))]
            pieces.append(arc)
            if p is None:
                spare[c] = arc
            else:
                arcs[(p, c)] = arc
        order = pieces[:]
        rng.shuffle(order)
        tree_edges[c] = _arc_tree(rng, d, ce, order)
    apex = {}
    for p, on in cfg.points.items():
        own = [arcs[(p, c)] for c in cfg.components if c in on]
        apex[p] = _cone_point(rng, d, Entry.point(p), own, rng.random() < flap_rate)
    g, labels, ids = _finish(d, cfg)
    vid = {key[0]: s for key, s in ids.items() if len(key) == 1}
    lab = StrataLabeling(g, cfg, labels)
    return Instance(
        g,
        cfg,
        lab,
        arcs={k: [vid[v] for v in a] for k, a in arcs.items()},
        spare={c: [vid[v] for v in a] for c, a in spare.items()},
        apex={p: vid[w] for p, w in apex.items()},
        tree_edges={c: [(vid[a], vid[b]) for a, b in es] for c, es in tree_edges.items()},
    )


def family_a(rng: random.Random, n_components: int | None = None, extra_points: int | None = None) -> Instance:
    ell = rng.randint(1, 4) if n_components is None else n_components
    extra = rng.randint(0, 2) if extra_points is None else extra_points
    cfg = random_tree_config(rng, ell, extra)
    inst = build_instance(rng, cfg)
    inst.meta = {"family": "a", "mutation": None}
    return inst


# -- mutations ---------------------------------------------------------------------------


def _edge_between(g: DeltaComplex, a: int, b: int) -> int:
    want = {a, b}
    for e in g.cofaces(a):
        if g.dim_of(e) == 1 and g.vertex_set(e) == want:
            return e
    raise KeyError((a, b))


def _rebuild_with(inst: Instance, cfg: CurveConfig, rng: random.Random, add) -> Instance:
    """Re-derive an instance from its vertex-tuple cells after ``add`` edits them."""
    g, lab = inst.complex, inst.labeling
    d = _Draft()
    d.n = len(g.of_dim(0))
    order = sorted(g.of_dim(0))
    pos = {v: k for k, v in enumerate(order)}
    for s in g:
        d.labels[tuple(sorted(pos[v] for v in g.vertices(s)))] = lab.f(s)
    add(d, pos)
    g2, labels, ids = _finish(d, cfg)
    vid = {key[0]: s for key, s in ids.items() if len(key) == 1}
    remap = {v: vid[pos[v]] for v in order}
    out = Instance(
        g2,
        cfg,
        StrataLabeling(g2, cfg, labels),
        arcs={k: [remap[v] for v in a] for k, a in inst.arcs.items()},
        spare={c: [remap[v] for v in a] for c, a in inst.spare.items()},
        apex={p: remap[w] for p, w in inst.apex.items()},
        tree_edges={c: [(remap[a], remap[b]) for a, b in es] for c, es in inst.tree_edges.items()},
        meta=dict(inst.meta),
    )
    return out


def _new_point_name(cfg: CurveConfig) -> str:
    k = len(cfg.points) + 1
    while f"P{k}" in cfg.points:
        k += 1
    return f"P{k}"


def _with_point(cfg: CurveConfig, name: str, on: list[str]) -> CurveConfig:
    pts = {p: sorted(o, key=cfg.index) for p, o in cfg.points.items()}
    pts[name] = on
    return CurveConfig(cfg.components, pts)


def mutate(rng: random.Random, inst: Instance, mutation: str) -> Instance:
    """Inject one hypothesis violation into a family-(a) instance."""
    g, cfg, lab = inst.complex, inst.config, inst.labeling
    labels = dict(lab.labels)
    if mutation == "non-regular":
        p = rng.choice(sorted(cfg.points))
        c = sorted(cfg.points[p], key=cfg.index)[0]
        arc = inst.arcs[(p, c)]
        e = _edge_between(g, arc[0], arc[1])
        v = g.faces(e)[1]
        loop_id = g.next_id()
        rows = [(loop_id, 1, [v, v]), (loop_id + 1, 2, [e, e, loop_id])]
        g2 = g.extended(rows)
        labels[loop_id] = labels[loop_id + 1] = Entry.point(p)
        out = Instance(g2, cfg, StrataLabeling(g2, cfg, labels), inst.arcs, inst.spare, inst.apex, inst.tree_edges)
    elif mutation == "non-monotone":
        F = rng.choice(g.of_dim(2))
        labels[F] = Entry.component(rng.choice(cfg.components))
        out = Instance(g, cfg, StrataLabeling(g, cfg, labels), inst.arcs, inst.spare, inst.apex, inst.tree_edges)
    elif mutation in ("non-collapsible", "split-point-fiber"):
        if len(cfg.components) < 2:
            raise NotApplicable(f"{mutation} needs at least two components")
        a, b = rng.sample(list(cfg.components), 2)
        z = _new_point_name(cfg)
        cfg2 = _with_point(cfg, z, [a, b])
        ze = Entry.point(z)
        used = [inst.spare[a]] if mutation == "split-point-fiber" else [inst.spare[a], inst.spare[b]]

        def add(d: _Draft, pos):
            _cone_point(rng, d, ze, [[pos[v] for v in arc] for arc in used], False)

        out = _rebuild_with(inst, cfg2, rng, add)
        out.arcs[(z, a)] = list(inst.spare[a])
        if mutation == "non-collapsible":
            out.arcs[(z, b)] = list(inst.spare[b])
    elif mutation == "two-islands":
        # a component carrying one point, so no other point fiber runs through it
        lonely = [(p, c) for c in cfg.components for p, on in cfg.points.items()
                  if c in on and sum(c in o for o in cfg.points.values()) == 1]
        if not lonely:
            raise NotApplicable("no component carries exactly one point")
        p, c = rng.choice(lonely)
        arc = inst.arcs[(p, c)]
        k = rng.randrange(len(arc) - 1)
        e = _edge_between(g, arc[k], arc[k + 1])
        labels[e] = Entry.point(p)
        out = Instance(g, cfg, StrataLabeling(g, cfg, labels), inst.arcs, inst.spare, inst.apex, inst.tree_edges)
    elif mutation == "pair-graph-split":
        c = rng.choice(cfg.components)
        A, S, B = _three_in_a_row(g, inst.tree_edges[c], rng)
        z = _new_point_name(cfg)
        cfg2 = _with_point(cfg, z, [c])
        ze = Entry.point(z)

        def add(d: _Draft, pos):
            d.cell((pos[A], pos[B]), ze)
            d.cell((pos[A], pos[S], pos[B]), ze)

        out = _rebuild_with(inst, cfg2, rng, add)
    else:
        raise ValueError(f"unknown mutation {mutation!r}")
    out.meta = {"family": "b", "mutation": mutation}
    return out


def _three_in_a_row(g: DeltaComplex, edges: list[tuple[int, int]], rng: random.Random) -> tuple[int, int, int]:
    nbrs: dict[int, list[int]] = {}
    for a, b in edges:
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    mids = sorted(v for v, ns in nbrs.items() if len(ns) >= 2)
    if not mids:
        raise NotApplicable("component tree has no path of length two")
    S = rng.choice(mids)
    A, B = rng.sample(sorted(nbrs[S]), 2)
    return A, S, B


def family_b(rng: random.Random, mutation: str, n_components: int | None = None) -> Instance:
    ell = n_components
    if ell is None:
        ell = rng.randint(2, 4) if mutation in ("non-collapsible", "split-point-fiber") else rng.randint(1, 4)
    if mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutation!r}")
    needs_point = mutation in ("non-regular", "non-monotone", "two-islands")
    while True:
        base = family_a(rng, ell, 1 if needs_point and ell == 1 else None)
        try:
            return mutate(rng, base, mutation)
        except NotApplicable:
            continue


# -- loops and random complexes --------------------------------------------------------


def random_loop(rng: random.Random, g: DeltaComplex, steps: int = 6) -> EdgeLoop:
    """A random walk closed up by walking back along a shortest path."""
    from .loops import _bfs

    verts = g.of_dim(0)
    v0 = rng.choice(verts)
    vs, es = [v0], []
    for _ in range(steps):
        cand = [e for e in sorted(g.cofaces(vs[-1])) if g.dim_of(e) == 1 and len(g.vertex_set(e)) == 2]
        if not cand:
            break
        e = rng.choice(cand)
        (w,) = g.vertex_set(e) - {vs[-1]}
        vs.append(w)
        es.append(e)
    back = _bfs(g, set(g), [vs[-1]], {v0})
    if back is not None:
        vs.extend(back.vertices[1:])
        es.extend(back.edges)
    return EdgeLoop(tuple(vs), tuple(es))


def triangle_loops(g: DeltaComplex) -> list[EdgeLoop]:
    """Every boundary loop of every 2-simplex, from each corner and both ways."""
    out = []
    for F in g.of_dim(2):
        verts = sorted(g.vertex_set(F))
        if len(verts) != 3:
            continue
        for k in range(3):
            for step in (1, -1):
                cyc = [verts[(k + step * j) % 3] for j in range(4)]
                edges = []
                for a, b in zip(cyc, cyc[1:]):
                    edges.append(next(e for e in g.faces(F) if g.vertex_set(e) == {a, b}))
                out.append(EdgeLoop(tuple(cyc), tuple(edges)))
    return out


def move_instance(rng: random.Random) -> tuple[Instance, EdgeLoop]:
    """A labeled complex (any connected configuration) plus a loop in it."""
    if rng.random() < 0.5:
        inst = family_a(rng)
    else:
        cfg = connected_random_config(rng, rng.randint(1, 3), rng.randint(1, 4))
        inst = build_instance(rng, cfg, flap_rate=0.5)
    g = inst.complex
    tri = triangle_loops(g)
    if tri and rng.random() < 0.4:
        loop = rng.choice(tri)
    else:
        loop = random_loop(rng, g, rng.randint(2, 8))
    return inst, loop


def random_complex(rng: random.Random, max_simplices: int = 40) -> DeltaComplex:
    """Random simplicial complex of dimension <= 3, sometimes with doubled edges."""
    while True:
        n = rng.randint(1, 7)
        top = [(v,) for v in range(n)]
        for _ in range(rng.randint(0, 8)):
            k = rng.randint(2, min(4, n)) if n >= 2 else 1
            top.append(tuple(rng.sample(range(n), k)))
        c = simplicial_closure(top)
        if len(c) <= max_simplices:
            break
    if rng.random() < 0.25 and c.of_dim(1) and len(c) < max_simplices:
        e = rng.choice(c.of_dim(1))
        c = c.extended([(c.next_id(), 1, list(c.faces(e)))])
    return c
