"""Elementary collapses, collapsibility search, cones and rational homology."""

from __future__ import annotations

import heapq
import math
from typing import Iterable, Mapping, NamedTuple

from .complex import ComplexError, DeltaComplex, connected_components

DEFAULT_BUDGET = 10**6


class CollapseError(ComplexError):
    pass


class NotFreeFaceError(CollapseError):
    pass


class IdentifiedFaceError(CollapseError):
    """The face occurs twice in its only coface, which blocks the collapse."""


class BudgetExhausted(RuntimeError):
    def __init__(self, visited: int):
        self.visited = visited
        super().__init__(f"search budget exhausted after {visited} states")


class CollapseStep(NamedTuple):
    free_face: int
    coface: int

    def to_list(self) -> list[int]:
        return [self.free_face, self.coface]


def _check_step(c: DeltaComplex, step: CollapseStep) -> None:
    sigma, tau = step
    if sigma not in c or tau not in c:
        raise NotFreeFaceError(f"{step} refers to simplices outside the complex")
    co = c.cofaces(sigma)
    if len(co) == 2 and co[0] == co[1] == tau:
        raise IdentifiedFaceError(f"{sigma} appears twice in {tau}")
    if co != (tau,):
        raise NotFreeFaceError(f"{sigma} has cofaces {list(co)}, not exactly {tau}")
    if c.cofaces(tau):
        raise NotFreeFaceError(f"{tau} is not maximal")


def elementary_collapse(c: DeltaComplex, step: CollapseStep) -> DeltaComplex:
    """Remove a free face together with its unique coface."""
    c.require_structure()
    step = CollapseStep(*step)
    _check_step(c, step)
    return c.without(step)


def free_pairs(c: DeltaComplex) -> list[CollapseStep]:
    """Every legal collapse step of ``c``, in canonical order."""
    out = []
    for s in c:
        co = c.cofaces(s)
        if len(co) == 1 and not c.cofaces(co[0]):
            out.append(CollapseStep(s, co[0]))
    out.sort(key=lambda st: (-c.dim_of(st.coface), st.free_face, st.coface))
    return out


def collapse_sequence(c: DeltaComplex, steps: Iterable[CollapseStep]) -> DeltaComplex:
    for step in steps:
        c = elementary_collapse(c, step)
    return c


class _Search:
    def __init__(self, c: DeltaComplex, budget: int):
        self.c = c
        self.budget = budget
        self.visited = 0
        self.ids = sorted(c)
        self.bit = {s: 1 << k for k, s in enumerate(self.ids)}
        self.alive = set(c)
        self.mask = sum(self.bit.values())
        self.count = {s: len(c.cofaces(s)) for s in c}
        self.high = sum(1 for s in c if c.dim_of(s) >= 2)
        self.dead: set[int] = set()
        self.path: list[CollapseStep] = []

    def _apply(self, step: CollapseStep) -> None:
        c = self.c
        for s in step:
            self.alive.discard(s)
            self.mask ^= self.bit[s]
            if c.dim_of(s) >= 2:
                self.high -= 1
        for s in step:
            for f in c.faces(s):
                self.count[f] -= 1
        self.path.append(step)

    def _undo(self) -> None:
        step = self.path.pop()
        c = self.c
        for s in step:
            for f in c.faces(s):
                self.count[f] += 1
        for s in step:
            self.alive.add(s)
            self.mask ^= self.bit[s]
            if c.dim_of(s) >= 2:
                self.high += 1

    def _candidates(self) -> list[CollapseStep]:
        c = self.c
        out = []
        for s in self.alive:
            if self.count[s] != 1:
                continue
            tau = next(t for t in c.cofaces(s) if t in self.alive)
            if self.count[tau] == 0:
                out.append(CollapseStep(s, tau))
        out.sort(key=lambda st: (-c.dim_of(st.coface), st.free_face, st.coface))
        return out

    def _finish_tree(self) -> None:
        # a connected acyclic graph; peel leaves in id order
        c = self.c
        leaves = [s for s in self.alive if c.dim_of(s) == 0 and self.count[s] == 1]
        heapq.heapify(leaves)
        while len(self.alive) > 1:
            v = heapq.heappop(leaves)
            if v not in self.alive or self.count[v] != 1:
                continue
            e = next(t for t in c.cofaces(v) if t in self.alive)
            self._apply(CollapseStep(v, e))
            for w in c.faces(e):
                if w != v and self.count[w] == 1:
                    heapq.heappush(leaves, w)

    def run(self) -> bool:
        if len(self.alive) == 1:
            return True
        if self.mask in self.dead:
            return False
        self.visited += 1
        if self.visited > self.budget:
            raise BudgetExhausted(self.visited)
        if self.high == 0:
            self._finish_tree()
            return True
        for step in self._candidates():
            self._apply(step)
            if self.run():
                return True
            self._undo()
        self.dead.add(self.mask)
        return False


def is_collapsible(c: DeltaComplex, budget: int = DEFAULT_BUDGET) -> list[CollapseStep] | None:
    """Search for a collapse sequence down to a single vertex.

    Returns the steps when found and None when the complex provably does not
    collapse to a point (disconnected, non-trivial rational homology, or the
    backtracking search space is exhausted). Raises :class:`BudgetExhausted`
    when more than ``budget`` search states were visited; that outcome says
    nothing about collapsibility.
    """
    c.require_structure()
    if len(c) == 0 or len(connected_components(c)) != 1:
        return None
    if betti(c) != trivial_betti(c.dimension):
        return None
    search = _Search(c, budget)
    if search.run():
        return list(search.path)
    return None


# -- cones --------------------------------------------------------------------


def cone_map(base: DeltaComplex, apex: int | None = None) -> tuple[DeltaComplex, int, dict[int, int]]:
    """Cone with the apex placed last in every joined simplex.

    Returns the cone, the apex id and the map from base simplices to their
    joins with the apex.
    """
    base.require_structure()
    apex = base.next_id() if apex is None else apex
    if apex in base:
        raise ComplexError(f"apex id {apex} is already used")
    nxt = max(base.next_id(), apex + 1)
    join: dict[int, int] = {}
    rows = [(apex, 0, [])]
    for s in sorted(base, key=lambda s: (base.dim_of(s), s)):
        join[s] = nxt
        nxt += 1
        if base.dim_of(s) == 0:
            faces = [apex, s]
        else:
            faces = [join[f] for f in base.faces(s)] + [s]
        rows.append((join[s], base.dim_of(s) + 1, faces))
    return base.extended(rows), apex, join


def cone_over(base: DeltaComplex, apex: int | None = None) -> DeltaComplex:
    return cone_map(base, apex)[0]


def is_cone_with_apex(c: DeltaComplex, v: int) -> bool:
    """Whether joining with ``v`` bijects simplices avoiding ``v`` onto those strictly containing it."""
    c.require_structure()
    if v not in c or c.dim_of(v) != 0:
        raise ComplexError(f"{v} is not a vertex")
    avoiding = set()
    bases: dict[int, int] = {}
    for s in c:
        verts = c.vertices(s)
        if v not in verts:
            avoiding.add(s)
            continue
        if s == v:
            continue
        if verts.count(v) != 1:
            return False
        b = c.faces(s)[verts.index(v)]
        if b in bases or v in c.vertex_set(b):
            return False
        bases[b] = s
    return set(bases) == avoiding


# -- rational homology --------------------------------------------------------


def boundary_columns(c: DeltaComplex, d: int) -> list[dict[int, int]]:
    """Columns of the d-th boundary map; face i carries sign (-1)**i."""
    cols = []
    for s in c.of_dim(d):
        col: dict[int, int] = {}
        for i, f in enumerate(c.faces(s)):
            col[f] = col.get(f, 0) + (-1) ** i
        cols.append({k: x for k, x in col.items() if x})
    return cols


class _RowEchelon:
    """Incremental exact rank over Q with integer arithmetic."""

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    def reduce(self, vec: Mapping[int, int]) -> dict[int, int]:
        v = {k: x for k, x in vec.items() if x}
        while v:
            p = min(v)
            w = self.pivots.get(p)
            if w is None:
                return v
            a, b = w[p], v[p]
            out = {k: a * x for k, x in v.items()}
            for k, y in w.items():
                out[k] = out.get(k, 0) - b * y
            v = {k: x for k, x in out.items() if x}
            if v:
                g = math.gcd(*v.values())
                if g > 1:
                    v = {k: x // g for k, x in v.items()}
        return v

    def add(self, vec: Mapping[int, int]) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        self.pivots[min(v)] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank_q(columns: Iterable[Mapping[int, int]]) -> int:
    ech = _RowEchelon()
    for col in columns:
        ech.add(col)
    return ech.rank


def trivial_betti(dimension: int) -> tuple[int, ...]:
    return (1,) + (0,) * max(dimension, 0) if dimension >= 0 else ()


def betti(c: DeltaComplex) -> tuple[int, ...]:
    """Rational Betti numbers b_0, ..., b_dim."""
    c.require_structure()
    top = c.dimension
    ranks = [0] + [rank_q(boundary_columns(c, d)) for d in range(1, top + 1)] + [0]
    counts = c.f_vector()
    return tuple(counts[d] - ranks[d] - ranks[d + 1] for d in range(top + 1))


def is_boundary(c: DeltaComplex, chain: Mapping[int, int], d: int) -> bool:
    """Whether a d-chain lies in the image of the (d+1)-th boundary map."""
    ech = _RowEchelon()
    for col in boundary_columns(c, d + 1):
        ech.add(col)
    return not ech.reduce(chain)
