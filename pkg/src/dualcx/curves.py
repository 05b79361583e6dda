"""Curve configurations, the tree test and the cycle-sequence calculus.

A configuration is a set of named irreducible components plus marked points,
each point lying on one or more components. Cycle sequences are cyclic words
over components and points; the rewriting rules are

* (a) drop ``a_i`` when ``a_i == a_{i+1}``;
* (b) drop ``a_i, a_{i+1}`` when ``a_i == a_{i+2}``;

with indices read cyclically. Reductions use a canonical strategy ((a) to
fixpoint before each (b), and each (b) at the largest applicable index) and run
in the compiled kernels when available.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

from . import kernels

COMPONENT = "component"
POINT = "point"


class ConfigError(ValueError):
    pass


class DisconnectedConfigError(ConfigError):
    pass


@dataclass(frozen=True, order=True)
class Entry:
    kind: str
    name: str

    def __post_init__(self):
        if self.kind not in (COMPONENT, POINT):
            raise ConfigError(f"entry kind must be {COMPONENT!r} or {POINT!r}, got {self.kind!r}")

    @classmethod
    def component(cls, name: str) -> "Entry":
        return cls(COMPONENT, name)

    @classmethod
    def point(cls, name: str) -> "Entry":
        return cls(POINT, name)

    @property
    def dim(self) -> int:
        return 1 if self.kind == COMPONENT else 0

    @property
    def is_point(self) -> bool:
        return self.kind == POINT

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"{'C' if self.kind == COMPONENT else 'P'}:{self.name}"

    def to_dict(self) -> dict:
        return {"kind": self.kind, "name": self.name}

    @classmethod
    def from_dict(cls, data: Mapping) -> "Entry":
        try:
            return cls(data["kind"], data["name"])
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"entry needs kind and name: {data!r}") from exc


class CurveConfig:
    """Components and marked points with their incidence."""

    def __init__(self, components: Iterable[str], points: Mapping[str, Iterable[str]] | Iterable = ()):
        self.components = tuple(components)
        if isinstance(points, Mapping):
            items = list(points.items())
        else:
            items = list(points)
        self.points: dict[str, frozenset[str]] = {}
        self._problems: list[str] = []
        for name, on in items:
            if name in self.points:
                self._problems.append(f"duplicate point name {name!r}")
            self.points[name] = frozenset(on)
        self._index = {c: i for i, c in enumerate(self.components)}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CurveConfig):
            return NotImplemented
        return self.components == other.components and self.points == other.points

    def __hash__(self) -> int:
        return hash((self.components, frozenset(self.points.items())))

    def __repr__(self) -> str:
        pts = ", ".join(f"{p}:{'/'.join(sorted(on))}" for p, on in self.points.items())
        return f"CurveConfig([{', '.join(self.components)}], {{{pts}}})"

    def validate(self) -> list[str]:
        problems = list(self._problems)
        if len(set(self.components)) != len(self.components):
            problems.append("component names are not unique")
        for p, on in self.points.items():
            if not on:
                problems.append(f"point {p!r} lies on no component")
            for c in sorted(on - set(self.components)):
                problems.append(f"point {p!r} lies on unknown component {c!r}")
        return problems

    # -- entries ------------------------------------------------------------

    def entries(self) -> list[Entry]:
        return [Entry.component(c) for c in self.components] + [Entry.point(p) for p in self.points]

    def resolves(self, e: Entry) -> bool:
        return e.name in self._index if e.kind == COMPONENT else e.name in self.points

    def on(self, point: str) -> frozenset[str]:
        return self.points[point]

    def contains(self, big: Entry, small: Entry) -> bool:
        """Inclusion of closed subsets: equal, or a point lying on a component."""
        if big == small:
            return True
        return big.kind == COMPONENT and small.kind == POINT and big.name in self.points.get(small.name, ())

    def index(self, component: str) -> int:
        return self._index[component]

    def point_masks(self) -> list[int]:
        return [sum(1 << self._index[c] for c in on if c in self._index) for on in self.points.values()]

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "components": list(self.components),
            "points": [
                {"name": p, "on": sorted(on, key=lambda c: self._index.get(c, len(self._index)))}
                for p, on in self.points.items()
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CurveConfig":
        if not isinstance(data, Mapping) or not isinstance(data.get("components"), list):
            raise ConfigError('expected an object with a "components" list')
        pts = []
        for k, p in enumerate(data.get("points", [])):
            if not isinstance(p, Mapping) or "name" not in p or not isinstance(p.get("on"), list):
                raise ConfigError(f"point entry {k} needs name and on")
            pts.append((p["name"], p["on"]))
        return cls(data["components"], pts)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "CurveConfig":
        return cls.from_dict(json.loads(text))


class CycleSequence(tuple):
    """A cyclic word; equality is position-exact, see :meth:`same_cycle`."""

    def __new__(cls, entries: Iterable = ()):
        return super().__new__(cls, entries)

    def __repr__(self) -> str:
        return "(" + ", ".join(str(e) for e in self) + ")"

    def rotate(self, k: int) -> "CycleSequence":
        if not self:
            return self
        k %= len(self)
        return CycleSequence(self[k:] + self[:k])

    def rotations(self) -> list["CycleSequence"]:
        return [self.rotate(k) for k in range(max(len(self), 1))]

    def same_cycle(self, other: Sequence) -> bool:
        """Equality up to cyclic rotation (loop basepoints are arbitrary)."""
        other = tuple(other)
        if len(other) != len(self):
            return False
        return not self or any(tuple(r) == other for r in self.rotations())

    def to_list(self) -> list[dict]:
        return [e.to_dict() for e in self]

    @classmethod
    def from_list(cls, data: Iterable[Mapping]) -> "CycleSequence":
        return cls(Entry.from_dict(d) for d in data)


def _encode(seq: Sequence[Hashable]) -> tuple[list[int], list[Hashable]]:
    table: dict[Hashable, int] = {}
    codes = [table.setdefault(x, len(table)) for x in seq]
    return codes, list(table)


def reduce_a(seq: Sequence[Hashable]) -> CycleSequence:
    """Canonical (a)-reduction; a length-1 word reduces to the empty word."""
    codes, back = _encode(seq)
    return CycleSequence(back[k] for k in kernels.reduce_a(codes))


def reduce_ab(seq: Sequence[Hashable]) -> CycleSequence:
    """Canonical (a,b)-reduction."""
    codes, back = _encode(seq)
    return CycleSequence(back[k] for k in kernels.reduce_ab(codes))


def is_trivial(seq: Sequence[Hashable]) -> bool:
    return not kernels.reduce_ab(_encode(seq)[0])


def is_cycle_sequence(seq: Sequence[Entry], cfg: CurveConfig) -> bool:
    """Entries resolve, and the (a)-reduction alternates dimensions with every
    point lying on both cyclic neighbours."""
    if not all(isinstance(e, Entry) and cfg.resolves(e) for e in seq):
        return False
    b = reduce_a(seq)
    m = len(b)
    for i, e in enumerate(b):
        nxt, prv = b[(i + 1) % m], b[i - 1]
        if e.dim == nxt.dim:
            return False
        if e.is_point and not (cfg.contains(prv, e) and cfg.contains(nxt, e)):
            return False
    return True


# -- connectivity and trees ---------------------------------------------------


def is_connected(cfg: CurveConfig) -> bool:
    """Connectivity of the graph on components joined by shared points."""
    n = len(cfg.components)
    if n == 0:
        return False
    masks = cfg.point_masks()
    reached = 1
    grew = True
    while grew:
        grew = False
        for m in masks:
            if m & reached and m & ~reached:
                reached |= m
                grew = True
    return reached == (1 << n) - 1


@dataclass(frozen=True)
class TreeCheck:
    is_tree: bool
    peel_order: tuple[str, ...] | None = None

    def __bool__(self) -> bool:
        return self.is_tree


def forms_tree(cfg: CurveConfig, method: str = "greedy") -> TreeCheck:
    """Recursive peel test.

    A component may be peeled when exactly one marked point lies on it and on
    some other remaining component. ``method="greedy"`` always peels the first
    peelable component; ``"exhaustive"`` backtracks over every choice. The
    witness lists components in removal order, ending with the last one.
    """
    n = len(cfg.components)
    masks = cfg.point_masks()
    if method == "greedy":
        order = kernels.peel_greedy(n, masks)
    elif method == "exhaustive":
        from .oracles import peel_exhaustive

        order = peel_exhaustive(n, masks)
    else:
        raise ValueError(f"unknown method {method!r}")
    if order is None:
        return TreeCheck(False)
    return TreeCheck(True, tuple(cfg.components[i] for i in order))


def tree_core(cfg: CurveConfig) -> list[int]:
    """Component indices left after repeatedly deleting components that meet
    the remaining ones in at most one marked point."""
    masks = cfg.point_masks()
    core = set(range(len(cfg.components)))
    changed = True
    while changed:
        changed = False
        for i in sorted(core):
            rest = sum(1 << j for j in core if j != i)
            if sum(1 for m in masks if m >> i & 1 and m & rest) <= 1:
                core.discard(i)
                changed = True
                break
    return sorted(core)


def find_nontrivial_cycle_sequence(cfg: CurveConfig) -> CycleSequence | None:
    """A non-trivial cycle sequence with distinct entries, or None for trees.

    Walks component, point, component, ... inside the core (components meeting
    the rest of the core in at least two points), always taking the first
    admissible choice, and cuts out the loop closed by the first repeat.
    """
    if cfg.validate():
        raise ConfigError("; ".join(cfg.validate()))
    if not is_connected(cfg):
        raise DisconnectedConfigError("configuration is not connected")
    core = tree_core(cfg)
    if not core:
        return None
    core_mask = sum(1 << i for i in core)
    names = list(cfg.points)
    masks = cfg.point_masks()

    def points_on(i: int, skip: int | None) -> int:
        rest = core_mask & ~(1 << i)
        for k, m in enumerate(masks):
            if k != skip and m >> i & 1 and m & rest:
                return k
        raise AssertionError("core component with fewer than two core points")

    walk: list[tuple[str, int]] = [(COMPONENT, core[0])]
    seen = {walk[0]: 0}
    while True:
        kind, idx = walk[-1]
        if kind == COMPONENT:
            skip = walk[-2][1] if len(walk) > 1 else None
            step = (POINT, points_on(idx, skip))
        else:
            prev = walk[-2][1]
            step = (COMPONENT, next(j for j in core if j != prev and masks[idx] >> j & 1))
        if step in seen:
            loop = walk[seen[step]:]
            return CycleSequence(
                Entry.component(cfg.components[i]) if k == COMPONENT else Entry.point(names[i])
                for k, i in loop
            )
        seen[step] = len(walk)
        walk.append(step)
