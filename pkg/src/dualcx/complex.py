"""Finite Delta-complexes with explicit, ordered face maps.

A simplex is a dense integer id carrying a dimension and the ordered list of
its faces; face ``i`` of a d-simplex is the (d-1)-simplex opposite its i-th
vertex. Vertex lists are never stored: they are derived from iterated faces,
so face consistency is the single source of truth.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence


class ComplexError(ValueError):
    pass


class ComplexFormatError(ComplexError):
    """Raised when serialized complex data does not follow the schema."""


class InvalidComplexError(ComplexError):
    def __init__(self, violations: Sequence["Violation"]):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:3])
        more = "" if len(self.violations) <= 3 else f" (+{len(self.violations) - 3} more)"
        super().__init__(f"invalid complex: {head}{more}")


class NotFaceClosedError(ComplexError):
    def __init__(self, missing: Sequence[tuple[int, int]]):
        self.missing = list(missing)
        super().__init__(
            "not closed under faces: "
            + ", ".join(f"face {f} of {s}" for s, f in self.missing[:5])
        )


#: violation kinds that make face maps unusable; regularity is reported separately
STRUCTURAL = frozenset(
    {"negative-dimension", "arity", "dangling-face", "face-dimension", "face-identity"}
)


@dataclass(frozen=True, order=True)
class Violation:
    simplex: int
    kind: str
    detail: str = ""

    @property
    def structural(self) -> bool:
        return self.kind in STRUCTURAL

    def __str__(self) -> str:
        return f"simplex {self.simplex}: {self.kind}" + (f" ({self.detail})" if self.detail else "")

    def to_dict(self) -> dict:
        return {"simplex": self.simplex, "kind": self.kind, "detail": self.detail}


def _check_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ComplexFormatError(f"{what} must be an integer, got {value!r}")
    return value


class DeltaComplex:
    """Immutable finite Delta-complex.

    Parameters
    ----------
    simplices
        Iterable of ``(id, dim, faces)`` triples. Nothing is validated here so
        that broken inputs can still be loaded and reported on; see
        :func:`validate`.
    """

    def __init__(self, simplices: Iterable[tuple[int, int, Sequence[int]]] = ()):
        table: dict[int, tuple[int, tuple[int, ...]]] = {}
        for sid, dim, faces in simplices:
            if sid in table:
                raise ComplexFormatError(f"duplicate simplex id {sid}")
            if sid < 0:
                raise ComplexFormatError(f"simplex id must be non-negative, got {sid}")
            table[sid] = (dim, tuple(faces))
        self._table = table

    # -- basic access ------------------------------------------------------

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(self._table)

    def __len__(self) -> int:
        return len(self._table)

    def __iter__(self) -> Iterator[int]:
        return iter(self._table)

    def __contains__(self, sid: object) -> bool:
        return sid in self._table

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DeltaComplex):
            return NotImplemented
        return self._table == other._table

    def __hash__(self) -> int:
        return hash(frozenset(self._table.items()))

    def __repr__(self) -> str:
        counts = self.f_vector()
        return f"DeltaComplex(f_vector={counts})"

    def dim_of(self, sid: int) -> int:
        return self._table[sid][0]

    def faces(self, sid: int) -> tuple[int, ...]:
        return self._table[sid][1]

    def items(self):
        return self._table.items()

    @cached_property
    def dimension(self) -> int:
        """Largest simplex dimension; -1 for the empty complex."""
        return max((d for d, _ in self._table.values()), default=-1)

    def of_dim(self, d: int) -> list[int]:
        return [s for s, (dim, _) in self._table.items() if dim == d]

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dimension + 1)
        for d, _ in self._table.values():
            if d >= 0:
                counts[d] += 1
        return tuple(counts)

    def next_id(self) -> int:
        return max(self._table, default=-1) + 1

    @cached_property
    def _cofaces(self) -> dict[int, tuple[int, ...]]:
        co: dict[int, list[int]] = {s: [] for s in self._table}
        for s, (_, faces) in self._table.items():
            for f in faces:
                if f in co:
                    co[f].append(s)
        return {s: tuple(v) for s, v in co.items()}

    def cofaces(self, sid: int) -> tuple[int, ...]:
        """Simplices listing ``sid`` as a face, once per occurrence."""
        return self._cofaces[sid]

    # -- derived vertices --------------------------------------------------

    @cached_property
    def _vertex_cache(self) -> dict[int, tuple[int, ...] | None]:
        cache: dict[int, tuple[int, ...] | None] = {}
        for s in sorted(self._table, key=lambda s: self._table[s][0]):
            cache[s] = self._derive(s, cache)
        return cache

    def _derive(self, s: int, cache) -> tuple[int, ...] | None:
        dim, faces = self._table[s]
        if dim == 0:
            return (s,) if not faces else None
        if dim < 0 or len(faces) != dim + 1:
            return None
        first, last = faces[0], faces[-1]
        if first not in self._table or last not in self._table:
            return None
        head = cache.get(last)
        tail = cache.get(first)
        if head is None or tail is None or len(head) != dim or len(tail) != dim:
            return None
        # face d drops the last vertex; face 0 keeps it
        return head + (tail[-1],)

    def vertices(self, sid: int) -> tuple[int, ...]:
        """Ordered vertices of ``sid``, derived from iterated faces."""
        verts = self._vertex_cache.get(sid)
        if verts is None:
            raise InvalidComplexError([Violation(sid, "arity", "vertices are not derivable")])
        return verts

    def vertex_set(self, sid: int) -> frozenset[int]:
        return frozenset(self.vertices(sid))

    # -- validation --------------------------------------------------------

    @cached_property
    def violations(self) -> tuple[Violation, ...]:
        return tuple(_violations(self))

    @property
    def is_valid(self) -> bool:
        return not self.violations

    @property
    def is_regular(self) -> bool:
        return not any(v.kind == "regularity" for v in self.violations)

    def require_structure(self) -> None:
        """Raise unless face maps are well formed (regularity not required)."""
        bad = [v for v in self.violations if v.structural]
        if bad:
            raise InvalidComplexError(bad)

    # -- editing (always returns new complexes) -----------------------------

    def without(self, removed: Iterable[int]) -> "DeltaComplex":
        gone = set(removed)
        return DeltaComplex((s, d, f) for s, (d, f) in self._table.items() if s not in gone)

    def restricted(self, keep: Iterable[int]) -> "DeltaComplex":
        kept = set(keep)
        return DeltaComplex((s, d, f) for s, (d, f) in self._table.items() if s in kept)

    def extended(self, simplices: Iterable[tuple[int, int, Sequence[int]]]) -> "DeltaComplex":
        return DeltaComplex([(s, d, f) for s, (d, f) in self._table.items()] + list(simplices))

    def closure(self, sids: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        stack = list(sids)
        while stack:
            s = stack.pop()
            if s in out:
                continue
            out.add(s)
            stack.extend(self.faces(s))
        return frozenset(out)

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "simplices": [
                {"id": s, "dim": d, "faces": list(f)} for s, (d, f) in self._table.items()
            ]
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "DeltaComplex":
        if not isinstance(data, Mapping) or not isinstance(data.get("simplices"), list):
            raise ComplexFormatError('expected an object with a "simplices" list')
        entries = []
        for k, entry in enumerate(data["simplices"]):
            if not isinstance(entry, Mapping) or {"id", "dim", "faces"} - set(entry):
                raise ComplexFormatError(f"simplex entry {k} needs id, dim and faces")
            sid = _check_int(entry["id"], f"simplex entry {k} id")
            dim = _check_int(entry["dim"], f"simplex {sid} dim")
            if not isinstance(entry["faces"], list):
                raise ComplexFormatError(f"simplex {sid} faces must be a list")
            faces = [_check_int(f, f"simplex {sid} face") for f in entry["faces"]]
            entries.append((sid, dim, faces))
        return cls(entries)

    def to_json(self) -> str:
        """One simplex per line; ``from_json(c.to_json()).to_json()`` is byte-identical."""
        rows = [json.dumps(e) for e in self.to_dict()["simplices"]]
        if not rows:
            return '{"simplices": []}\n'
        return '{"simplices": [\n  ' + ",\n  ".join(rows) + "\n]}\n"

    @classmethod
    def from_json(cls, text: str) -> "DeltaComplex":
        return cls.from_dict(json.loads(text))


def _violations(c: DeltaComplex) -> list[Violation]:
    out: list[Violation] = []
    shape_ok: set[int] = set()
    for s, (dim, faces) in c.items():
        if dim < 0:
            out.append(Violation(s, "negative-dimension", f"dim {dim}"))
            continue
        expected = 0 if dim == 0 else dim + 1
        if len(faces) != expected:
            out.append(Violation(s, "arity", f"{len(faces)} faces for a {dim}-simplex"))
            continue
        ok = True
        for f in faces:
            if f not in c:
                out.append(Violation(s, "dangling-face", f"unknown id {f}"))
                ok = False
            elif c.dim_of(f) != dim - 1:
                out.append(Violation(s, "face-dimension", f"face {f} has dim {c.dim_of(f)}"))
                ok = False
        if ok:
            shape_ok.add(s)
    for s in shape_ok:
        dim, faces = c._table[s]
        if dim < 2 or any(f not in shape_ok for f in faces):
            continue
        for j in range(dim + 1):
            for i in range(j):
                a = c.faces(faces[i])[j - 1]
                b = c.faces(faces[j])[i]
                if a != b:
                    out.append(
                        Violation(s, "face-identity", f"d{j - 1}(d{i}) = {a} but d{i}(d{j}) = {b}")
                    )
    if not any(v.structural for v in out):
        for s in c:
            verts = c.vertices(s)
            if len(set(verts)) != len(verts):
                out.append(Violation(s, "regularity", f"vertices {list(verts)}"))
    out.sort()
    return out


def validate(c: DeltaComplex) -> list[Violation]:
    """All violated invariants of ``c``; empty iff ``c`` is a regular Delta-complex."""
    return list(c.violations)


def is_simplicial(c: DeltaComplex) -> bool:
    """True iff every set of k+1 vertices carries at most one k-simplex.

    Non-regular complexes are never simplicial.
    """
    c.require_structure()
    if not c.is_regular:
        return False
    seen: set[frozenset[int]] = set()
    for s in c:
        key = c.vertex_set(s)
        if key in seen:
            return False
        seen.add(key)
    return True


def euler_characteristic(c: DeltaComplex) -> int:
    return sum((-1) ** d * n for d, n in enumerate(c.f_vector()))


class _UnionFind:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def groups(self) -> list[frozenset[int]]:
        out: dict[int, set[int]] = {}
        for x in self.parent:
            out.setdefault(self.find(x), set()).add(x)
        return sorted((frozenset(g) for g in out.values()), key=min)


def group_components(nodes: Iterable, edges: Iterable[tuple]) -> list[frozenset]:
    """Connected components of an arbitrary graph, ordered by smallest node."""
    nodes = list(nodes)
    index = {n: k for k, n in enumerate(nodes)}
    uf = _UnionFind(range(len(nodes)))
    for a, b in edges:
        uf.union(index[a], index[b])
    return [frozenset(nodes[k] for k in g) for g in uf.groups()]


def connected_components(c: DeltaComplex, members: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Components under the symmetric closure of the face relation.

    With ``members`` given, only those simplices and the face relations among
    them are used.
    """
    keep = set(c) if members is None else set(members)
    uf = _UnionFind(keep)
    for s in keep:
        for f in c.faces(s):
            if f in keep:
                uf.union(s, f)
    return uf.groups()


@dataclass(frozen=True, eq=False)
class Subcomplex:
    """A face-closed set of simplices of ``parent``."""

    parent: DeltaComplex
    members: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        foreign = [s for s in self.members if s not in self.parent]
        if foreign:
            raise ComplexError(f"ids {sorted(foreign)[:5]} are not simplices of the parent")
        missing = sorted(
            (s, f) for s in self.members for f in self.parent.faces(s) if f not in self.members
        )
        if missing:
            raise NotFaceClosedError(missing)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subcomplex):
            return NotImplemented
        return self.members == other.members and (
            self.parent is other.parent or self.parent == other.parent
        )

    def __hash__(self) -> int:
        return hash(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, sid: object) -> bool:
        return sid in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    @property
    def dimension(self) -> int:
        return max((self.parent.dim_of(s) for s in self.members), default=-1)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(s for s in self.members if self.parent.dim_of(s) == 0)

    def as_complex(self) -> DeltaComplex:
        return self.parent.restricted(self.members)

    def is_connected(self) -> bool:
        return len(connected_components(self.parent, self.members)) == 1


def _same_parent(g: DeltaComplex, gp: Subcomplex) -> None:
    if gp.parent is not g and gp.parent != g:
        raise ComplexError("subcomplex belongs to a different complex")


def star(g: DeltaComplex, gp: Subcomplex) -> frozenset[int]:
    """Simplices of ``g`` whose closure meets some member of ``gp``.

    Two closed cells meet exactly when they share a vertex, so this is the set
    of simplices with a vertex in ``gp``.
    """
    _same_parent(g, gp)
    g.require_structure()
    hub = gp.vertices
    return frozenset(s for s in g if not g.vertex_set(s).isdisjoint(hub))


# -- small builders used across the package and its tests ------------------


def simplicial_closure(top: Iterable[Sequence[int]]) -> DeltaComplex:
    """Delta-complex of the simplicial complex generated by vertex tuples.

    Vertex labels are sorted inside each simplex; ids are assigned densely by
    dimension, then lexicographically.
    """
    cells: set[tuple[int, ...]] = set()
    for simplex in top:
        verts = tuple(sorted(set(simplex)))
        n = len(verts)
        for mask in range(1, 1 << n):
            cells.add(tuple(v for k, v in enumerate(verts) if mask >> k & 1))
    ordered = sorted(cells, key=lambda t: (len(t), t))
    ids = {t: k for k, t in enumerate(ordered)}
    rows = []
    for t in ordered:
        faces = [] if len(t) == 1 else [ids[t[:i] + t[i + 1:]] for i in range(len(t))]
        rows.append((ids[t], len(t) - 1, faces))
    return DeltaComplex(rows)


def vertex_tuple_ids(c: DeltaComplex) -> dict[tuple[int, ...], int]:
    """Map from sorted vertex tuples to ids (meaningful for simplicial complexes)."""
    return {tuple(sorted(c.vertices(s))): s for s in c}
