"""Dual complexes of stratified divisor data.

Vertices are the divisor components. A stratum supported on m components
becomes an (m-1)-simplex whose face opposite component j is the stratum on the
support minus j that contains it (the ``parents`` pointer for j).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from .complex import DeltaComplex


class StratificationError(ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems[:4]))


@dataclass(frozen=True)
class Stratum:
    id: str
    support: tuple[int, ...]
    parents: Mapping[int, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(sorted(set(self.support))))
        object.__setattr__(self, "parents", dict(self.parents))


@dataclass(frozen=True)
class StratificationData:
    components: tuple[str, ...]
    strata: tuple[Stratum, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "strata", tuple(self.strata))

    def to_dict(self) -> dict:
        return {
            "components": list(self.components),
            "strata": [
                {
                    "id": st.id,
                    "support": list(st.support),
                    "parents": {str(j): st.parents[j] for j in sorted(st.parents)},
                }
                for st in self.strata
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "StratificationData":
        if not isinstance(data, Mapping) or not isinstance(data.get("components"), list):
            raise StratificationError(['expected an object with a "components" list'])
        comps = data["components"]
        if not all(isinstance(c, str) for c in comps):
            raise StratificationError(["component names must be strings"])
        strata = []
        for k, entry in enumerate(data.get("strata", [])):
            try:
                sid = entry["id"]
                support = [int(j) for j in entry["support"]]
                parents = {int(j): p for j, p in entry.get("parents", {}).items()}
            except (KeyError, TypeError, ValueError, AttributeError) as exc:
                raise StratificationError([f"stratum entry {k} is malformed: {exc}"]) from exc
            if not isinstance(sid, str):
                raise StratificationError([f"stratum entry {k} id must be a string"])
            strata.append(Stratum(sid, tuple(support), parents))
        return cls(tuple(comps), tuple(strata))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "StratificationData":
        return cls.from_dict(json.loads(text))


def _supports(s: StratificationData) -> tuple[dict[str, tuple[int, ...]], list[Stratum], list[str]]:
    problems: list[str] = []
    n = len(s.components)
    if len(set(s.components)) != n:
        problems.append("component names are not unique")
    support = {name: (i,) for i, name in enumerate(s.components)}
    higher: list[Stratum] = []
    for st in s.strata:
        bad = [j for j in st.support if not 0 <= j < n]
        if not st.support or bad:
            problems.append(f"stratum {st.id}: support {list(st.support)} is not a nonempty set of component indices")
            continue
        if len(st.support) == 1:
            # restating a component is allowed, a second stratum on it is not
            if st.id != s.components[st.support[0]] or st.parents:
                problems.append(f"stratum {st.id}: a single-component stratum must be the component itself")
            continue
        if st.id in support:
            problems.append(f"stratum {st.id}: duplicate stratum id")
            continue
        support[st.id] = st.support
        higher.append(st)
    return support, higher, problems


def dual_ids(s: StratificationData) -> dict[str, int]:
    """Dense simplex ids: components first, then strata by support size."""
    _, higher, _ = _supports(s)
    ids = {name: i for i, name in enumerate(s.components)}
    order = sorted(range(len(higher)), key=lambda k: (len(higher[k].support), k))
    for k in order:
        ids[higher[k].id] = len(ids)
    return ids


def _build(s: StratificationData, strict: bool) -> tuple[DeltaComplex, dict[str, int]]:
    support, higher, problems = _supports(s)
    for st in higher:
        if set(st.parents) != set(st.support):
            problems.append(
                f"stratum {st.id}: parents must be given exactly for {list(st.support)}, got {sorted(st.parents)}"
            )
            continue
        for j in st.support:
            parent = st.parents[j]
            if parent not in support:
                problems.append(f"stratum {st.id}: dangling parent id {parent!r}")
            elif strict and support[parent] != tuple(x for x in st.support if x != j):
                problems.append(
                    f"stratum {st.id}: parent {parent!r} for {j} has support "
                    f"{list(support[parent])}, expected {[x for x in st.support if x != j]}"
                )
    if problems:
        raise StratificationError(problems)
    ids = dual_ids(s)
    rows = [(i, 0, []) for i in range(len(s.components))]
    for st in sorted(higher, key=lambda st: ids[st.id]):
        rows.append((ids[st.id], len(st.support) - 1, [ids[st.parents[j]] for j in st.support]))
    return DeltaComplex(rows), ids


def build_dual(s: StratificationData) -> tuple[DeltaComplex, dict[str, int]]:
    """Dual complex together with the stratum-id to simplex-id map."""
    c, ids = _build(s, strict=True)
    bad = [v for v in c.violations if v.structural]
    if bad:
        names = {v: k for k, v in ids.items()}
        raise StratificationError(
            [f"stratum {names[v.simplex]}: inconsistent containments ({v.detail})" for v in bad]
        )
    return c, ids


def build_dual_complex(s: StratificationData) -> DeltaComplex:
    return build_dual(s)[0]


def check_regularity(s: StratificationData) -> bool:
    """Whether every simplex of the dual complex has pairwise distinct vertices.

    Parent support mismatches are tolerated here so that malformed containment
    data can be probed; dangling ids still raise.
    """
    c, _ = _build(s, strict=False)
    for sid in c:
        try:
            verts = c.vertices(sid)
        except ValueError:
            return False
        if len(set(verts)) != len(verts):
            return False
    return True
