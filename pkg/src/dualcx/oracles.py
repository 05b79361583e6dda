"""Brute-force oracles, written independently of the fast paths they check.

None of these use the reduction kernels: rewriting is applied literally, one
rule instance at a time, over every possible order.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Hashable, Iterator, Sequence

from .curves import COMPONENT, CurveConfig, Entry, is_cycle_sequence, is_trivial


def _successors(word: tuple) -> Iterator[tuple]:
    n = len(word)
    for i in range(n):
        # rule (a): a_i == a_{i+1}, cyclically
        if word[i] == word[(i + 1) % n]:
            yield word[:i] + word[i + 1:]
    if n >= 2:
        for i in range(n):
            # rule (b): a_i == a_{i+2}; drop a_i and a_{i+1}
            if word[i] == word[(i + 2) % n]:
                j = (i + 1) % n
                yield tuple(x for k, x in enumerate(word) if k != i and k != j)


def _canonical_codes(word: Sequence[Hashable]) -> tuple[int, ...]:
    table: dict[Hashable, int] = {}
    return tuple(table.setdefault(x, len(table)) for x in word)


@lru_cache(maxsize=200_000)
def _terminals(word: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    out: set[tuple[int, ...]] = set()
    stack = [word]
    seen = {word}
    while stack:
        w = stack.pop()
        succ = list(_successors(w))
        if not succ:
            out.add(w)
        for s in succ:
            if s not in seen:
                seen.add(s)
                stack.append(s)
    return frozenset(out)


def terminal_reductions(word: Sequence[Hashable]) -> set[tuple]:
    """Every irreducible word reachable by some order of (a)/(b) applications."""
    codes = _canonical_codes(word)
    back = {}
    for c, x in zip(codes, word):
        back[c] = x
    return {tuple(back[c] for c in t) for t in _terminals(codes)}


def triviality_outcomes(word: Sequence[Hashable]) -> set[bool]:
    """Set of ``reduction is empty`` values over all reduction orders."""
    return {len(t) == 0 for t in _terminals(_canonical_codes(word))}


def confluent_up_to_rotation(word: Sequence[Hashable]) -> bool:
    terms = list(_terminals(_canonical_codes(word)))
    first = terms[0]
    rots = {first[k:] + first[:k] for k in range(max(len(first), 1))}
    return all(t in rots for t in terms)


def peel_exhaustive(n: int, masks: Sequence[int]) -> list[int] | None:
    """Backtracking peel over every removal choice (memoized on the remaining set)."""
    if n <= 0:
        return None
    failed: set[int] = set()

    def peelable(remaining: int, i: int) -> bool:
        rest = remaining & ~(1 << i)
        return sum(1 for m in masks if (m >> i) & 1 and m & rest) == 1

    def go(remaining: int) -> list[int] | None:
        if remaining & (remaining - 1) == 0:
            return [remaining.bit_length() - 1]
        if remaining in failed:
            return None
        for i in range(n):
            if (remaining >> i) & 1 and peelable(remaining, i):
                tail = go(remaining & ~(1 << i))
                if tail is not None:
                    return [i] + tail
        failed.add(remaining)
        return None

    return go((1 << n) - 1)


def distinct_cycle_sequences(cfg: CurveConfig, max_len: int | None = None) -> Iterator[tuple[Entry, ...]]:
    """All non-trivial cycle sequences with pairwise distinct entries.

    Candidates are enumerated by depth-first search over sequences that start
    at a component (rotation is harmless for distinct entries) and in which
    consecutive entries are incident; each candidate is then judged by the
    library's own cycle-sequence and triviality predicates.
    """
    entries = cfg.entries()
    limit = len(entries) if max_len is None else max_len

    def adjacent(x: Entry, y: Entry) -> bool:
        return cfg.contains(x, y) or cfg.contains(y, x)

    path: list[Entry] = []

    def extend() -> Iterator[tuple[Entry, ...]]:
        if len(path) >= 2:
            cand = tuple(path)
            if is_cycle_sequence(cand, cfg) and not is_trivial(cand):
                yield cand
        if len(path) == limit:
            return
        for e in entries:
            if e in path or not adjacent(path[-1], e) or e == path[-1]:
                continue
            path.append(e)
            yield from extend()
            path.pop()

    for start in entries:
        if start.kind != COMPONENT:
            continue
        path.append(start)
        yield from extend()
        path.pop()


def has_distinct_nontrivial_cycle(cfg: CurveConfig, max_len: int | None = None) -> bool:
    return next(distinct_cycle_sequences(cfg, max_len), None) is not None
