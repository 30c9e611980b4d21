"""Exact minimum cover of a facet set by feasible subsets.

The feasibility oracle must be downward closed: every nonempty subset of a
feasible set is feasible.  Covers can then be taken from the maximal
feasible sets, which are enumerated level by level (a set is only tested
once all its one-smaller subsets are known feasible) and fed to a
branch-and-bound set cover.

Oracle answers are ``"yes"``, ``"no"`` or ``"unknown"``.  Unknown counts as
infeasible for the upper bound and as feasible for the lower bound.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

from .complex import bits

Oracle = Callable[[int], str]


@dataclass
class CoverSearch:
    """Outcome of ``min_cover``: bounds on the number of cover elements."""

    lower: float
    upper: float
    cover: list[int] | None
    refutation: dict
    oracle_calls: int = 0
    unknown_calls: int = 0
    complete: bool = False
    millis: float = 0.0

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


class _Deadline(Exception):
    pass


@dataclass
class _Cached:
    oracle: Oracle
    deadline: float
    answers: dict[int, str] = field(default_factory=dict)
    calls: int = 0
    unknown: int = 0

    def __call__(self, s: int) -> str:
        hit = self.answers.get(s)
        if hit is not None:
            return hit
        if time.monotonic() > self.deadline:
            raise _Deadline
        self.calls += 1
        ans = self.oracle(s)
        if ans == "unknown":
            self.unknown += 1
        self.answers[s] = ans
        return ans


def _grow(feasible: _Cached, seed: int, n: int, prefer: int) -> int:
    """Extend ``seed`` to a maximal yes-set, trying ``prefer`` items first."""
    s = seed
    order = list(bits(prefer & ~s)) + [j for j in range(n) if not (prefer | s) >> j & 1]
    for j in order:
        if feasible(s | 1 << j) == "yes":
            s |= 1 << j
    return s


def greedy_cover(feasible: _Cached, n: int) -> list[int] | None:
    full = (1 << n) - 1
    uncovered = full
    cover = []
    while uncovered:
        j = (uncovered & -uncovered).bit_length() - 1
        if feasible(1 << j) != "yes":
            return None
        s = _grow(feasible, 1 << j, n, uncovered)
        cover.append(s)
        uncovered &= ~s
    return cover


def exact_set_cover(universe: int, sets: list[int], limit: float = math.inf,
                    node_budget: int = 5_000_000) -> list[int] | None:
    """Smallest sub-list of ``sets`` covering ``universe`` with fewer than ``limit`` sets.

    Branches on the uncovered element with the fewest candidate sets.
    Returns None if no cover smaller than ``limit`` exists.
    Raises ``_Deadline`` past ``node_budget`` nodes.
    """
    containing: dict[int, list[int]] = {}
    for e in bits(universe):
        containing[e] = sorted((s for s in sets if s >> e & 1), key=lambda s: -s.bit_count())
    biggest = max((s.bit_count() for s in sets), default=0)
    best: list[int] | None = None
    best_len = limit
    nodes = 0

    def search(uncovered: int, chosen: list[int]) -> None:
        nonlocal best, best_len, nodes
        nodes += 1
        if nodes > node_budget:
            raise _Deadline
        if not uncovered:
            if len(chosen) < best_len:
                best, best_len = list(chosen), len(chosen)
            return
        if biggest == 0:
            return
        need = -(-uncovered.bit_count() // biggest)
        if len(chosen) + need >= best_len:
            return
        e = min(bits(uncovered), key=lambda x: len(containing[x]))
        for s in containing[e]:
            chosen.append(s)
            search(uncovered & ~s, chosen)
            chosen.pop()

    search(universe, [])
    return best


def _max_clique(adj: list[int], limit: int = 200_000) -> int:
    """Size of a maximum clique (exact unless the node limit is hit; then a valid lower bound)."""
    best = 0
    nodes = 0

    def expand(clique_size: int, cand: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > limit:
            return
        if not cand:
            best = max(best, clique_size)
            return
        if clique_size + cand.bit_count() <= best:
            return
        while cand:
            if clique_size + cand.bit_count() <= best or nodes > limit:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= ~(1 << v)
            expand(clique_size + 1, cand & adj[v])

    expand(0, (1 << len(adj)) - 1)
    return best


def min_cover(
    n: int,
    oracle: Oracle,
    *,
    deadline: float,
    max_family: int = 200_000,
    answers: dict[int, str] | None = None,
) -> CoverSearch:
    """Minimum number of feasible subsets of ``range(n)`` covering all items.

    ``oracle`` receives a subset as a bitmask.  Runs until ``deadline``
    (a ``time.monotonic`` value); when cut short, returns sound bounds.
    ``answers`` seeds (and receives) the oracle answer cache.
    """
    t0 = time.monotonic()
    feasible = _Cached(oracle, deadline, {} if answers is None else answers)
    full = (1 << n) - 1
    lower: float = 1
    upper: float = math.inf
    cover: list[int] | None = None
    refutation: dict = {"method": "trivial", "detail": "a cover needs at least one element"}
    incompatible = [0] * n  # pairs answered "no"

    def done(complete: bool) -> CoverSearch:
        return CoverSearch(lower, upper, cover, refutation, feasible.calls, feasible.unknown,
                           complete, (time.monotonic() - t0) * 1000)

    try:
        whole = feasible(full)
        if whole == "yes":
            lower = upper = 1
            cover = [full]
            refutation = {"method": "trivial", "detail": "the whole set is feasible"}
            return done(True)
        if whole == "no":
            lower = 2
            refutation = {"method": "whole-infeasible", "detail": "the whole set is infeasible"}

        for j in range(n):
            if feasible(1 << j) == "no":
                lower = upper = math.inf
                refutation = {"method": "infeasible-item", "item": j,
                              "detail": f"item {j} lies in no feasible set"}
                return done(True)

        cover = greedy_cover(feasible, n)
        if cover is not None:
            upper = len(cover)
        if lower >= upper:
            return done(True)

        # level-wise enumeration of the feasible family
        level = [1 << j for j in range(n)]
        known_yes: set[int] = {s for s in level if feasible(s) == "yes"}
        possible: set[int] = set(level)  # yes or unknown
        size = 1
        while level:
            if len(possible) > max_family:
                raise _Deadline
            nxt = []
            seen = set()
            for s in level:
                top = s.bit_length() - 1
                for j in range(top + 1, n):
                    t = s | 1 << j
                    if t in seen:
                        continue
                    seen.add(t)
                    if any((t & ~(1 << x)) not in possible for x in bits(s)):
                        continue
                    ans = feasible(t)
                    if ans == "no":
                        if size == 1:
                            incompatible[top] |= 1 << j
                            incompatible[j] |= 1 << top
                        continue
                    possible.add(t)
                    if ans == "yes":
                        known_yes.add(t)
                    nxt.append(t)
            if size == 1:
                clique = _max_clique(incompatible)
                if clique > lower:
                    lower = clique
                    refutation = {"method": "incompatible-items", "size": clique,
                                  "detail": f"{clique} items pairwise never share a feasible set"}
                if lower >= upper:
                    return done(True)
            level = nxt
            size += 1

        def maximal(family: set[int]) -> list[int]:
            fam = sorted(family, key=lambda m: -m.bit_count())
            out: list[int] = []
            for m in fam:
                if not any(m & ~k == 0 for k in out):
                    out.append(m)
            return out

        max_possible = maximal(possible)
        best_relaxed = exact_set_cover(full, max_possible)
        relaxed = len(best_relaxed) if best_relaxed is not None else math.inf
        if relaxed > lower:
            lower = relaxed
            refutation = {
                "method": "exhaustive-set-cover",
                "maximal_sets": len(max_possible),
                "detail": f"branch and bound over all {len(max_possible)} maximal feasible sets "
                          f"finds no cover with {relaxed - 1} elements",
            }
        if feasible.unknown == 0 or len(known_yes) == len(possible):
            best_exact = best_relaxed
        else:
            best_exact = exact_set_cover(full, maximal(known_yes))
        if best_exact is not None and len(best_exact) < upper:
            upper = len(best_exact)
            cover = best_exact
        return done(True)
    except _Deadline:
        clique = _max_clique(incompatible)
        if clique > lower:
            lower = clique
            refutation = {"method": "incompatible-items", "size": clique,
                          "detail": f"{clique} items pairwise never share a feasible set"}
        return done(lower >= upper)
