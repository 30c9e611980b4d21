"""Contiguity of simplicial maps and contiguity-class search.

Two maps are contiguous when ``phi(F) | psi(F)`` is a face for every facet
``F`` of the domain.  If ``phi`` and ``psi`` are contiguous then every map
that agrees with ``phi`` on some vertices and with ``psi`` on the rest has
its facet images inside ``phi(F) | psi(F)``; so changing one vertex at a
time walks between them through contiguous maps.  The class search is
therefore a breadth-first search over single-vertex moves.

Before searching, domain and codomain are replaced by their cores; chains
found there are lifted back by splicing in the collapse certificates.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .complex import Complex, SimplicialMap, bits, compose, core, identity
from .errors import DomainMismatch, TooLarge

YES, NO, UNKNOWN = "yes", "no", "unknown"


@dataclass(frozen=True)
class SearchBudget:
    """Limits for one search: visited states and wall-clock milliseconds."""

    max_states: int = 1_000_000
    max_millis: int = 60_000

    def __post_init__(self) -> None:
        if self.max_states <= 0 or self.max_millis <= 0:
            raise ValueError("budget limits must be positive")

    def deadline(self, outer: float | None = None) -> float:
        mine = time.monotonic() + self.max_millis / 1000.0
        return mine if outer is None else min(mine, outer)


@dataclass(frozen=True, eq=False)
class ContiguityChain:
    maps: tuple[SimplicialMap, ...]

    def __post_init__(self) -> None:
        if not self.maps:
            raise ValueError("a chain holds at least one map")

    @property
    def start(self) -> SimplicialMap:
        return self.maps[0]

    @property
    def end(self) -> SimplicialMap:
        return self.maps[-1]

    def __len__(self) -> int:
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)

    def reversed(self) -> "ContiguityChain":
        return ContiguityChain(self.maps[::-1])


@dataclass(frozen=True)
class ClassDecision:
    verdict: str
    chain: ContiguityChain | None = None
    states_explored: int = 0

    def __bool__(self) -> bool:
        return self.verdict == YES

    @property
    def yes(self) -> bool:
        return self.verdict == YES

    @property
    def no(self) -> bool:
        return self.verdict == NO

    @property
    def unknown(self) -> bool:
        return self.verdict == UNKNOWN


@dataclass(frozen=True)
class ChainCheck:
    """Outcome of replaying a chain; falsy on failure with the failing location."""

    ok: bool
    reason: str = ""
    pair: int | None = None
    facet: tuple[str, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _same_spaces(phi: SimplicialMap, psi: SimplicialMap) -> None:
    if phi.domain != psi.domain or phi.codomain != psi.codomain:
        raise DomainMismatch("maps must share domain and codomain")


def is_contiguous(phi: SimplicialMap, psi: SimplicialMap) -> bool:
    _same_spaces(phi, psi)
    return _first_bad_facet(phi, psi) is None


def _first_bad_facet(phi: SimplicialMap, psi: SimplicialMap) -> int | None:
    L = phi.codomain
    for i, fv in enumerate(phi.domain.facet_vertices):
        if not L.is_face_mask(phi.image_of(fv) | psi.image_of(fv)):
            return i
    return None


def verify_chain(
    chain: ContiguityChain,
    start: SimplicialMap | None = None,
    end: SimplicialMap | None = None,
) -> ChainCheck:
    """Replay a chain: consecutive maps contiguous, endpoints as declared."""
    maps = chain.maps
    first = maps[0]
    for k, f in enumerate(maps):
        if f.domain != first.domain or f.codomain != first.codomain:
            return ChainCheck(False, "map has different domain or codomain", pair=k)
        try:
            SimplicialMap(f.domain, f.codomain, f.assignment)
        except Exception as exc:  # noqa: BLE001 - any failure means the map is invalid
            return ChainCheck(False, f"map {k} is not simplicial: {exc}", pair=k)
    if start is not None and (start.domain != first.domain or start.codomain != first.codomain
                              or start.assignment != first.assignment):
        return ChainCheck(False, "chain does not start at the declared map", pair=0)
    last = maps[-1]
    if end is not None and (end.domain != last.domain or end.codomain != last.codomain
                            or end.assignment != last.assignment):
        return ChainCheck(False, "chain does not end at the declared map", pair=len(maps) - 1)
    for k in range(len(maps) - 1):
        bad = _first_bad_facet(maps[k], maps[k + 1])
        if bad is not None:
            F = first.domain.facets[bad]
            return ChainCheck(False, f"maps {k} and {k + 1} are not contiguous", pair=k,
                              facet=tuple(first.domain.names(F)))
    return ChainCheck(True)


# --------------------------------------------------------------------------
# collapse certificates


@lru_cache(maxsize=4096)
def core_chain(K: Complex) -> tuple[tuple[int, ...], ...]:
    """Assignments ``K -> K`` from the identity to ``inclusion o retraction``.

    The k-th map applies the first k elementary collapses; consecutive maps
    are contiguous because a deleted vertex and its dominator share every
    facet through the deleted vertex.
    """
    cur = list(range(K.n_vertices))
    out = [tuple(cur)]
    for v, d in core(K).sequence:
        cur = [d if x == v else x for x in cur]
        out.append(tuple(cur))
    return tuple(out)


def collapse_certificate(K: Complex) -> ContiguityChain:
    """Chain certifying ``inclusion o retraction ~ identity`` for ``core(K)``."""
    return ContiguityChain(tuple(SimplicialMap(K, K, a) for a in core_chain(K)))


def _after(g: Sequence[int], f: Sequence[int]) -> tuple[int, ...]:
    return tuple(g[x] for x in f)


# --------------------------------------------------------------------------
# breadth-first search over single-vertex moves

_memo: dict = {}


def clear_cache() -> None:
    _memo.clear()


class _Space:
    """Maps ``K -> L`` encoded as integers ``sum a[v] * |V(L)|**v``."""

    def __init__(self, K: Complex, L: Complex):
        self.K, self.L = K, L
        self.n = K.n_vertices
        self.base = L.n_vertices
        self.weights = [self.base ** v for v in range(self.n)]

    def encode(self, a: Sequence[int]) -> int:
        return sum(x * w for x, w in zip(a, self.weights))

    def decode(self, code: int) -> list[int]:
        out = []
        b = self.base
        for _ in range(self.n):
            code, r = divmod(code, b)
            out.append(r)
        return out

    def constants(self) -> set[int]:
        unit = sum(self.weights)
        return {c * unit for c in range(self.base)}


def _neighbours(space: _Space):
    """Return a function listing the codes one legal single-vertex move away."""
    K, L = space.K, space.L
    fverts = K.facet_vertices
    vfacets = K.vertex_facets
    weights = space.weights
    ext = L.extension
    full = L.vertex_mask
    decode = space.decode
    n = space.n

    def step(code: int) -> list[int]:
        a = decode(code)
        img = []
        for fv in fverts:
            m = 0
            for u in fv:
                m |= 1 << a[u]
            img.append(m)
        out = []
        for v in range(n):
            allowed = full
            for i in vfacets[v]:
                allowed &= ext(img[i])
                if not allowed:
                    break
            av = a[v]
            allowed &= ~(1 << av)
            if not allowed:
                continue
            wv = weights[v]
            for w in bits(allowed):
                out.append(code + (w - av) * wv)
        return out

    return step


def _path(parent: dict[int, int | None], code: int) -> list[int]:
    out = []
    while code is not None:
        out.append(code)
        code = parent[code]
    return out[::-1]


def _bfs(
    space: _Space,
    start: Sequence[int],
    is_target: Callable[[int], bool],
    max_states: int,
    deadline: float,
) -> tuple[str, list[tuple[int, ...]] | None, int, dict[int, int | None] | None]:
    """One-sided search from ``start``; returns (verdict, path, states, parents-on-exhaustion)."""
    step = _neighbours(space)
    s = space.encode(start)
    parent: dict[int, int | None] = {s: None}
    if is_target(s):
        return YES, [tuple(start)], 1, None
    queue = deque([s])
    pops = 0
    while queue:
        code = queue.popleft()
        pops += 1
        if pops & 255 == 0 and time.monotonic() > deadline:
            return UNKNOWN, None, len(parent), None
        for nc in step(code):
            if nc in parent:
                continue
            parent[nc] = code
            if is_target(nc):
                return YES, [tuple(space.decode(c)) for c in _path(parent, nc)], len(parent), None
            queue.append(nc)
        if len(parent) > max_states:
            return UNKNOWN, None, len(parent), None
    return NO, None, len(parent), parent


def _bidirectional(
    space: _Space,
    start: Sequence[int],
    goals: set[int],
    max_states: int,
    deadline: float,
) -> tuple[str, list[tuple[int, ...]] | None, int]:
    """Search from ``start`` and from ``goals`` at once, always expanding the smaller frontier.

    Exhausting either side without meeting proves that ``start`` shares no
    class with any goal.
    """
    step = _neighbours(space)
    s = space.encode(start)
    if s in goals:
        return YES, [tuple(start)], 1
    fwd: dict[int, int | None] = {s: None}
    bwd: dict[int, int | None] = {g: None for g in goals}
    qf, qb = deque([s]), deque(goals)
    pops = 0
    while qf and qb:
        pops += 1
        if pops & 255 == 0 and time.monotonic() > deadline:
            return UNKNOWN, None, len(fwd) + len(bwd)
        forward = len(qf) <= len(qb)
        queue, mine, other = (qf, fwd, bwd) if forward else (qb, bwd, fwd)
        code = queue.popleft()
        for nc in step(code):
            if nc in mine:
                continue
            mine[nc] = code
            if nc in other:
                head = _path(fwd, nc)
                tail = _path(bwd, nc)[::-1]
                codes = head + tail[1:]
                return YES, [tuple(space.decode(c)) for c in codes], len(fwd) + len(bwd)
            queue.append(nc)
        if len(fwd) + len(bwd) > max_states:
            return UNKNOWN, None, len(fwd) + len(bwd)
    return NO, None, len(fwd) + len(bwd)


def contiguity_class(phi: SimplicialMap, budget: SearchBudget = SearchBudget()) -> set[tuple[int, ...]]:
    """Every map in the contiguity class of ``phi``, by unreduced exhaustive search."""
    space = _Space(phi.domain, phi.codomain)
    verdict, _, _, parent = _bfs(space, phi.assignment, lambda c: False, budget.max_states, budget.deadline())
    if verdict != NO:
        raise TooLarge("contiguity class exceeds the search budget")
    return {tuple(space.decode(c)) for c in parent}


def _reduce(phi: SimplicialMap, reduce: bool):
    K, L = phi.domain, phi.codomain
    if not reduce:
        return K, L, phi.assignment
    ck, cl = core(K), core(L)
    a0 = _after(cl.retraction.assignment, _after(phi.assignment, ck.inclusion.assignment))
    return ck.core, cl.core, a0


def _lift_prefix(phi: SimplicialMap) -> list[tuple[int, ...]]:
    """Chain from ``phi`` to ``iL o rL o phi o iK o rK`` (parts A and B)."""
    K, L = phi.domain, phi.codomain
    a = phi.assignment
    part = [_after(a, rho) for rho in core_chain(K)]
    theta = part[-1]
    part += [_after(sigma, theta) for sigma in core_chain(L)[1:]]
    return part


def _lift(phi: SimplicialMap, path0: list[tuple[int, ...]], psi: SimplicialMap | None) -> ContiguityChain:
    K, L = phi.domain, phi.codomain
    ck, cl = core(K), core(L)
    iL = cl.inclusion.assignment
    rK = ck.retraction.assignment
    seq = _lift_prefix(phi)
    seq += [_after(iL, _after(mu, rK)) for mu in path0]
    if psi is not None:
        seq += _lift_prefix(psi)[::-1]
    out: list[tuple[int, ...]] = []
    for a in seq:
        if not out or out[-1] != a:
            out.append(a)
    return ContiguityChain(tuple(SimplicialMap(K, L, a) for a in out))


def _decide(phi, psi, budget, reduce, deadline, certify=True):
    K0, L0, a0 = _reduce(phi, reduce)
    space = _Space(K0, L0)
    if psi is None:
        targets = space.constants()
        key = (K0, L0, a0, None)
    else:
        _, _, b0 = _reduce(psi, reduce)
        targets = {space.encode(b0)}
        key = (K0, L0, a0, b0)
    hit = _memo.get(key)
    if hit is not None:
        verdict, path0 = hit
        states = 0
    else:
        verdict, path0, states = _bidirectional(space, a0, targets, budget.max_states,
                                                budget.deadline(deadline))
        if verdict != UNKNOWN:
            _memo[key] = (verdict, path0)
    if verdict != YES or not certify:
        return ClassDecision(verdict, None, states)
    if reduce:
        chain = _lift(phi, path0, psi)
    else:
        chain = ContiguityChain(tuple(SimplicialMap(phi.domain, phi.codomain, a) for a in path0))
    return ClassDecision(YES, chain, states)


def same_contiguity_class(
    phi: SimplicialMap,
    psi: SimplicialMap,
    budget: SearchBudget = SearchBudget(),
    *,
    reduce: bool = True,
    deadline: float | None = None,
    certify: bool = True,
) -> ClassDecision:
    """Decide ``phi ~ psi``; a yes verdict carries a chain on the original complexes.

    ``deadline`` (a ``time.monotonic`` value) caps the budget's own time limit.
    With ``certify=False`` a yes verdict comes without its chain.
    """
    _same_spaces(phi, psi)
    return _decide(phi, psi, budget, reduce, deadline, certify)


def class_contains_constant(
    phi: SimplicialMap,
    budget: SearchBudget = SearchBudget(),
    *,
    reduce: bool = True,
    deadline: float | None = None,
    certify: bool = True,
) -> ClassDecision:
    """Decide whether some constant map lies in the contiguity class of ``phi``."""
    return _decide(phi, None, budget, reduce, deadline, certify)


def certify_strong_equivalence(
    phi: SimplicialMap,
    psi: SimplicialMap,
    budget: SearchBudget = SearchBudget(),
) -> tuple[ContiguityChain, ContiguityChain] | None:
    """Chains for ``phi o psi ~ 1_L`` and ``psi o phi ~ 1_K``, or None if either fails."""
    K, L = phi.domain, phi.codomain
    d1 = same_contiguity_class(compose(phi, psi), identity(L), budget)
    d2 = same_contiguity_class(compose(psi, phi), identity(K), budget)
    if not (d1.yes and d2.yes):
        return None
    return d1.chain, d2.chain


def chain_from_assignments(K: Complex, L: Complex, assignments: Iterable[Sequence[int]]) -> ContiguityChain:
    return ContiguityChain(tuple(SimplicialMap(K, L, tuple(a)) for a in assignments))
