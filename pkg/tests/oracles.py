"""Brute-force reference implementations used as test oracles.

Everything here works on plain Python sets of vertex names and shares no
code with ``tcx`` beyond reading facet lists.  Speed comes from numpy
vectorisation only; the algorithms are the naive definitions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

Simplex = frozenset


@dataclass(frozen=True)
class Naive:
    """A complex given by its facets, each a frozenset of hashable vertices."""

    facets: tuple[frozenset, ...]

    @classmethod
    def of(cls, facets) -> "Naive":
        fs = {frozenset(f) for f in facets}
        maximal = [f for f in fs if not any(f < g for g in fs)]
        return cls(tuple(sorted(maximal, key=lambda f: sorted(map(str, f)))))

    @classmethod
    def from_tcx(cls, K) -> "Naive":
        return cls.of(K.names(f) for f in K.facets)

    @cached_property
    def vertices(self) -> tuple:
        return tuple(sorted(set().union(*self.facets), key=str))

    @cached_property
    def faces(self) -> frozenset:
        out = set()
        for f in self.facets:
            items = sorted(f, key=str)
            for r in range(1, len(items) + 1):
                out.update(frozenset(c) for c in itertools.combinations(items, r))
        return frozenset(out)

    def is_face(self, s) -> bool:
        s = frozenset(s)
        return bool(s) and s in self.faces


def product(*factors: Naive) -> Naive:
    """Categorical product: a set of tuples is a simplex iff every projection is."""
    facets = [frozenset(itertools.product(*grid)) for grid in itertools.product(*(k.facets for k in factors))]
    return Naive.of(facets)


def in_product(factors: list[Naive], s) -> bool:
    s = list(s)
    return bool(s) and all(k.is_face({t[i] for t in s}) for i, k in enumerate(factors))


def simplicial_maps(K: Naive, L: Naive) -> list[dict]:
    """Every vertex map K -> L sending facets to simplices."""
    out = []
    for images in itertools.product(L.vertices, repeat=len(K.vertices)):
        a = dict(zip(K.vertices, images))
        if all(L.is_face({a[v] for v in f}) for f in K.facets):
            out.append(a)
    return out


def contiguous(K: Naive, L: Naive, a: dict, b: dict) -> bool:
    """Contiguity checked on every simplex of K."""
    return all(L.is_face({a[v] for v in s} | {b[v] for v in s}) for s in K.faces)


class MapGraph:
    """All simplicial maps K -> L and the connected components of the contiguity relation."""

    def __init__(self, K: Naive, L: Naive, maps: list[dict] | None = None):
        self.K, self.L = K, L
        self.maps = simplicial_maps(K, L) if maps is None else maps
        self.key = {self.freeze(a): i for i, a in enumerate(self.maps)}
        self.labels = self._components()

    def freeze(self, a: dict) -> tuple:
        return tuple(a[v] for v in self.K.vertices)

    def _components(self) -> np.ndarray:
        K, L = self.K, self.L
        pos = {v: i for i, v in enumerate(L.vertices)}
        nv = len(L.vertices)
        table = np.zeros(1 << nv, dtype=bool)
        for s in L.faces:
            table[sum(1 << pos[v] for v in s)] = True
        n = len(self.maps)
        adj = np.ones((n, n), dtype=bool)
        for f in K.facets:  # every face of K lies in a facet, so facets suffice
            img = np.array([sum(1 << pos[w] for w in {a[v] for v in f}) for a in self.maps], dtype=np.int64)
            adj &= table[img[:, None] | img[None, :]]
        _, labels = connected_components(csr_matrix(adj), directed=False)
        return labels

    def component(self, a: dict) -> int:
        return int(self.labels[self.key[self.freeze(a)]])

    def partition(self) -> set[frozenset]:
        groups: dict[int, set] = {}
        for a, c in zip(self.maps, self.labels):
            groups.setdefault(int(c), set()).add(self.freeze(a))
        return {frozenset(g) for g in groups.values()}

    def has_constant(self, comp: int) -> bool:
        return any(int(c) == comp and len(set(a.values())) == 1 for a, c in zip(self.maps, self.labels))


def generated(facets) -> Naive:
    return Naive.of(facets)


def categorical(omega: Naive, K: Naive) -> bool:
    """Inclusion Omega -> K lies in the class of a constant map."""
    g = MapGraph(omega, K)
    return g.has_constant(g.component({v: v for v in omega.vertices}))


def farber(omega: Naive, K: Naive, n: int) -> bool:
    """All coordinate projections restricted to Omega lie in one class."""
    g = MapGraph(omega, K)
    comps = {g.component({t: t[i] for t in omega.vertices}) for i in range(n)}
    return len(comps) == 1


def min_cover_size(facets: tuple, feasible) -> float:
    """Least number of feasible facet sets covering all facets (inf if none).

    Checks sets in order of size and skips supersets of infeasible sets,
    which is valid because feasibility is inherited by subsets.
    """
    m = len(facets)
    ok: dict[frozenset, bool] = {}
    for r in range(1, m + 1):
        for idx in itertools.combinations(range(m), r):
            s = frozenset(idx)
            if r > 1 and not all(ok.get(s - {i}, False) for i in s):
                ok[s] = False
                continue
            ok[s] = feasible([facets[i] for i in idx])
    good = [s for s, v in ok.items() if v]
    maximal = [s for s in good if not any(s < t for t in good)]
    full = frozenset(range(m))
    for k in range(1, m + 1):
        for combo in itertools.combinations(maximal, k):
            if frozenset().union(*combo) == full:
                return k
    return float("inf")


def scat(K: Naive) -> float:
    return min_cover_size(K.facets, lambda fs: categorical(generated(fs), K)) - 1


def tc(K: Naive, n: int) -> float:
    P = product(*[K] * n)
    return min_cover_size(P.facets, lambda fs: farber(generated(fs), K, n)) - 1


def dominated_free_core_size(K: Naive) -> int:
    """Vertex count of the core, by deleting any dominated vertex until none remain."""
    facets = set(K.facets)
    while True:
        verts = set().union(*facets)
        for v in sorted(verts, key=str):
            star = [f for f in facets if v in f]
            common = frozenset.intersection(*star) - {v}
            if common:
                facets = {f - {v} if v in f else f for f in facets}
                facets = {f for f in facets if f and not any(f < g for g in facets)}
                break
        else:
            return len(verts)
