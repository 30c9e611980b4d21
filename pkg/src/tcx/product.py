"""Categorical products of complexes, powers, projections and diagonals.

A set of vertex tuples is a simplex of ``K_1 x ... x K_n`` when each of its
coordinate projections is a simplex of the matching factor.  The facets are
therefore exactly the grids ``G_1 x ... x G_n`` of factor facets.

Tuples are flattened row-major over the factor vertex counts: the last
coordinate varies fastest, matching ``itertools.product``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product as cartesian
from math import prod
from typing import Iterable, Sequence

from .complex import (
    MAX_FACETS,
    MAX_VERTICES,
    Complex,
    SimplicialMap,
    Subcomplex,
    antichain,
    bits,
    subcomplex,
    to_mask,
)
from .errors import IndexOutOfRange, SizeLimitExceeded, UnknownVertex


@dataclass(frozen=True, eq=False)
class ProductComplex:
    underlying: Complex
    factors: tuple[Complex, ...]

    @property
    def arity(self) -> int:
        return len(self.factors)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = []
        step = 1
        for K in reversed(self.factors):
            out.append(step)
            step *= K.n_vertices
        return tuple(reversed(out))

    @cached_property
    def vertex_tuples(self) -> tuple[tuple[int, ...], ...]:
        return tuple(cartesian(*(range(K.n_vertices) for K in self.factors)))

    def index(self, tup: Sequence[int]) -> int:
        if len(tup) != self.arity:
            raise UnknownVertex(tup)
        idx = 0
        for t, K, s in zip(tup, self.factors, self.strides):
            if not 0 <= t < K.n_vertices:
                raise UnknownVertex(tup)
            idx += t * s
        return idx

    def is_power(self) -> bool:
        first = self.factors[0]
        return all(K == first for K in self.factors)

    def __repr__(self) -> str:
        return f"ProductComplex(arity={self.arity}, {self.underlying!r})"


def _tuple_label(labels: Iterable[str]) -> str:
    return "(" + ",".join(labels) + ")"


def categorical_product(factors: Sequence[Complex]) -> ProductComplex:
    """The categorical product of ``factors`` with facets the grids of factor facets."""
    factors = tuple(factors)
    if not factors:
        raise ValueError("need at least one factor")
    n_vertices = prod(K.n_vertices for K in factors)
    n_facets = prod(len(K.facets) for K in factors)
    if n_vertices > MAX_VERTICES or n_facets > MAX_FACETS:
        raise SizeLimitExceeded("categorical product", n_vertices, n_facets)

    tuples = list(cartesian(*(range(K.n_vertices) for K in factors)))
    if len(factors) == 1:
        labels = list(factors[0].labels)
    else:
        labels = [_tuple_label(K.labels[t] for K, t in zip(factors, tup)) for tup in tuples]

    strides = [prod(K.n_vertices for K in factors[i + 1:]) for i in range(len(factors))]
    masks = []
    for grid in cartesian(*(K.facet_vertices for K in factors)):
        mask = 0
        for tup in cartesian(*grid):
            mask |= 1 << sum(t * s for t, s in zip(tup, strides))
        masks.append(mask)
    # grids of antichain facets are already an antichain
    P = ProductComplex(Complex(tuple(labels), tuple(sorted(masks))), factors)
    return P


@lru_cache(maxsize=256)
def power(K: Complex, n: int) -> ProductComplex:
    """``K^n``; cached so repeated calls share one object."""
    if n < 1:
        raise ValueError("power needs n >= 1")
    return categorical_product([K] * n)


def member(P: ProductComplex, s: Iterable[Sequence[int]]) -> bool:
    """Membership by projections: every coordinate set must be a factor face."""
    s = list(s)
    if not s:
        return False
    for tup in s:
        P.index(tup)
    for i, K in enumerate(P.factors):
        if not K.is_face_mask(to_mask(tup[i] for tup in s)):
            return False
    return True


def projection(P: ProductComplex, i: int) -> SimplicialMap:
    """The projection onto factor ``i`` (1-based)."""
    if not 1 <= i <= P.arity:
        raise IndexOutOfRange(f"projection index {i} outside 1..{P.arity}")
    return SimplicialMap(P.underlying, P.factors[i - 1], tuple(t[i - 1] for t in P.vertex_tuples))


def diagonal(K: Complex, n: int) -> SimplicialMap:
    """``v -> (v, ..., v)`` into ``power(K, n)``."""
    P = power(K, n)
    step = sum(P.strides)
    return SimplicialMap(K, P.underlying, tuple(v * step for v in range(K.n_vertices)))


def map_power(phi: SimplicialMap, n: int) -> SimplicialMap:
    """``phi x ... x phi`` acting coordinatewise on ``domain^n -> codomain^n``."""
    P = power(phi.domain, n)
    Q = power(phi.codomain, n)
    a = phi.assignment
    qs = Q.strides
    return SimplicialMap(
        P.underlying,
        Q.underlying,
        tuple(sum(a[t] * s for t, s in zip(tup, qs)) for tup in P.vertex_tuples),
    )


def tuple_map(maps: Sequence[SimplicialMap], P: ProductComplex) -> SimplicialMap:
    """``(f_1, ..., f_n)`` from a common domain into the product ``P``."""
    if len(maps) != P.arity:
        raise ValueError("one map per factor needed")
    dom = maps[0].domain
    strides = P.strides
    assignment = tuple(
        sum(f.assignment[v] * s for f, s in zip(maps, strides)) for v in range(dom.n_vertices)
    )
    return SimplicialMap(dom, P.underlying, assignment)


def preimage_subcomplex(f: SimplicialMap, omega: Subcomplex) -> Subcomplex | None:
    """The largest subcomplex of ``f.domain`` that ``f`` maps into ``omega``.

    Its maximal faces are the sets ``F & f^-1(G)`` for domain facets ``F`` and
    generators ``G`` of ``omega``.  Returns None when the preimage is empty.
    """
    if omega.ambient != f.codomain:
        raise ValueError("omega must be a subcomplex of the codomain of f")
    a = f.assignment
    faces = []
    for F in f.domain.facet_vertices:
        for G in omega.generators:
            s = 0
            for u in F:
                if G >> a[u] & 1:
                    s |= 1 << u
            if s:
                faces.append(s)
    if not faces:
        return None
    return subcomplex(f.domain, antichain(faces))


def facet_grid(P: ProductComplex, facet: int) -> tuple[int, ...]:
    """The factor facets ``(G_1, ..., G_n)`` whose grid is ``facet``."""
    return tuple(
        to_mask(P.vertex_tuples[v][i] for v in bits(facet)) for i in range(P.arity)
    )
