"""Finite abstract simplicial complexes stored by their facets.

Vertex sets are Python ``int`` bitmasks: bit ``v`` is set when vertex ``v``
belongs to the simplex.  A complex keeps only its maximal simplices; a set
of vertices is a face exactly when it is a nonempty subset of some facet.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import (
    DomainMismatch,
    EmptyInput,
    NotAFace,
    NotAFacet,
    NotSimplicial,
    SizeLimitExceeded,
    UnknownVertex,
)

MAX_VERTICES = 4096
MAX_FACETS = 200_000


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def antichain(masks: Iterable[int]) -> tuple[int, ...]:
    """Drop duplicates and every mask contained in another; result is sorted."""
    uniq = sorted(set(masks), key=lambda m: (-m.bit_count(), m))
    kept: list[int] = []
    for m in uniq:
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class Complex:
    """A finite abstract simplicial complex given by its facets.

    ``labels[v]`` is the display name of vertex ``v``; ``facets`` is a sorted
    antichain of vertex bitmasks covering every vertex.
    """

    labels: tuple[str, ...]
    facets: tuple[int, ...]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n == 0 or not self.facets:
            raise EmptyInput("a complex needs at least one vertex and one facet")
        if n > MAX_VERTICES or len(self.facets) > MAX_FACETS:
            raise SizeLimitExceeded("complex", n, len(self.facets))
        if len(set(self.labels)) != n:
            raise ValueError("vertex labels must be distinct")
        if tuple(sorted(self.facets)) != self.facets:
            raise ValueError("facets must be sorted")
        covered = 0
        for f in self.facets:
            if f <= 0:
                raise EmptyInput("facets must be nonempty")
            covered |= f
        if covered != (1 << n) - 1:
            raise ValueError("every vertex must lie in some facet")
        if antichain(self.facets) != self.facets:
            raise ValueError("facets must form an antichain")

    @classmethod
    def from_masks(cls, labels: Sequence[str], masks: Iterable[int]) -> "Complex":
        return cls(tuple(labels), antichain(masks))

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]], labels: Sequence[str] | None = None) -> "Complex":
        masks = [to_mask(f) for f in facets]
        if labels is None:
            top = max(m.bit_length() for m in masks)
            labels = [str(i) for i in range(top)]
        return cls.from_masks(labels, masks)

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def vertex_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def __hash__(self) -> int:
        h = self._cache.get("hash")
        if h is None:
            h = self._cache["hash"] = hash((self.labels, self.facets))
        return h

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Complex):
            return NotImplemented
        return hash(self) == hash(other) and self.labels == other.labels and self.facets == other.facets

    @cached_property
    def facet_vertices(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(bits(f)) for f in self.facets)

    @cached_property
    def vertex_facets(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the indices of the facets containing it."""
        table: list[list[int]] = [[] for _ in self.labels]
        for i, f in enumerate(self.facets):
            for v in bits(f):
                table[v].append(i)
        return tuple(tuple(t) for t in table)

    @cached_property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.labels)}

    def vertex(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise UnknownVertex(label) from None

    def simplex(self, labels: Iterable[str]) -> int:
        return to_mask(self.vertex(x) for x in labels)

    def names(self, mask: int) -> list[str]:
        return [self.labels[v] for v in bits(mask)]

    def is_face_mask(self, mask: int) -> bool:
        if mask == 0:
            return False
        memo = self._cache.setdefault("face", {})
        hit = memo.get(mask)
        if hit is None:
            hit = memo[mask] = any(mask & ~f == 0 for f in self.facets)
        return hit

    def extension(self, mask: int) -> int:
        """Union of the facets containing ``mask`` (0 when ``mask`` is not a face).

        ``mask | 1 << w`` is a face exactly when bit ``w`` is set in the result.
        """
        memo = self._cache.setdefault("ext", {})
        hit = memo.get(mask)
        if hit is None:
            hit = 0
            for f in self.facets:
                if mask & ~f == 0:
                    hit |= f
            memo[mask] = hit
        return hit

    def __repr__(self) -> str:
        shown = ["".join(self.names(f)) if all(len(x) == 1 for x in self.labels) else "{" + ",".join(self.names(f)) + "}"
                 for f in self.facets[:8]]
        more = ", ..." if len(self.facets) > 8 else ""
        return f"Complex({self.n_vertices} vertices: {', '.join(shown)}{more})"


def normalize(facet_list: Sequence[Sequence[str]]) -> Complex:
    """Build a complex from vertex-name lists, dropping duplicate and non-maximal sets.

    Vertices are numbered in order of first appearance.
    """
    if not facet_list:
        raise EmptyInput("empty facet list")
    index: dict[str, int] = {}
    masks = []
    for names in facet_list:
        names = list(names)
        if not names:
            raise EmptyInput("empty facet")
        mask = 0
        for name in names:
            mask |= 1 << index.setdefault(name, len(index))
        masks.append(mask)
    return Complex.from_masks(list(index), masks)


def simplex(n_vertices: int) -> Complex:
    """The full simplex on ``n_vertices`` vertices labelled ``0..n-1``."""
    return Complex.from_facets([range(n_vertices)])


def boundary_of_simplex(n_vertices: int) -> Complex:
    return Complex.from_facets([[v for v in range(n_vertices) if v != u] for u in range(n_vertices)])


def is_face(K: Complex, s: Iterable[int]) -> bool:
    """True iff the vertex set ``s`` is a nonempty subset of a facet of ``K``."""
    mask = 0
    for v in s:
        if not 0 <= v < K.n_vertices:
            raise UnknownVertex(v)
        mask |= 1 << v
    return K.is_face_mask(mask)


def edge_path_connected(K: Complex) -> bool:
    return len(components(K)) == 1


def components(K: Complex) -> list[int]:
    """Vertex masks of the edge-path components, ordered by smallest vertex."""
    parent = list(range(K.n_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for fv in K.facet_vertices:
        root = find(fv[0])
        for v in fv[1:]:
            r = find(v)
            if r != root:
                parent[r] = root
    groups: dict[int, int] = {}
    for v in range(K.n_vertices):
        r = find(v)
        groups[r] = groups.get(r, 0) | (1 << v)
    return sorted(groups.values(), key=lambda m: (m & -m))


# --------------------------------------------------------------------------
# simplicial maps


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    """A vertex map ``domain -> codomain`` sending every facet to a face."""

    domain: Complex
    codomain: Complex
    assignment: tuple[int, ...]
    check: bool = field(default=True, repr=False)

    def __post_init__(self) -> None:
        if not self.check:
            return
        if len(self.assignment) != self.domain.n_vertices:
            raise DomainMismatch("assignment length differs from the domain vertex count")
        m = self.codomain.n_vertices
        if any(not 0 <= a < m for a in self.assignment):
            raise UnknownVertex("assignment value outside the codomain")
        for fv in self.domain.facet_vertices:
            if not self.codomain.is_face_mask(self.image_of(fv)):
                raise NotSimplicial(
                    f"facet {self.domain.names(to_mask(fv))} maps to a non-face "
                    f"{self.codomain.names(self.image_of(fv))}"
                )

    def __call__(self, v: int) -> int:
        return self.assignment[v]

    def image_of(self, vertices: Iterable[int]) -> int:
        a = self.assignment
        mask = 0
        for v in vertices:
            mask |= 1 << a[v]
        return mask

    def image_mask(self, mask: int) -> int:
        return self.image_of(bits(mask))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (self.assignment == other.assignment and self.domain == other.domain
                and self.codomain == other.codomain)

    def __hash__(self) -> int:
        return hash((self.assignment, self.domain, self.codomain))

    def is_constant(self) -> bool:
        return len(set(self.assignment)) == 1

    def as_names(self) -> dict[str, str]:
        return {self.domain.labels[v]: self.codomain.labels[a] for v, a in enumerate(self.assignment)}

    def __repr__(self) -> str:
        pairs = ", ".join(f"{k}->{v}" for k, v in list(self.as_names().items())[:10])
        return f"SimplicialMap({pairs}{', ...' if self.domain.n_vertices > 10 else ''})"


def identity(K: Complex) -> SimplicialMap:
    return SimplicialMap(K, K, tuple(range(K.n_vertices)), check=False)


def constant_map(K: Complex, L: Complex, w: int) -> SimplicialMap:
    return SimplicialMap(K, L, (w,) * K.n_vertices)


def compose(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """The composite ``g o f`` (apply ``f`` first)."""
    if f.codomain != g.domain:
        raise DomainMismatch("codomain of f differs from domain of g")
    ga = g.assignment
    return SimplicialMap(f.domain, g.codomain, tuple(ga[a] for a in f.assignment))


# --------------------------------------------------------------------------
# subcomplexes


@dataclass(frozen=True, eq=False)
class Subcomplex:
    """The subcomplex of ``ambient`` generated by a set of its faces.

    ``generators`` is the antichain of generating faces (ambient bitmasks).
    ``complex`` is the realised complex, whose vertex ``k`` is ambient vertex
    ``vertices[k]``.
    """

    ambient: Complex
    generators: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.generators:
            raise EmptyInput("a subcomplex needs at least one generator")
        for g in self.generators:
            if not self.ambient.is_face_mask(g):
                raise NotAFace(f"{self.ambient.names(g)} is not a face of the ambient complex")

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        union = 0
        for g in self.generators:
            union |= g
        return tuple(bits(union))

    @cached_property
    def complex(self) -> Complex:
        pos = {v: k for k, v in enumerate(self.vertices)}
        labels = [self.ambient.labels[v] for v in self.vertices]
        return Complex.from_masks(labels, [to_mask(pos[v] for v in bits(g)) for g in self.generators])

    @cached_property
    def inclusion(self) -> SimplicialMap:
        return SimplicialMap(self.complex, self.ambient, self.vertices, check=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subcomplex):
            return NotImplemented
        return self.generators == other.generators and self.ambient == other.ambient

    def __hash__(self) -> int:
        return hash((self.generators, self.ambient))

    def __repr__(self) -> str:
        return f"Subcomplex({self.complex!r} in {self.ambient.n_vertices}-vertex ambient)"


def subcomplex(K: Complex, faces: Iterable[int]) -> Subcomplex:
    """The subcomplex generated by arbitrary faces (bitmasks) of ``K``."""
    return Subcomplex(K, antichain(faces))


def generated_subcomplex(K: Complex, gens: Iterable[int]) -> Subcomplex:
    """The subcomplex generated by a nonempty set of facets (bitmasks) of ``K``."""
    gens = list(gens)
    facet_set = set(K.facets)
    for g in gens:
        if g not in facet_set:
            raise NotAFacet(f"{K.names(g) if g else g} is not a facet")
    return Subcomplex(K, antichain(gens))


def restrict(f: SimplicialMap, omega: Subcomplex) -> SimplicialMap:
    """``f`` restricted to ``omega``; equals ``f o inclusion``."""
    if omega.ambient != f.domain:
        raise DomainMismatch("subcomplex does not live in the domain of f")
    fa = f.assignment
    return SimplicialMap(omega.complex, f.codomain, tuple(fa[v] for v in omega.vertices), check=False)


# --------------------------------------------------------------------------
# strong collapses


class CollapseStep(NamedTuple):
    deleted: int
    dominator: int


@dataclass(frozen=True)
class CollapseSequence:
    steps: tuple[CollapseStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


class Core(NamedTuple):
    core: Complex
    sequence: CollapseSequence
    retraction: SimplicialMap
    inclusion: SimplicialMap


def _dominator(facets: Iterable[int], v: int) -> int | None:
    bit = 1 << v
    common = -1
    for f in facets:
        if f & bit:
            common &= f
    if common == -1:
        return None
    common &= ~bit
    if not common:
        return None
    return (common & -common).bit_length() - 1


def is_dominated(K: Complex, v: int) -> int | None:
    """The smallest vertex lying in every facet that contains ``v``, if any."""
    if not 0 <= v < K.n_vertices:
        raise UnknownVertex(v)
    return _dominator(K.facets, v)


@lru_cache(maxsize=4096)
def core(K: Complex) -> Core:
    """Delete dominated vertices (smallest first) until none remain."""
    facets = list(K.facets)
    alive = K.vertex_mask
    steps: list[CollapseStep] = []
    progress = True
    while progress and alive.bit_count() > 1:
        progress = False
        for v in bits(alive):
            d = _dominator(facets, v)
            if d is None:
                continue
            steps.append(CollapseStep(v, d))
            alive &= ~(1 << v)
            facets = list(antichain(f & ~(1 << v) for f in facets))
            progress = True
            break

    kept = tuple(bits(alive))
    pos = {v: k for k, v in enumerate(kept)}
    C = Complex.from_masks([K.labels[v] for v in kept], [to_mask(pos[v] for v in bits(f)) for f in facets])

    target = list(range(K.n_vertices))
    for v, d in steps:
        target[v] = d

    def resolve(v: int) -> int:
        while not alive >> v & 1:
            v = target[v]
        return v

    r = SimplicialMap(K, C, tuple(pos[resolve(v)] for v in range(K.n_vertices)))
    i = SimplicialMap(C, K, kept)
    return Core(C, CollapseSequence(tuple(steps)), r, i)


def is_strongly_collapsible(K: Complex) -> bool:
    return core(K).core.n_vertices == 1


def strong_expansion(K: Complex, seed: int) -> Complex:
    """Add a fresh vertex ``w`` coned onto a random nonempty set of facets through a random vertex.

    The new vertex is dominated by the chosen vertex, so ``core`` is unchanged.
    """
    rng = random.Random(seed)
    v = rng.randrange(K.n_vertices)
    star = list(K.vertex_facets[v])
    chosen = rng.sample(star, rng.randint(1, len(star)))
    n = K.n_vertices
    name = f"w{n}"
    taken = set(K.labels)
    while name in taken:
        name += "'"
    w = 1 << n
    masks = list(K.facets) + [K.facets[i] | w for i in chosen]
    return Complex.from_masks(list(K.labels) + [name], masks)


# --------------------------------------------------------------------------
# isomorphism and strong homotopy type


def _signature(K: Complex, v: int) -> tuple:
    return tuple(sorted(K.facets[i].bit_count() for i in K.vertex_facets[v]))


def is_isomorphic(K: Complex, L: Complex) -> tuple[int, ...] | None:
    """A vertex bijection ``K -> L`` carrying facets onto facets, or None."""
    n = K.n_vertices
    if n != L.n_vertices or len(K.facets) != len(L.facets):
        return None
    if sorted(f.bit_count() for f in K.facets) != sorted(f.bit_count() for f in L.facets):
        return None
    sig_k = [_signature(K, v) for v in range(n)]
    sig_l = [_signature(L, v) for v in range(n)]
    if sorted(sig_k) != sorted(sig_l):
        return None

    lfacets = set(L.facets)
    # most constrained vertices first
    order = sorted(range(n), key=lambda v: (sum(1 for s in sig_l if s == sig_k[v]), v))
    assign = [-1] * n
    used = 0
    placed = 0

    def consistent(v: int) -> bool:
        for i in K.vertex_facets[v]:
            f = K.facets[i]
            if f & ~placed == 0:
                img = 0
                for u in bits(f):
                    img |= 1 << assign[u]
                if img not in lfacets:
                    return False
        return True

    def backtrack(k: int) -> bool:
        nonlocal used, placed
        if k == n:
            return True
        v = order[k]
        for w in range(n):
            if used >> w & 1 or sig_l[w] != sig_k[v]:
                continue
            assign[v] = w
            used |= 1 << w
            placed |= 1 << v
            if consistent(v) and backtrack(k + 1):
                return True
            used &= ~(1 << w)
            placed &= ~(1 << v)
        assign[v] = -1
        return False

    return tuple(assign) if backtrack(0) else None


def same_strong_homotopy_type(K: Complex, L: Complex) -> tuple[SimplicialMap, SimplicialMap] | None:
    """Maps ``phi: K -> L`` and ``psi: L -> K`` through isomorphic cores, or None.

    A None answer relies on uniqueness of the core up to isomorphism.
    Use ``tcx.contiguity.certify_strong_equivalence`` to certify the pair.
    """
    ck, cl = core(K), core(L)
    g = is_isomorphic(ck.core, cl.core)
    if g is None:
        return None
    ginv = [0] * len(g)
    for a, b in enumerate(g):
        ginv[b] = a
    G = SimplicialMap(ck.core, cl.core, g)
    Ginv = SimplicialMap(cl.core, ck.core, tuple(ginv))
    phi = compose(cl.inclusion, compose(G, ck.retraction))
    psi = compose(ck.inclusion, compose(Ginv, cl.retraction))
    return phi, psi


def simplicial_maps(K: Complex, L: Complex) -> Iterator[tuple[int, ...]]:
    """Every simplicial map ``K -> L`` as an assignment tuple, by backtracking."""
    n, m = K.n_vertices, L.n_vertices
    assign = [0] * n
    # facets are checked on the part assigned so far (vertices <= v)
    checks = [[f & ((2 << v) - 1) for f in K.facets if f >> v & 1] for v in range(n)]

    def ok(v: int) -> bool:
        for part in checks[v]:
            img = 0
            for u in bits(part):
                img |= 1 << assign[u]
            if not L.is_face_mask(img):
                return False
        return True

    def rec(v: int) -> Iterator[tuple[int, ...]]:
        if v == n:
            yield tuple(assign)
            return
        for w in range(m):
            assign[v] = w
            if ok(v):
                yield from rec(v + 1)

    yield from rec(0)
