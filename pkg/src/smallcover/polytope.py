"""Combinatorial simple polytopes.

Vertices are the primitive data: each vertex is the set of the n facets
meeting it.  Higher faces are recovered by intersecting facet subsets, and
f-/h-vectors are derived from the incidence structure (closed forms for the
built-in families).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, prod
from typing import FrozenSet, List, Sequence, Tuple

from .errors import InputError


@dataclass(frozen=True)
class SimplePolytope:
    n: int
    facet_count: int
    vertices: Tuple[FrozenSet[int], ...]
    family: Tuple = ("explicit",)
    # facet -> sorted tuple of incident vertex indices, derived once
    _facet_vertices: Tuple[Tuple[int, ...], ...] = field(default=None, repr=False)

    def __post_init__(self):
        if self.n < 0 or self.facet_count < 0:
            raise InputError("negative dimension or facet count")
        seen = [[] for _ in range(self.facet_count)]
        for vi, v in enumerate(self.vertices):
            if len(v) != self.n:
                raise InputError(f"vertex {vi} does not lie on exactly {self.n} facets")
            for f in v:
                if not 0 <= f < self.facet_count:
                    raise InputError(f"vertex {vi} uses unknown facet {f}")
                seen[f].append(vi)
        if self.n > 0:
            for f, incident in enumerate(seen):
                if not incident:
                    raise InputError(f"facet {f} lies on no vertex")
        object.__setattr__(self, "_facet_vertices", tuple(tuple(s) for s in seen))

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def facet_vertex_indices(self, f: int) -> Tuple[int, ...]:
        if not 0 <= f < self.facet_count:
            raise InputError(f"unknown facet {f}")
        return self._facet_vertices[f]

    def facets_disjoint(self, f: int, g: int) -> bool:
        return not set(self.facet_vertex_indices(f)) & set(self.facet_vertex_indices(g))


def product_of_simplices(dims: Sequence[int]) -> SimplePolytope:
    """Product of simplices with the given dimensions.

    Block j contributes facets indexed consecutively; a vertex omits exactly
    one facet from each block.
    """
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise InputError("dims must be a nonempty list of positive integers")
    n = sum(dims)
    offsets = []
    off = 0
    for d in dims:
        offsets.append(off)
        off += d + 1
    facet_count = off

    vertices: List[FrozenSet[int]] = []

    def build(j: int, acc: List[int]):
        if j == len(dims):
            vertices.append(frozenset(acc))
            return
        base = offsets[j]
        for omit in range(dims[j] + 1):
            build(j + 1, acc + [base + k for k in range(dims[j] + 1) if k != omit])

    build(0, [])
    return SimplePolytope(n, facet_count, tuple(vertices), ("product_of_simplices", dims))


def block_offsets(dims: Sequence[int]) -> List[int]:
    """Starting facet index of each block in the product layout."""
    offsets, off = [], 0
    for d in dims:
        offsets.append(off)
        off += d + 1
    return offsets


def polygon(k: int) -> SimplePolytope:
    """Convex k-gon with edges 0..k-1 in cyclic order."""
    if k < 3:
        raise InputError("a polygon needs at least 3 edges")
    vertices = tuple(frozenset({i, (i + 1) % k}) for i in range(k))
    return SimplePolytope(2, k, vertices, ("polygon", k))


def explicit_polytope(n: int, facet_count: int, vertices: Sequence[Sequence[int]]) -> SimplePolytope:
    return SimplePolytope(
        n, facet_count, tuple(frozenset(v) for v in vertices), ("explicit",)
    )


def faces_meeting(P: SimplePolytope, facet_set) -> List[FrozenSet[int]]:
    """Connected components of the face cut out by a set of facets.

    Components are vertex sets; vertices are adjacent when they share n-1
    facets (an edge of P) all of whose facets contain the given set.
    """
    facet_set = frozenset(facet_set)
    for f in facet_set:
        if not 0 <= f < P.facet_count:
            raise InputError(f"unknown facet {f}")
    members = [vi for vi, v in enumerate(P.vertices) if facet_set <= v]
    if not members:
        return []
    idx = set(members)
    parent = {vi: vi for vi in members}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in combinations(members, 2):
        shared = P.vertices[a] & P.vertices[b]
        if len(shared) == P.n - 1 and facet_set <= shared:
            parent[find(a)] = find(b)
    comps: dict = {}
    for vi in members:
        comps.setdefault(find(vi), set()).add(vi)
    assert idx == set().union(*comps.values())
    return [frozenset(c) for c in comps.values()]


@dataclass(frozen=True)
class FVector:
    f: Tuple[int, ...]  # f_0 .. f_{n-1}, vertices first


@dataclass(frozen=True)
class HVector:
    h: Tuple[int, ...]  # h_0 .. h_n

    def __post_init__(self):
        h = self.h
        if h[0] != 1 or h[-1] != 1:
            raise InputError("h-vector must start and end with 1")
        if any(x < 0 for x in h):
            raise InputError("h-vector entries must be non-negative")
        if h != tuple(reversed(h)):
            raise InputError("h-vector fails the palindromic identity")


def f_vector(P: SimplePolytope) -> FVector:
    kind = P.family[0]
    if kind == "product_of_simplices":
        dims = P.family[1]
        # face-count polynomial of a simplex block: sum_d C(n_j+1, d+1) t^d
        coeffs = [1]
        for d in dims:
            block = [comb(d + 1, k + 1) for k in range(d + 1)]
            new = [0] * (len(coeffs) + len(block) - 1)
            for i, a in enumerate(coeffs):
                for j, b in enumerate(block):
                    new[i + j] += a * b
            coeffs = new
        return FVector(tuple(coeffs[: P.n]))  # drop the whole-polytope term
    if kind == "polygon":
        k = P.family[1]
        return FVector((k, k))
    # explicit: enumerate faces as components of facet-subset intersections
    f = [0] * P.n
    f[0] = P.vertex_count
    for codim in range(1, P.n):
        subsets = {S for v in P.vertices for S in combinations(sorted(v), codim)}
        count = sum(len(faces_meeting(P, S)) for S in subsets)
        f[P.n - codim] = count  # codim-c faces have dimension n - c
    return FVector(tuple(f))


def h_vector(P: SimplePolytope) -> HVector:
    """h-vector via sum_i f_{i-1} (t-1)^{n-i} = sum_i h_i t^{n-i}."""
    n = P.n
    if n == 0:
        return HVector((1,))
    # the transform runs over the dual simplicial sphere: index by codimension
    f = (1,) + tuple(reversed(f_vector(P).f))  # facets first, empty face = 1
    acc = [0] * (n + 1)  # coefficients of t^0 .. t^n
    for i, fi in enumerate(f):
        # fi * (t-1)^(n-i)
        d = n - i
        for k in range(d + 1):
            acc[k] += fi * comb(d, k) * (-1) ** (d - k)
    h = tuple(acc[n - i] for i in range(n + 1))
    hv = HVector(h)
    if sum(h) != P.vertex_count:
        raise InputError("h-vector entries do not sum to the vertex count")
    return hv


def simplex_facets(P: SimplePolytope) -> List[int]:
    """Facets that are simplices: their induced vertex count equals n."""
    return [
        f
        for f in range(P.facet_count)
        if len(P.facet_vertex_indices(f)) == P.n
    ]


def facet_neighbours(P: SimplePolytope, f: int) -> List[int]:
    """Facets other than f sharing at least one vertex with f."""
    out = set()
    for vi in P.facet_vertex_indices(f):
        out |= P.vertices[vi]
    out.discard(f)
    return sorted(out)


def product_vertex_count(dims: Sequence[int]) -> int:
    return prod(d + 1 for d in dims)
