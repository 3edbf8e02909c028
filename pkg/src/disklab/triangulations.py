"""Exact census of disk triangulations of a 3-cycle.

A triangulation of a 3-cycle with k labeled internal vertices is stored as
the set of its 2-dimensional faces (ascending vertex triples).  The census
is generated by a root-edge decomposition of polygons-with-budget: the face
on the root edge of the current sub-polygon has an apex that is either a
fresh internal vertex or another vertex of the same sub-polygon, which
splits it in two.  Interior vertices are first generated as anonymous slots
in a canonical creation order; labeled triangulations are obtained by
distributing the internal labels over the slots in all k! orders.  Each
labeled triangulation is produced exactly once.

All counting is exact integer arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator, Sequence

Face = tuple[int, int, int]

#: Largest k for which full enumeration is enabled by default.  t_7 is
#: already 85,503,600 labeled triangulations (streamed, never materialized).
ENUMERATION_LIMIT = 7


class EnumerationLimitError(ValueError):
    """Raised when an exhaustive operation is requested beyond the configured k limit."""


def count_triangulations(k: int) -> int:
    """Number t_k of triangulations of a 3-cycle with k labeled internal vertices.

    Closed form 6*(4k+1)!/(3k+3)!, evaluated exactly.
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    return 6 * factorial(4 * k + 1) // factorial(3 * k + 3)


@dataclass(frozen=True)
class DiskTriangulation:
    """A triangulation of a 3-cycle, identified with its set of faces.

    boundary is the ordered triple of boundary vertex labels, faces the set
    of ascending vertex triples, and k the number of internal vertices.
    """

    boundary: tuple[int, int, int]
    faces: frozenset[Face]
    k: int

    @classmethod
    def build(cls, faces: Iterable[Sequence[int]], boundary: Sequence[int],
              validate: bool = True) -> "DiskTriangulation":
        norm = frozenset(tuple(sorted(f)) for f in faces)
        bnd = tuple(boundary)
        if validate and not is_disk_triangulation(norm, bnd):
            raise ValueError("faces do not form a disk triangulation of the boundary")
        k = (len(norm) - 1) // 2
        return cls(bnd, norm, k)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for f in self.faces for v in f)

    @property
    def internal_vertices(self) -> frozenset[int]:
        return self.vertices - frozenset(self.boundary)

    def edges(self) -> set[tuple[int, int]]:
        es: set[tuple[int, int]] = set()
        for f in self.faces:
            es.add((f[0], f[1]))
            es.add((f[0], f[2]))
            es.add((f[1], f[2]))
        return es


@dataclass(frozen=True)
class MissingFace:
    """A triple whose three edges are present but whose face is absent.

    density counts the vertices strictly inside the triple, and interior
    is the set of those vertices.
    """

    triple: Face
    density: int
    interior: frozenset[int]


# ---------------------------------------------------------------------------
# Shape generation (anonymous interior slots)
# ---------------------------------------------------------------------------

def _pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _face(a: int, b: int, c: int) -> Face:
    return tuple(sorted((a, b, c)))  # type: ignore[return-value]


def _restrict(blocked: frozenset, verts: tuple) -> frozenset:
    vs = set(verts)
    return frozenset(p for p in blocked if p[0] in vs and p[1] in vs)


def _triangulate_region(cycle: tuple, blocked: frozenset, budget: int,
                        next_slot: int) -> Iterator[list[Face]]:
    """Yield all triangulations of a sub-polygon using exactly `budget` fresh slots.

    cycle lists the polygon vertices with the root edge first, i.e. the
    face on edge (cycle[0], cycle[1]) is decided here.  blocked holds the
    vertex pairs of the polygon that are already adjacent elsewhere in the
    ambient triangulation; they may not become chords.
    """
    m = len(cycle)
    v0, v1 = cycle[0], cycle[1]

    if budget >= 1:
        w = next_slot
        face = _face(v0, v1, w)
        new_cycle = (v0, w, v1) + cycle[2:]
        new_blocked = blocked | {_pair(v0, v1)}
        for rest in _triangulate_region(new_cycle, new_blocked, budget - 1, next_slot + 1):
            rest.append(face)
            yield rest

    for j in range(2, m):
        vj = cycle[j]
        left_exists = j >= 3
        right_exists = j <= m - 2
        if left_exists and _pair(v1, vj) in blocked:
            continue
        if right_exists and _pair(v0, vj) in blocked:
            continue
        face = _face(v0, v1, vj)
        if not left_exists and not right_exists:
            if budget == 0:
                yield [face]
            continue
        if not left_exists:
            right = (v0, vj) + cycle[j + 1:]
            for rest in _triangulate_region(right, _restrict(blocked, right), budget, next_slot):
                rest.append(face)
                yield rest
            continue
        if not right_exists:
            left = (vj,) + cycle[1:j]
            for rest in _triangulate_region(left, _restrict(blocked, left), budget, next_slot):
                rest.append(face)
                yield rest
            continue
        left = (vj,) + cycle[1:j]
        right = (v0, vj) + cycle[j + 1:]
        lblk = _restrict(blocked, left)
        rblk = _restrict(blocked, right)
        for bl in range(budget + 1):
            rights = list(_triangulate_region(right, rblk, budget - bl, next_slot + bl))
            if not rights:
                continue
            for lf in _triangulate_region(left, lblk, bl, next_slot):
                for rf in rights:
                    yield lf + rf + [face]


@lru_cache(maxsize=None)
def census_shapes(k: int) -> tuple[frozenset[Face], ...]:
    """All census shapes at k: boundary (1,2,3), interior slots 4..k+3 in creation order.

    Each shape is itself a valid labeled triangulation; the full labeled
    census is shapes x k! slot permutations, so len(census_shapes(k)) * k!
    equals count_triangulations(k).
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    return tuple(frozenset(faces)
                 for faces in _triangulate_region((1, 2, 3), frozenset(), k, 4))


def _check_limit(k: int, limit: int) -> None:
    if k > limit:
        raise EnumerationLimitError(
            f"k={k} exceeds the enumeration limit {limit}; "
            f"only closed-form counts are available beyond it")


def enumerate_triangulations(k: int, boundary: Sequence[int] = (1, 2, 3),
                             internal_labels: Iterable[int] | None = None,
                             limit: int = ENUMERATION_LIMIT,
                             shard: tuple[int, int] | None = None,
                             ) -> Iterator[DiskTriangulation]:
    """Stream every triangulation of the boundary cycle with the given internal labels.

    Each triangulation is yielded exactly once, in a deterministic order
    (shape creation order, then lexicographic label assignments).  With
    shard=(i, m), only shapes of index congruent to i mod m are expanded,
    which partitions the stream over m independent workers.
    """
    _check_limit(k, limit)
    bnd = tuple(boundary)
    if len(bnd) != 3 or len(set(bnd)) != 3:
        raise ValueError(f"boundary must be three distinct labels, got {bnd!r}")
    if internal_labels is None:
        internal_labels = range(4, k + 4) if bnd == (1, 2, 3) else ()
    labels = sorted(internal_labels)
    if len(labels) != k or len(set(labels)) != k:
        raise ValueError(f"need {k} distinct internal labels, got {labels!r}")
    if set(labels) & set(bnd):
        raise ValueError("internal labels overlap the boundary labels")

    shapes = census_shapes(k)
    if shard is not None:
        idx, nshards = shard
        shapes = shapes[idx::nshards]
    base = {1: bnd[0], 2: bnd[1], 3: bnd[2]}
    for shape in shapes:
        for perm in itertools.permutations(labels):
            sub = dict(base)
            for slot, lab in enumerate(perm, start=4):
                sub[slot] = lab
            faces = frozenset(_face(sub[a], sub[b], sub[c]) for a, b, c in shape)
            yield DiskTriangulation(bnd, faces, k)


def relabel(tri: DiskTriangulation, labels: Sequence[int]) -> DiskTriangulation:
    """Order-preserving substitution: i-th smallest internal label goes to labels[i]."""
    labels = list(labels)
    if len(labels) != tri.k or len(set(labels)) != tri.k:
        raise ValueError(f"need {tri.k} distinct labels, got {labels!r}")
    if set(labels) & set(tri.boundary):
        raise ValueError("replacement labels collide with the boundary labels")
    old = sorted(tri.internal_vertices)
    sub = dict(zip(old, sorted(labels)))
    for b in tri.boundary:
        sub[b] = b
    faces = frozenset(_face(sub[a], sub[b], sub[c]) for a, b, c in tri.faces)
    return DiskTriangulation(tri.boundary, faces, tri.k)


# ---------------------------------------------------------------------------
# Structural recognition (independent of the enumerator)
# ---------------------------------------------------------------------------

def is_disk_triangulation(faces, boundary) -> bool:
    """True iff the face set is a disk triangulation of the boundary 3-cycle.

    Checks the full structural definition: 2k+1 faces, boundary edges of
    degree 1 and interior edges of degree 2, vertex links that are single
    cycles (internal) or single paths between boundary neighbors, a
    connected face-adjacency graph, and Euler characteristic 1.  Malformed
    input yields False rather than an error.
    """
    try:
        fs = {tuple(sorted(f)) for f in faces}
        bnd = tuple(boundary)
    except (TypeError, ValueError):
        return False
    if len(bnd) != 3 or len(set(bnd)) != 3:
        return False
    if not fs or any(len(f) != 3 or len(set(f)) != 3 for f in fs):
        return False
    if len(fs) % 2 == 0:
        return False

    verts = {v for f in fs for v in f}
    if not set(bnd) <= verts:
        return False
    k = len(verts) - 3
    if len(fs) != 2 * k + 1:
        return False

    deg: dict[tuple[int, int], int] = {}
    for f in fs:
        for e in ((f[0], f[1]), (f[0], f[2]), (f[1], f[2])):
            deg[e] = deg.get(e, 0) + 1
    bedges = {_pair(bnd[0], bnd[1]), _pair(bnd[0], bnd[2]), _pair(bnd[1], bnd[2])}
    for e, d in deg.items():
        if d > 2 or (d == 1) != (e in bedges):
            return False
    if not bedges <= deg.keys():
        return False

    # Vertex links: collect, per vertex, the opposite edge of each incident face.
    link: dict[int, list[tuple[int, int]]] = {v: [] for v in verts}
    for f in fs:
        link[f[0]].append((f[1], f[2]))
        link[f[1]].append((f[0], f[2]))
        link[f[2]].append((f[0], f[1]))
    for v, ledges in link.items():
        ldeg: dict[int, int] = {}
        for a, b in ledges:
            ldeg[a] = ldeg.get(a, 0) + 1
            ldeg[b] = ldeg.get(b, 0) + 1
        if v in bnd:
            others = [u for u in bnd if u != v]
            ends = [u for u, d in ldeg.items() if d == 1]
            if sorted(ends) != sorted(others):
                return False
            if any(d > 2 for d in ldeg.values()):
                return False
        else:
            if any(d != 2 for d in ldeg.values()):
                return False
        if not _connected_graph(list(ldeg.keys()), ledges):
            return False

    # Face adjacency connectivity.
    by_edge: dict[tuple[int, int], list[Face]] = {}
    for f in fs:
        for e in ((f[0], f[1]), (f[0], f[2]), (f[1], f[2])):
            by_edge.setdefault(e, []).append(f)
    adj = {f: [] for f in fs}
    for fl in by_edge.values():
        if len(fl) == 2:
            adj[fl[0]].append(fl[1])
            adj[fl[1]].append(fl[0])
    start = next(iter(fs))
    seen = {start}
    stack = [start]
    while stack:
        for g in adj[stack.pop()]:
            if g not in seen:
                seen.add(g)
                stack.append(g)
    if len(seen) != len(fs):
        return False

    return len(verts) - len(deg) + len(fs) == 1


def _connected_graph(nodes: list[int], edges: list[tuple[int, int]]) -> bool:
    if not nodes:
        return False
    nbr: dict[int, list[int]] = {n: [] for n in nodes}
    for a, b in edges:
        nbr[a].append(b)
        nbr[b].append(a)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        for u in nbr[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(nodes)


# ---------------------------------------------------------------------------
# Missing faces and density
# ---------------------------------------------------------------------------

def missing_faces(tri: DiskTriangulation) -> list[MissingFace]:
    """All missing faces of the triangulation with their densities.

    A triple qualifies when its three edges are present, it is not a face,
    and it is not the boundary triple.  The density is computed purely
    combinatorially: cutting the face-adjacency graph along the triple's
    interior edges separates the disk into the inside and the outside of
    the triple, and the inside is itself a triangulated disk with
    density = (faces - 1) / 2 internal vertices.
    """
    faces = tri.faces
    adj: dict[int, set[int]] = {}
    for f in faces:
        adj.setdefault(f[0], set()).update((f[1], f[2]))
        adj.setdefault(f[1], set()).update((f[0], f[2]))
        adj.setdefault(f[2], set()).update((f[0], f[1]))

    bnd_triple = tuple(sorted(tri.boundary))
    by_edge: dict[tuple[int, int], list[Face]] = {}
    for f in faces:
        for e in ((f[0], f[1]), (f[0], f[2]), (f[1], f[2])):
            by_edge.setdefault(e, []).append(f)

    out: list[MissingFace] = []
    for u in sorted(adj):
        for v in sorted(w for w in adj[u] if w > u):
            for w in sorted(x for x in adj[u] & adj[v] if x > v):
                triple = (u, v, w)
                if triple == bnd_triple or triple in faces:
                    continue
                interior = _triple_interior(tri, triple, by_edge)
                out.append(MissingFace(triple, len(interior), frozenset(interior)))
    return out


def _triple_interior(tri: DiskTriangulation, triple: Face,
                     by_edge: dict[tuple[int, int], list[Face]]) -> set[int]:
    """Vertices strictly inside the 3-cycle spanned by `triple`."""
    cut = {e for e in ((triple[0], triple[1]), (triple[0], triple[2]),
                       (triple[1], triple[2])) if len(by_edge[e]) == 2}
    comp: dict[Face, int] = {}
    ncomp = 0
    for f in tri.faces:
        if f in comp:
            continue
        comp[f] = ncomp
        stack = [f]
        while stack:
            g = stack.pop()
            for e in ((g[0], g[1]), (g[0], g[2]), (g[1], g[2])):
                if e in cut:
                    continue
                for h in by_edge[e]:
                    if h not in comp:
                        comp[h] = ncomp
                        stack.append(h)
        ncomp += 1
    assert ncomp == 2, f"cutting along {triple} left {ncomp} components"

    # The outside is the component holding the faces attached to the
    # disk-boundary edges that are not edges of the triple.
    b = tri.boundary
    anchors = set()
    for e in (_pair(b[0], b[1]), _pair(b[0], b[2]), _pair(b[1], b[2])):
        if e not in cut and not set(e) <= set(triple):
            anchors.add(comp[by_edge[e][0]])
    assert len(anchors) == 1, f"boundary anchors split across components for {triple}"
    outside = anchors.pop()

    inside_faces = [f for f, c in comp.items() if c != outside]
    interior = {v for f in inside_faces for v in f} - set(triple)
    assert len(inside_faces) == 2 * len(interior) + 1
    return interior


def max_missing_density(tri: DiskTriangulation) -> int:
    """Largest missing-face density, or -1 when the triangulation is simple."""
    return max((mf.density for mf in missing_faces(tri)), default=-1)


def is_l_simple(tri: DiskTriangulation, l: int) -> bool:
    """True iff every missing face has density at most l (vacuously true if none)."""
    if l < 0:
        raise ValueError(f"l must be nonnegative, got {l}")
    return max_missing_density(tri) <= l


# ---------------------------------------------------------------------------
# Census statistics (computed on shapes, scaled by k!)
# ---------------------------------------------------------------------------

def _shape_triangulation(shape: frozenset[Face], k: int) -> DiskTriangulation:
    return DiskTriangulation((1, 2, 3), shape, k)


def count_l_simple(k: int, l: int, limit: int = ENUMERATION_LIMIT) -> int:
    """Number of census members at k whose missing faces all have density <= l.

    l-simplicity is invariant under interior relabeling, so the count is
    taken over shapes and scaled by k!.
    """
    _check_limit(k, limit)
    if l < 0:
        raise ValueError(f"l must be nonnegative, got {l}")
    hits = sum(1 for s in census_shapes(k)
               if max_missing_density(_shape_triangulation(s, k)) <= l)
    return hits * factorial(k)


def count_j_dense(k: int, j: int, method: str = "auto",
                  limit: int = ENUMERATION_LIMIT) -> int:
    """Number of census members at k containing a missing face of density j.

    The closed form C(k,i) * t_i * t_j * (2i+1) with i = k-j requires
    j > k/2, where the dense missing face is unique; the enumeration path
    works for any 0 <= j <= k-1.  The two agree exactly for j > k/2.
    """
    _validate_density_args(k, j)
    if method == "formula" or (method == "auto" and 2 * j > k):
        if 2 * j <= k:
            raise ValueError(f"closed form needs j > k/2, got j={j}, k={k}")
        i = k - j
        return comb(k, i) * count_triangulations(i) * count_triangulations(j) * (2 * i + 1)
    _check_limit(k, limit)
    hits = sum(1 for s in census_shapes(k)
               if any(mf.density == j for mf in missing_faces(_shape_triangulation(s, k))))
    return hits * factorial(k)


def count_j_nested(k: int, j: int, method: str = "auto",
                   limit: int = ENUMERATION_LIMIT) -> int:
    """Number of j-dense census members whose triangulation inside the
    density-j missing face is itself (j-1)-dense.

    Closed form C(k,i) * t_i * (3j * t_{j-1}) * (2i+1) for j > k/2 and
    j >= 2, where 3j * t_{j-1} counts the (j-1)-dense inner fillings.
    """
    _validate_density_args(k, j)
    if method == "formula" or (method == "auto" and 2 * j > k):
        if 2 * j <= k or j < 2:
            raise ValueError(f"closed form needs j > k/2 and j >= 2, got j={j}, k={k}")
        i = k - j
        inner = 3 * j * count_triangulations(j - 1)
        return comb(k, i) * count_triangulations(i) * inner * (2 * i + 1)
    _check_limit(k, limit)
    hits = sum(1 for s in census_shapes(k) if _is_j_nested(_shape_triangulation(s, k), j))
    return hits * factorial(k)


def _is_j_nested(tri: DiskTriangulation, j: int) -> bool:
    for mf in missing_faces(tri):
        if mf.density != j:
            continue
        inner = _interior_triangulation(tri, mf)
        if any(im.density == j - 1 for im in missing_faces(inner)):
            return True
    return False


def _interior_triangulation(tri: DiskTriangulation, mf: MissingFace) -> DiskTriangulation:
    """The triangulated disk bounded by a missing face, as its own object."""
    keep = set(mf.interior) | set(mf.triple)
    faces = frozenset(f for f in tri.faces if set(f) <= keep)
    return DiskTriangulation(mf.triple, faces, mf.density)


def _validate_density_args(k: int, j: int) -> None:
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if not 0 <= j <= k - 1:
        raise ValueError(f"density j must satisfy 0 <= j <= k-1, got j={j}, k={k}")
