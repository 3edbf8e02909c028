"""Statistics of face sets inside a disk triangulation.

For a nonempty set S of faces, the complex X_S consists of S, every edge
and vertex contained in a face of S, and the cycle [123] (vertices 1,2,3
and their three edges).  The module computes edge degrees, the vertex
classification (fixed / boundary / internal), Betti numbers, and the
half-integer statistic

    phi = 3 - e0 - e1/2 - beta0 + beta1,

which is stored exactly as the integer 2*phi.  beta1 is obtained
homologically as beta0 - chi(X_S); this is valid for any S contained in a
disk triangulation, where the second homology vanishes.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Sequence

from .triangulations import (
    ENUMERATION_LIMIT,
    DiskTriangulation,
    Face,
    _check_limit,
    _face,
    _pair,
    census_shapes,
    enumerate_triangulations,
    max_missing_density,
)

_CYCLE_VERTICES = (1, 2, 3)
_CYCLE_EDGES = ((1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class FaceSetComplex:
    """The complex X_S of a face set S, with its derived statistics."""

    faces: frozenset[Face]
    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]
    edge_degrees: dict[tuple[int, int], int] = field(compare=False)
    e0: int = 0
    e1: int = 0
    e2: int = 0
    beta0: int = 1
    beta1: int = 0


@dataclass(frozen=True)
class ParamTuple:
    """Vertex-class counts and doubled phi of a face set inside a parent."""

    v_boundary: int
    v_internal: int
    v_outer: int
    two_phi: int

    @property
    def phi(self) -> Fraction:
        return Fraction(self.two_phi, 2)


def build_face_set_complex(S: Iterable[Sequence[int]]) -> FaceSetComplex:
    """Assemble X_S and its statistics from a nonempty set of faces.

    Rejects triples with repeated vertices and edge degrees above 2 (such a
    set cannot lie inside a disk triangulation).
    """
    faces = set()
    for f in S:
        t = tuple(sorted(f))
        if len(t) != 3 or len(set(t)) != 3:
            raise ValueError(f"not a vertex triple: {f!r}")
        faces.add(t)
    if not faces:
        raise ValueError("face set must be nonempty")

    degrees: dict[tuple[int, int], int] = {e: 0 for e in _CYCLE_EDGES}
    for a, b, c in faces:
        for e in ((a, b), (a, c), (b, c)):
            degrees[e] = degrees.get(e, 0) + 1
    if any(d > 2 for d in degrees.values()):
        bad = next(e for e, d in degrees.items() if d > 2)
        raise ValueError(f"edge {bad} has degree > 2; not a sub-face-set of a disk")

    vertices = {v for f in faces for v in f} | set(_CYCLE_VERTICES)
    per_degree = Counter(degrees.values())
    beta0 = _component_count(vertices, degrees.keys())
    chi = len(vertices) - len(degrees) + len(faces)
    return FaceSetComplex(
        faces=frozenset(faces),
        vertices=frozenset(vertices),
        edges=frozenset(degrees),
        edge_degrees=degrees,
        e0=per_degree.get(0, 0),
        e1=per_degree.get(1, 0),
        e2=per_degree.get(2, 0),
        beta0=beta0,
        beta1=beta0 - chi,
    )


def _component_count(vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> int:
    parent = {v: v for v in vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    n = len(parent)
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            n -= 1
    return n


def classify_vertices(X: FaceSetComplex) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """Split V(X_S) into (fixed, boundary, internal) vertex sets.

    Fixed is always {1,2,3}; boundary vertices are the other vertices lying
    on at least one degree-1 edge; the rest are internal.
    """
    fixed = frozenset(_CYCLE_VERTICES)
    on_degree1 = {v for e, d in X.edge_degrees.items() if d == 1 for v in e}
    boundary = frozenset(on_degree1 - fixed)
    internal = X.vertices - fixed - boundary
    return fixed, boundary, frozenset(internal)


def phi(X: FaceSetComplex) -> Fraction:
    """The half-integer 3 - e0 - e1/2 - beta0 + beta1, exactly."""
    return Fraction(two_phi(X), 2)


def two_phi(X: FaceSetComplex) -> int:
    return 2 * (3 - X.e0 - X.beta0 + X.beta1) - X.e1


def param_tuple(S: Iterable[Sequence[int]], parent_k: int) -> ParamTuple:
    """The tuple (v_boundary, v_internal, v_outer, phi) of S inside a parent
    triangulation with parent_k internal vertices."""
    X = build_face_set_complex(S)
    _, boundary, internal = classify_vertices(X)
    v_outer = parent_k - len(boundary) - len(internal)
    if v_outer < 0:
        raise ValueError(
            f"parent_k={parent_k} too small: S already has "
            f"{len(boundary) + len(internal)} non-fixed vertices")
    return ParamTuple(len(boundary), len(internal), v_outer, two_phi(X))


# ---------------------------------------------------------------------------
# Relation checks against a witness parent
# ---------------------------------------------------------------------------

RELATION_NAMES = (
    "phi_dichotomy",
    "face_count_identity",
    "phi_boundary_bound",
    "betti_edge_bound",
    "euler_identity",
)

AUX_RELATION_NAMES = (
    "incidence_identity",
    "betti_positive",
)


@dataclass(frozen=True)
class RelationReport:
    """Pass/fail per relation for one face set inside one parent."""

    params: ParamTuple
    relations: dict[str, bool] = field(compare=False)

    @property
    def passed(self) -> bool:
        return all(self.relations.values())


def check_phi_euler_relations(S: Iterable[Sequence[int]],
                              parent: DiskTriangulation,
                              parent_max_density: int | None = None) -> RelationReport:
    """Evaluate the phi / Euler-characteristic relations for S inside parent.

    S must be a nonempty proper subset of the parent's faces.  The checked
    relations, in terms of k = parent.k:

      phi_dichotomy       phi <= -1/2, or phi = 0; in the phi = 0 case,
                          whenever every missing face of the parent has
                          density <= k/2, additionally v_b + v_i >= k/2
                          (equivalently v_outer <= k/2).
      face_count_identity |S| = 2 (v_b + v_i + phi)
      phi_boundary_bound  phi <= 1 - v_b / 6
      betti_edge_bound    3 beta1 <= 2 e0 + e1 - 3
      euler_identity      v_b + v_i + 3 - e0 - e1 - e2 + |S| = beta0 - beta1

    plus two auxiliary checks: 3|S| = e1 + 2 e2 and beta0, beta1 >= 1.
    parent_max_density can be supplied to avoid recomputing the parent's
    missing faces in bulk scans.
    """
    sfaces = frozenset(tuple(sorted(f)) for f in S)
    if not sfaces or not sfaces < parent.faces:
        raise ValueError("S must be a nonempty proper subset of the parent's faces")
    X = build_face_set_complex(sfaces)
    _, boundary, internal = classify_vertices(X)
    vb, vi = len(boundary), len(internal)
    k = parent.k
    tp = two_phi(X)
    params = ParamTuple(vb, vi, k - vb - vi, tp)

    if parent_max_density is None:
        parent_max_density = max_missing_density(parent)
    parent_half_simple = 2 * parent_max_density <= k

    dichotomy = tp <= -1 or (tp == 0 and (not parent_half_simple or 2 * (vb + vi) >= k))
    relations = {
        "phi_dichotomy": dichotomy,
        "face_count_identity": len(sfaces) == 2 * (vb + vi) + tp,
        "phi_boundary_bound": 3 * tp <= 6 - vb,
        "betti_edge_bound": 3 * X.beta1 <= 2 * X.e0 + X.e1 - 3,
        "euler_identity": vb + vi + 3 - X.e0 - X.e1 - X.e2 + len(sfaces) == X.beta0 - X.beta1,
        "incidence_identity": 3 * len(sfaces) == X.e1 + 2 * X.e2,
        "betti_positive": X.beta0 >= 1 and X.beta1 >= 1,
    }
    return RelationReport(params, relations)


def complement_components(S: Iterable[Sequence[int]], parent: DiskTriangulation) -> int:
    """Number of connected regions of the parent's disk not covered by S.

    Faces of parent - S are adjacent when they share an edge not belonging
    to X_S.  With [123] bounding the outer face, this count equals beta1 of
    X_S, which gives an embedding-based cross-check of the homological
    computation.
    """
    sfaces = frozenset(tuple(sorted(f)) for f in S)
    xs_edges = set(_CYCLE_EDGES)
    for a, b, c in sfaces:
        xs_edges.update(((a, b), (a, c), (b, c)))
    rest = [f for f in parent.faces if f not in sfaces]
    by_edge: dict[tuple[int, int], list[Face]] = {}
    for f in rest:
        for e in ((f[0], f[1]), (f[0], f[2]), (f[1], f[2])):
            if e not in xs_edges:
                by_edge.setdefault(e, []).append(f)
    edges = [(fl[0], fl[1]) for fl in by_edge.values() if len(fl) == 2]
    return _component_count(rest, edges) if rest else 0


def find_parent_triangulation(S: Iterable[Sequence[int]], k: int,
                              limit: int = ENUMERATION_LIMIT) -> DiskTriangulation | None:
    """Search for a census triangulation with k internal vertices containing S.

    Decides admissibility of S at level k by exhausting the census, which
    is exponential in k; intended for small k only.  Outer vertex labels
    are canonical (smallest unused), which is no loss of generality.
    """
    _check_limit(k, limit)
    sfaces = frozenset(tuple(sorted(f)) for f in S)
    used = {v for f in sfaces for v in f} - set(_CYCLE_VERTICES)
    if len(used) > k:
        return None
    extras = []
    cand = 4
    while len(used) + len(extras) < k:
        while cand in used or cand in _CYCLE_VERTICES:
            cand += 1
        extras.append(cand)
        cand += 1
    labels = sorted(used) + extras
    for tri in enumerate_triangulations(k, (1, 2, 3), labels, limit=limit):
        if sfaces <= tri.faces:
            return tri
    return None


# ---------------------------------------------------------------------------
# Bulk scans over the census
# ---------------------------------------------------------------------------

@dataclass
class SubsetScan:
    """Histogram of parameter tuples plus violation bookkeeping."""

    k: int
    exhaustive: bool
    checked: int = 0
    histogram: Counter = field(default_factory=Counter)
    violations: Counter = field(default_factory=Counter)
    failed_relations: Counter = field(default_factory=Counter)


def scan_census_subsets(k: int, samples: int | None = None, seed: int = 0,
                        limit: int = ENUMERATION_LIMIT) -> SubsetScan:
    """Evaluate the relation checks over subsets of census triangulations.

    With samples=None every nonempty proper subset of every census member
    is scanned; the scan runs over shapes (all statistics are invariant
    under interior relabeling) and histogram counts are scaled by k!.
    Otherwise `samples` (parent, subset) pairs are drawn uniformly and
    counted once each.
    """
    _check_limit(k, limit)
    shapes = census_shapes(k)
    scale = factorial(k) if samples is None else 1
    scan = SubsetScan(k=k, exhaustive=samples is None)

    def visit(shape: frozenset[Face], maxd: int, subset: frozenset[Face]) -> None:
        parent = DiskTriangulation((1, 2, 3), shape, k)
        rep = check_phi_euler_relations(subset, parent, parent_max_density=maxd)
        scan.checked += 1
        scan.histogram[rep.params] += scale
        if not rep.passed:
            scan.violations[rep.params] += scale
            for name, ok in rep.relations.items():
                if not ok:
                    scan.failed_relations[name] += scale

    if samples is None:
        for shape in shapes:
            maxd = max_missing_density(DiskTriangulation((1, 2, 3), shape, k))
            faces = sorted(shape)
            nf = len(faces)
            for mask in range(1, (1 << nf) - 1):
                subset = frozenset(faces[i] for i in range(nf) if mask >> i & 1)
                visit(shape, maxd, subset)
    else:
        rng = random.Random(seed)
        maxd_cache: dict[frozenset[Face], int] = {}
        nf = 2 * k + 1
        if nf < 2:
            raise ValueError("k=0 has no proper nonempty subsets")
        for _ in range(samples):
            shape = shapes[rng.randrange(len(shapes))]
            if shape not in maxd_cache:
                maxd_cache[shape] = max_missing_density(DiskTriangulation((1, 2, 3), shape, k))
            faces = sorted(shape)
            mask = rng.randrange(1, (1 << nf) - 1)
            subset = frozenset(faces[i] for i in range(nf) if mask >> i & 1)
            visit(shape, maxd_cache[shape], subset)
    return scan
