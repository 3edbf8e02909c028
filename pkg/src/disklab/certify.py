"""Triangulated-disk search and simple-connectivity certification.

A cycle is certified when it bounds a triangulated disk that is a
subcomplex of the given 2-complex.  The search runs the same root-edge
polygon decomposition as the census enumerator, but expands only apices w
for which the face {root edge, w} is present in the complex: the state is
a stack of pending sub-polygons, the set of vertices already used by the
partial disk, and the remaining budget of fresh internal vertices.  Failed
states are memoized by a canonical digest (pending polygons, used set,
budget), which collapses the reconvergent sub-searches.

Since the 1-skeleton is complete, certifying every 3-cycle is sufficient
for simple connectivity, so the report can say YES; a cycle without a disk
up to the internal-vertex cap only ever yields UNKNOWN, never NO.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Iterable, Sequence

from .complexes import Complex2, triple_unrank
from .triangulations import DiskTriangulation, Face, _pair, is_disk_triangulation

DEFAULT_STATE_BUDGET = 10**6

Region = tuple[tuple, frozenset]  # (cycle rooted at its lex-smallest edge, blocked pairs)


class SearchBudgetExceeded(RuntimeError):
    """The per-cycle state cap was hit before the search finished."""

    def __init__(self, states: int, probes: int):
        super().__init__(f"search aborted after {states} states")
        self.states = states
        self.probes = probes


class Status(Enum):
    FOUND = "found"
    ABSENT = "absent"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class DiskCertificate:
    """A triangulated disk bounding `cycle`, plus search-effort counters."""

    cycle: tuple[int, int, int]
    disk: DiskTriangulation
    internal_used: int
    states: int
    probes: int


@dataclass(frozen=True)
class CycleOutcome:
    cycle: tuple[int, int, int]
    status: Status
    internal_used: int | None
    states: int
    probes: int


@dataclass(frozen=True)
class CertReport:
    """Outcome of certifying every requested cycle of a complex."""

    verdict: str  # "YES" or "UNKNOWN"
    outcomes: tuple[CycleOutcome, ...]
    max_internal: int
    state_budget: int

    @property
    def exhausted_count(self) -> int:
        return sum(1 for o in self.outcomes if o.status is Status.EXHAUSTED)


def default_max_internal(n: int) -> int:
    """Internal-vertex cap min(8, ceil(log^2 n)) used when none is given."""
    return min(8, math.ceil(math.log(n) ** 2))


# ---------------------------------------------------------------------------
# Core search
# ---------------------------------------------------------------------------

def _canonical_region(cycle: Sequence[int]) -> tuple:
    """Rotate the polygon so its lexicographically smallest edge comes first."""
    m = len(cycle)
    best = None
    for i in range(m):
        a, b = cycle[i], cycle[(i + 1) % m]
        key = _pair(a, b)
        if best is None or key < best[0]:
            best = (key, i, a < b)
    _, i, forward = best
    if forward:
        rot = tuple(cycle[(i + j) % m] for j in range(m))
    else:
        rot = tuple(cycle[(i + 1 - j) % m] for j in range(m))
    return rot


_INF = 1 << 30


class _DiskSearch:
    """One search instance; holds the complex, counters, and the memo tables."""

    def __init__(self, Y: Complex2, max_internal: int, state_budget: int | None,
                 count_all: bool = False):
        self.Y = Y
        self.max_internal = max_internal
        self.state_budget = state_budget
        self.count_all = count_all
        self.states = 0
        self.probes = 0
        self.memo: dict = {}
        self.gmemo: dict = {}

    def _tick(self) -> None:
        self.states += 1
        if self.state_budget is not None and self.states > self.state_budget:
            raise SearchBudgetExceeded(self.states, self.probes)

    def run(self, cycle: Sequence[int]):
        region = (_canonical_region(tuple(cycle)), frozenset())
        used = frozenset(cycle)
        if self.count_all:
            return self._count((region,), used, self.max_internal)
        return self._find((region,), used, self.max_internal, [])

    # -- relaxed lower bound ------------------------------------------------
    def _min_fresh(self, region: Region, cap: int) -> int:
        """Fewest fresh vertices that any triangulation of the region can use,
        ignoring collisions with vertices consumed elsewhere.  Values above
        cap are reported as infinity.  Admissible bound for pruning."""
        if cap < 0:
            return _INF
        key = (region, cap)
        hit = self.gmemo.get(key)
        if hit is not None:
            return hit
        self._tick()
        best = _INF
        for new_regions, _used, spent, _face in self._expansions(region, frozenset(), cap):
            need = spent
            for sub in new_regions:
                need += self._min_fresh(sub, cap - need)
                if need > cap:
                    break
            if need < best:
                best = need
                if best == 0:
                    break
        self.gmemo[key] = best
        return best

    def _prune(self, regions: tuple[Region, ...], budget: int) -> bool:
        need = 0
        for r in regions:
            need += self._min_fresh(r, budget - need)
            if need > budget:
                return True
        return False

    # -- existence search -------------------------------------------------
    def _find(self, regions: tuple[Region, ...], used: frozenset, budget: int,
              acc: list[Face]):
        if not regions:
            return list(acc)
        if self._prune(regions, budget):
            return None
        key = (frozenset(regions), used, budget)
        if key in self.memo:
            return None
        self._tick()
        head, rest = regions[-1], regions[:-1]
        found = None
        for new_regions, new_used, spent, face in self._expansions(head, used, budget):
            acc.append(face)
            found = self._find(rest + new_regions, new_used, budget - spent, acc)
            if found is not None:
                return found
            acc.pop()
        self.memo[key] = False
        return None

    # -- exhaustive count --------------------------------------------------
    def _count(self, regions: tuple[Region, ...], used: frozenset, budget: int) -> int:
        if not regions:
            return 1
        if self._prune(regions, budget):
            return 0
        key = (frozenset(regions), used, budget)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self._tick()
        head, rest = regions[-1], regions[:-1]
        total = 0
        for new_regions, new_used, spent, _face in self._expansions(head, used, budget):
            total += self._count(rest + new_regions, new_used, budget - spent)
        self.memo[key] = total
        return total

    # -- one region-expansion step ----------------------------------------
    def _expansions(self, region: Region, used: frozenset, budget: int):
        """Yield (new regions, new used set, fresh spent, face) for every
        admissible apex of the region's root edge."""
        cycle, blocked = region
        m = len(cycle)
        v0, v1 = cycle[0], cycle[1]
        pos = {v: j for j, v in enumerate(cycle)}
        for w in self.Y.faces_on_edge((v0, v1)):
            self.probes += 1
            face: Face = tuple(sorted((v0, v1, w)))  # type: ignore[assignment]
            j = pos.get(w)
            if j is None:
                if w in used or budget < 1:
                    continue
                new_cycle = (v0, w, v1) + cycle[2:]
                reg = (_canonical_region(new_cycle), blocked | {_pair(v0, v1)})
                yield (reg,), used | {w}, 1, face
                continue
            left_exists = j >= 3
            right_exists = j <= m - 2
            if left_exists and _pair(v1, w) in blocked:
                continue
            if right_exists and _pair(v0, w) in blocked:
                continue
            new_regions = []
            if left_exists:
                left = (w,) + cycle[1:j]
                vs = set(left)
                new_regions.append((_canonical_region(left),
                                    frozenset(p for p in blocked if p[0] in vs and p[1] in vs)))
            if right_exists:
                right = (v0, w) + cycle[j + 1:]
                vs = set(right)
                new_regions.append((_canonical_region(right),
                                    frozenset(p for p in blocked if p[0] in vs and p[1] in vs)))
            yield tuple(new_regions), used, 0, face


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def _validate_cycle(Y: Complex2, cycle: Sequence[int]) -> tuple[int, int, int]:
    c = tuple(cycle)
    if len(c) != 3 or len(set(c)) != 3 or not all(1 <= v <= Y.n for v in c):
        raise ValueError(f"cycle must be three distinct vertices in 1..{Y.n}, got {c!r}")
    return c  # type: ignore[return-value]


def _search(Y: Complex2, cycle: Sequence[int], max_internal: int,
            state_budget: int | None) -> tuple[CycleOutcome, DiskCertificate | None]:
    c = _validate_cycle(Y, cycle)
    if max_internal < 0:
        raise ValueError("max_internal must be nonnegative")
    search = _DiskSearch(Y, max_internal, state_budget)
    try:
        faces = search.run(c)
    except SearchBudgetExceeded as exc:
        return CycleOutcome(c, Status.EXHAUSTED, None, exc.states, exc.probes), None
    if faces is None:
        return CycleOutcome(c, Status.ABSENT, None, search.states, search.probes), None
    disk = DiskTriangulation.build(faces, c, validate=False)
    cert = DiskCertificate(c, disk, (len(disk.faces) - 1) // 2, search.states, search.probes)
    _validate_certificate(Y, cert, max_internal)
    return CycleOutcome(c, Status.FOUND, cert.internal_used, search.states, search.probes), cert


def search_disk(Y: Complex2, cycle: Sequence[int], max_internal: int,
                state_budget: int | None = DEFAULT_STATE_BUDGET) -> CycleOutcome:
    """Search for a triangulated disk bounding the cycle, up to max_internal
    fresh vertices; never converts a state-budget timeout into absence."""
    return _search(Y, cycle, max_internal, state_budget)[0]


def find_triangulated_disk(Y: Complex2, cycle: Sequence[int], max_internal: int,
                           state_budget: int | None = DEFAULT_STATE_BUDGET,
                           ) -> DiskCertificate | None:
    """Return a validated certificate for the cycle, or None when no disk
    with at most max_internal internal vertices exists in Y.

    Raises SearchBudgetExceeded when the state cap is hit, so a timeout is
    never reported as absence.  Every returned certificate is re-validated
    structurally and for face containment before being emitted.
    """
    outcome, cert = _search(Y, cycle, max_internal, state_budget)
    if outcome.status is Status.EXHAUSTED:
        raise SearchBudgetExceeded(outcome.states, outcome.probes)
    return cert


def _validate_certificate(Y: Complex2, cert: DiskCertificate, max_internal: int) -> None:
    disk = cert.disk
    if not is_disk_triangulation(disk.faces, cert.cycle):
        raise AssertionError(f"emitted faces are not a disk over {cert.cycle}")
    if not disk.faces <= Y.faces:
        raise AssertionError("certificate uses faces absent from the complex")
    if cert.internal_used > max_internal:
        raise AssertionError("certificate exceeds the internal-vertex cap")


def count_triangulated_disks(Y: Complex2, cycle: Sequence[int], max_internal: int,
                             state_budget: int | None = None) -> int:
    """Exact number of triangulated disks in Y bounding the cycle with at
    most max_internal internal vertices (each face set counted once)."""
    c = _validate_cycle(Y, cycle)
    search = _DiskSearch(Y, max_internal, state_budget, count_all=True)
    return search.run(c)


def certify_simply_connected(Y: Complex2, max_internal: int | None = None,
                             state_budget: int | None = DEFAULT_STATE_BUDGET,
                             cycles: Iterable[Sequence[int]] | None = None) -> CertReport:
    """Certify every 3-cycle (or the given subset); YES only when each one
    bounds a triangulated disk in Y.  Budget exhaustion propagates as
    UNKNOWN, never as a claim of absence."""
    K = default_max_internal(Y.n) if max_internal is None else max_internal
    if cycles is None:
        cycles = (triple_unrank(r) for r in range(comb(Y.n, 3)))
    outcomes = tuple(search_disk(Y, cyc, K, state_budget) for cyc in cycles)
    verdict = "YES" if all(o.status is Status.FOUND for o in outcomes) else "UNKNOWN"
    return CertReport(verdict, tuple(outcomes), K, state_budget or 0)


@dataclass(frozen=True)
class FractionReport:
    """Per-cycle outcomes of a sampled triangulation survey."""

    fraction: float
    outcomes: tuple[CycleOutcome, ...]
    exhausted_count: int
    mean_internal_used: float


def triangulated_fraction(Y: Complex2, max_internal: int,
                          state_budget: int | None = DEFAULT_STATE_BUDGET,
                          cycles: Iterable[Sequence[int]] | None = None,
                          samples: int | None = None,
                          cycle_seed: int = 0) -> FractionReport:
    """Fraction of (all or sampled) 3-cycles that bound a triangulated disk.

    With samples=m, m distinct cycles are drawn by the seeded sampler;
    exhausted searches count as not triangulated and are tallied apart.
    """
    if cycles is None:
        total = comb(Y.n, 3)
        if samples is None or samples >= total:
            ranks: Iterable[int] = range(total)
        else:
            import random
            ranks = sorted(random.Random(cycle_seed).sample(range(total), samples))
        cycles = [triple_unrank(r) for r in ranks]
    else:
        cycles = [tuple(c) for c in cycles]
    outcomes = tuple(search_disk(Y, c, max_internal, state_budget) for c in cycles)
    found = [o for o in outcomes if o.status is Status.FOUND]
    frac = len(found) / len(outcomes) if outcomes else 0.0
    mean_k = (sum(o.internal_used for o in found) / len(found)) if found else float("nan")
    return FractionReport(frac, outcomes,
                          sum(1 for o in outcomes if o.status is Status.EXHAUSTED),
                          mean_k)
