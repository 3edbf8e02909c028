"""Random 2-complexes on n vertices with a complete 1-skeleton.

Each of the C(n,3) vertex triples is an independent candidate face.
Sampling is stateless and counter-based: the colexicographic rank of a
triple is fed through the splitmix64 avalanche sequence seeded by the run
seed, and the face is included iff the mixed value falls below the
threshold floor(p * 2^64).  This makes generation order-independent,
bit-identical across platforms, and monotone in p for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Sequence, TextIO

Face = tuple[int, int, int]

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(seed: int, index: int) -> int:
    """Value at `index` of the splitmix64 stream started at `seed`."""
    z = (seed + (index + 1) * _GOLDEN) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def triple_rank(a: int, b: int, c: int) -> int:
    """Colexicographic rank of the ascending triple (a, b, c), 1-based labels."""
    return comb(c - 1, 3) + comb(b - 1, 2) + (a - 1)


def triple_unrank(rank: int) -> Face:
    """Inverse of triple_rank."""
    c = 3
    while comb(c, 3) <= rank:
        c += 1
    rank -= comb(c - 1, 3)
    b = 2
    while comb(b, 2) <= rank:
        b += 1
    rank -= comb(b - 1, 2)
    return (rank + 1, b, c)


@dataclass(frozen=True)
class Complex2:
    """A 2-complex with complete 1-skeleton, given by its set of 2-faces."""

    n: int
    faces: frozenset[Face]
    seed: int | None = None
    p: Fraction | None = None
    _edge_index: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_faces(cls, n: int, faces: Iterable[Sequence[int]],
                   seed: int | None = None, p: Fraction | None = None) -> "Complex2":
        norm = set()
        for f in faces:
            t = tuple(sorted(f))
            if len(t) != 3 or len(set(t)) != 3:
                raise ValueError(f"not a vertex triple: {f!r}")
            if not (1 <= t[0] and t[2] <= n):
                raise ValueError(f"face {t} out of range 1..{n}")
            norm.add(t)
        return cls(n, frozenset(norm), seed, p)

    def contains_face(self, triple: Sequence[int]) -> bool:
        return tuple(sorted(triple)) in self.faces

    def faces_on_edge(self, edge: Sequence[int]) -> list[int]:
        """Ascending list of apices w with {u, v, w} a face of the complex."""
        u, v = sorted(edge)
        idx = self._edge_index
        if not idx:
            for a, b, c in self.faces:
                idx.setdefault((a, b), []).append(c)
                idx.setdefault((a, c), []).append(b)
                idx.setdefault((b, c), []).append(a)
            for lst in idx.values():
                lst.sort()
        return idx.get((u, v), [])


def sample(n: int, p, seed: int) -> Complex2:
    """Draw Y(n, p): every triple included independently with probability p.

    Fully determined by (n, p, seed).  Coupled in p: for the same seed,
    p <= p' implies faces(p) is a subset of faces(p').
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    pf = Fraction(p)
    if not 0 <= pf <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    threshold = (pf.numerator << 64) // pf.denominator
    faces = frozenset(triple_unrank(r) for r in range(comb(n, 3))
                      if splitmix64(seed, r) < threshold)
    return Complex2(n, faces, seed=seed, p=pf)


# ---------------------------------------------------------------------------
# Text format: line 1 "n N"; then "a b c" per face; "#" starts a comment.
# ---------------------------------------------------------------------------

def write_complex(Y: Complex2, fh: TextIO) -> None:
    fh.write(f"n {Y.n}\n")
    for a, b, c in sorted(Y.faces, key=lambda f: triple_rank(*f)):
        fh.write(f"{a} {b} {c}\n")


def read_complex(fh: TextIO) -> Complex2:
    """Parse the text format, normalizing face triples to ascending order."""
    n = None
    faces: list[Face] = []
    for lineno, raw in enumerate(fh, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "n":
                raise ValueError(f"line {lineno}: expected header 'n <N>', got {raw!r}")
            n = int(parts[1])
            if n < 3:
                raise ValueError(f"line {lineno}: need n >= 3, got {n}")
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected three vertex labels, got {raw!r}")
        try:
            t = tuple(sorted(int(x) for x in parts))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        if len(set(t)) != 3:
            raise ValueError(f"line {lineno}: repeated vertex in face {t}")
        if t[0] < 1 or t[2] > n:
            raise ValueError(f"line {lineno}: face {t} out of range 1..{n}")
        faces.append(t)
    if n is None:
        raise ValueError("missing 'n <N>' header line")
    return Complex2(n, frozenset(faces))


def save_complex(Y: Complex2, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        write_complex(Y, fh)


def load_complex(path) -> Complex2:
    with open(path, encoding="ascii") as fh:
        return read_complex(fh)


def all_cycles(n: int) -> Iterator[Face]:
    """All 3-cycles of the complete 1-skeleton, in colex order."""
    for r in range(comb(n, 3)):
        yield triple_unrank(r)
