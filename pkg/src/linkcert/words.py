"""Cyclic binary words coding periodic orbits of the two-ribbon templates.

A periodic orbit is represented by one period of its bi-infinite code, a
nonempty string over ``{a, b}``.  Orbit identity is rotation invariant, so most
functions work on the canonical (lexicographically least) rotation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from .errors import InvalidSurfaceError, InvalidWordError, UnsupportedSurfaceError

ALPHABET = "ab"


@dataclass(frozen=True, order=True)
class SurfaceSpec:
    """Cone orders ``p <= q <= r`` of the orbisphere."""

    p: int
    q: int
    r: int

    def __post_init__(self):
        for v in (self.p, self.q, self.r):
            if not isinstance(v, int) or isinstance(v, bool) or v < 2:
                raise InvalidSurfaceError(f"cone orders must be integers >= 2, got {self.triple}")
        if not self.p <= self.q <= self.r:
            raise InvalidSurfaceError(f"cone orders must be sorted, got {self.triple}")
        if Fraction(1, self.p) + Fraction(1, self.q) + Fraction(1, self.r) >= 1:
            raise InvalidSurfaceError(f"{self.triple} is not hyperbolic (1/p+1/q+1/r >= 1)")

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    @classmethod
    def parse(cls, text: str) -> "SurfaceSpec":
        try:
            values = sorted(int(t) for t in text.replace(" ", "").split(","))
        except ValueError:
            raise InvalidSurfaceError(f"cannot parse surface {text!r}; expected p,q,r") from None
        if len(values) != 3:
            raise InvalidSurfaceError(f"expected three cone orders, got {text!r}")
        return cls(*values)

    @property
    def coded(self) -> bool:
        return self.triple in CODED_SURFACES

    def __str__(self):
        return f"{self.p},{self.q},{self.r}"


CODED_SURFACES = {(2, 3, 7), (3, 3, 4)}
S237 = SurfaceSpec(2, 3, 7)
S334 = SurfaceSpec(3, 3, 4)


def require_coded(s: SurfaceSpec) -> None:
    if not s.coded:
        raise UnsupportedSurfaceError(
            f"symbolic coding is only available for (2,3,7) and (3,3,4), not {s.triple}")


class Block(NamedTuple):
    """Block x^i y^j on (2,3,7), a^i b^j on (3,3,4); ``i, j`` in {1, 2}."""

    i: int
    j: int

    def letters(self, s: SurfaceSpec) -> str:
        if s.triple == (2, 3, 7):
            return "ab" * self.i + "abb" * self.j
        return "a" * self.i + "b" * self.j

    def label(self, s: SurfaceSpec) -> str:
        u, v = ("x", "y") if s.triple == (2, 3, 7) else ("a", "b")
        sup = lambda k: "" if k == 1 else f"^{k}"
        return f"{u}{sup(self.i)}{v}{sup(self.j)}"


def validate(w: str) -> str:
    if not isinstance(w, str) or not w:
        raise InvalidWordError("empty word")
    if set(w) - set(ALPHABET):
        raise InvalidWordError(f"word {w!r} has letters outside {{a,b}}")
    return w


def rotations(w: str) -> Iterator[str]:
    for i in range(len(w)):
        yield w[i:] + w[:i]


def canonicalize(w: str) -> str:
    validate(w)
    return min(rotations(w))


def is_primitive(w: str) -> bool:
    n = len(w)
    return (w + w).find(w, 1) == n


def letter_counts(w: str) -> tuple[int, int]:
    validate(w)
    return w.count("a"), w.count("b")


def has_cyclic_factor(w: str, factor: str) -> bool:
    # enough copies to see every window of length len(factor) starting in one period
    n = len(w)
    span = n + len(factor) - 1
    return factor in (w * (span // n + 1))[:span]


def to_syllables(w: str) -> str | None:
    """Rewrite a (2,3,7)-style word over x=ab, y=abb; None when impossible."""
    if "a" not in w:
        return None
    k = w.index("a")
    w = w[k:] + w[:k]
    out = []
    pos = 0
    for m in re.finditer("a(b+)", w):
        if m.start() != pos or len(m.group(1)) > 2:
            return None
        out.append("x" if len(m.group(1)) == 1 else "y")
        pos = m.end()
    if pos != len(w):
        return None
    return "".join(out)


def from_syllables(z: str) -> str:
    return "".join("ab" if c == "x" else "abb" for c in z)


_FORBIDDEN_334 = ("aaa", "bbb", "abbabb", "aabaab")


def is_admissible(w: str, s: SurfaceSpec) -> bool:
    validate(w)
    require_coded(s)
    if "a" not in w or "b" not in w:
        return False
    if s.triple == (2, 3, 7):
        if has_cyclic_factor(w, "aa") or has_cyclic_factor(w, "bbb"):
            return False
        z = to_syllables(w)
        if z is None:
            return False
        return not (has_cyclic_factor(z, "xxx") or has_cyclic_factor(z, "yyy"))
    return not any(has_cyclic_factor(w, f) for f in _FORBIDDEN_334)


def lyndon_words(max_len: int, alphabet: str = ALPHABET) -> Iterator[str]:
    """Lyndon words of length <= max_len in lexicographic order (Duval)."""
    k = len(alphabet)
    w = [-1]
    while w:
        w[-1] += 1
        yield "".join(alphabet[i] for i in w)
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()


# Distinct codes known to describe a single periodic orbit of the flow.  The
# (2,3,7) entries are the x^2y / xy^2 codes of the height geodesic; the (3,3,4)
# entries are the analogous coincidences for the figure-eight geodesic.
CODE_COINCIDENCES = {
    (2, 3, 7): {"abababb": "ababb", "ababbabb": "ababb"},
    (3, 3, 4): {"aabab": "ab", "ababb": "ab"},
}


def orbit_identity(w: str, s: SurfaceSpec) -> str:
    c = canonicalize(w)
    return CODE_COINCIDENCES.get(s.triple, {}).get(c, c)


def enumerate_orbits(s: SurfaceSpec, max_len: int) -> list[str]:
    """Canonical primitive admissible codes up to ``max_len``, by (length, lex)."""
    require_coded(s)
    if max_len < 1:
        raise ValueError("max_len must be positive")
    found = [w for w in lyndon_words(max_len) if is_admissible(w, s)]
    found.sort(key=lambda w: (len(w), w))
    return found


def _cut_after_runs(seq: str, second: str) -> list[str]:
    """Split a cyclic sequence into blocks first^i second^j, cutting after each
    maximal run of ``second``."""
    n = len(seq)
    start = next(k for k in range(n) if seq[k] != second and seq[k - 1] == second)
    seq = seq[start:] + seq[:start]
    return re.findall(f"[^{second}]+{second}+", seq)


def block_decomposition(w: str, s: SurfaceSpec) -> list[Block]:
    if not is_admissible(w, s):
        raise InvalidWordError(f"{w!r} is not admissible for {s.triple}")
    if s.triple == (2, 3, 7):
        pieces = _cut_after_runs(to_syllables(w), "y")
        blocks = [Block(p.count("x"), p.count("y")) for p in pieces]
    else:
        pieces = _cut_after_runs(w, "b")
        blocks = [Block(p.count("a"), p.count("b")) for p in pieces]
    # start at the block rotation whose letters are lexicographically least
    best = min(range(len(blocks)),
               key=lambda k: "".join(b.letters(s) for b in blocks[k:] + blocks[:k]))
    return blocks[best:] + blocks[:best]
