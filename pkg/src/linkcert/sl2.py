"""Positive words in L = [[1,0],[1,1]] and R = [[1,1],[0,1]].

Hyperbolic conjugacy classes of SL_2(Z) with positive trace correspond to
positive cyclic words containing both letters.  The canonical representative
of a cyclic word is its least rotation with L < R.
"""

from __future__ import annotations

from math import isqrt
from typing import NamedTuple

from .errors import InvalidMatrixError, NotHyperbolicError, ParameterRangeError


class IntMatrix2(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        a, b, c, d = self
        e, f, g, h = other
        return IntMatrix2(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def inverse(self) -> "IntMatrix2":
        if self.det != 1:
            raise InvalidMatrixError("only unimodular matrices are inverted")
        return IntMatrix2(self.d, -self.b, -self.c, self.a)


I = IntMatrix2(1, 0, 0, 1)
L = IntMatrix2(1, 0, 1, 1)
R = IntMatrix2(1, 1, 0, 1)
GENERATORS = {"L": L, "R": R}


def _validate(w: str) -> str:
    if set(w) - set("LR"):
        raise ParameterRangeError(f"LR word {w!r} has letters other than L and R")
    return w


def word_to_matrix(w: str) -> IntMatrix2:
    m = I
    for c in _validate(w):
        m = m @ GENERATORS[c]
    return m


def trace(w: str) -> int:
    return word_to_matrix(w).trace


def canonical_cyclic(w: str) -> str:
    _validate(w)
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


def cyclically_equal(u: str, v: str) -> bool:
    return len(u) == len(v) and canonical_cyclic(u) == canonical_cyclic(v)


def _necklaces(n: int):
    """Canonical binary necklaces of length n over L < R (including powers)."""
    if n == 0:
        return
    w = [0] * (n + 1)

    def gen(t, p):
        if t > n:
            if n % p == 0:
                yield "".join("LR"[x] for x in w[1:])
            return
        w[t] = w[t - p]
        yield from gen(t + 1, p)
        for j in range(w[t - p] + 1, 2):
            w[t] = j
            yield from gen(t + 1, t)

    yield from gen(1, 1)


def classes_with_trace(t: int, max_len: int) -> list[str]:
    """Canonical cyclic positive words of length <= max_len with trace t.

    Powers of a single letter (parabolic, trace 2) are excluded."""
    if max_len < 1:
        raise ParameterRangeError("max_len must be positive")
    out = []
    for n in range(2, max_len + 1):
        for w in _necklaces(n):
            if "L" in w and "R" in w and trace(w) == t:
                out.append(w)
    return sorted(out, key=lambda w: (len(w), w))


# --- matrix to word ----------------------------------------------------------

def _peel(m: IntMatrix2) -> str:
    """Factor a nonnegative SL_2 matrix as a positive word (Euclid on rows)."""
    out = []
    while m != I:
        a, b, c, d = m
        if a <= c and b <= d:  # m = L @ m'
            out.append("L")
            m = IntMatrix2(a, b, c - a, d - b)
        elif a >= c and b >= d:  # m = R @ m'
            out.append("R")
            m = IntMatrix2(a - c, b - d, c, d)
        else:
            raise InvalidMatrixError(f"{m} is not a product of L and R")
    return "".join(out)


def _floor_quadratic(p: int, q: int, disc: int) -> int:
    """floor((p + sqrt(disc)) / q) for a non-square disc and q != 0."""
    s = isqrt(disc)
    if q > 0:
        return (p + s) // q
    # (p + sqrt D)/q = -(p + sqrt D)/|q| and sqrt D is irrational
    return -((p + s) // -q) - 1


def _periodic_word(m: IntMatrix2) -> str:
    """Positive word of the continued-fraction period of the attracting fixed
    point of m; its matrix is a primitive root of a conjugate of +-m."""
    a, b, c, d = m
    disc = m.trace ** 2 - 4
    p, q = a - d, 2 * c
    if q == 0:
        raise InvalidMatrixError(f"{m} has a rational fixed point")
    # make q divide disc - p^2 so that the recursion stays integral
    if (disc - p * p) % q:
        p, q, disc = p * abs(q), q * abs(q), disc * q * q
    seen = {}
    partials = []
    while (p, q) not in seen:
        seen[(p, q)] = len(partials)
        k = _floor_quadratic(p, q, disc)
        partials.append(k)
        p = k * q - p
        q = (disc - p * p) // q
    start = seen[(p, q)]
    period = partials[start:]
    if len(period) % 2:
        period = period * 2
    # even continued-fraction positions are R-powers, odd ones L-powers
    return "".join(("R" if (start + i) % 2 == 0 else "L") * k for i, k in enumerate(period))


def matrix_to_lr_word(m: IntMatrix2 | tuple) -> str:
    """Canonical positive word whose matrix is conjugate to m."""
    m = IntMatrix2(*m)
    if m.det != 1:
        raise InvalidMatrixError(f"{m} has determinant {m.det}, expected 1")
    if m.trace < 3:
        raise NotHyperbolicError(f"{m} has trace {m.trace}; positive words need trace >= 3")
    if min(m) >= 0:
        return canonical_cyclic(_peel(m))
    root = _periodic_word(m)
    w = root
    while trace(w) < m.trace:
        w += root
    if trace(w) != m.trace:
        raise InvalidMatrixError(f"{m} is not conjugate to a positive word")
    return canonical_cyclic(w)


# --- appendix table ----------------------------------------------------------

def _pow(letter: str, k: int) -> str:
    return letter * k


def _row_genus_a(g):
    return 4 * g + 4, _pow("L", g - 1) + "RR" + _pow("L", g - 1) + "RR"


def _row_genus_b(g):
    return 4 * g + 2, _pow("L", g - 1) + "RRRR" + _pow("L", g - 1) + "RR"


def _row_genus_c(g):
    return 4 * g, _pow("L", g - 1) + "RRRR" + _pow("L", g - 1) + "RRRR"


def _row_23r(r):
    return 1, _pow("L", r - 6) + "R"


def _row_2qr(q, r):
    return 1, _pow("L", q - 4) + "R" + _pow("L", r - 4) + "R"


def _row_pqr(p, q, r):
    return 1, _pow("L", p - 3) + "R" + _pow("L", q - 3) + "R" + _pow("L", r - 3) + "R"


def _row_pqr_two(p, q, r):
    return 2, _pow("L", p + q - 6) + "R" + _pow("L", r - 3) + "R"


def _row_pqrs(p, q, r, s):
    return 2, "".join(_pow("L", k - 2) + "R" for k in (p, q, r, s))


def _row_many(n):
    return n, None


def _row_even(n):
    return 2 * n - 2, None


def _row_genus_cone(g, n):
    return 4 * g + n + 3, None


class AppendixRow(NamedTuple):
    params: tuple[str, ...]
    check: object
    build: object
    description: str


APPENDIX_ROWS = {
    "genus_a": AppendixRow(("g",), lambda g: g >= 2, _row_genus_a, "closed genus g, first family"),
    "genus_b": AppendixRow(("g",), lambda g: g >= 2, _row_genus_b, "closed genus g, second family"),
    "genus_c": AppendixRow(("g",), lambda g: g >= 2, _row_genus_c, "closed genus g, third family"),
    "sphere_23r": AppendixRow(("r",), lambda r: r >= 7, _row_23r, "sphere with cone orders 2, 3, r"),
    "sphere_2qr": AppendixRow(("q", "r"), lambda q, r: q >= 4 and r >= 5, _row_2qr,
                              "sphere with cone orders 2, q, r"),
    "sphere_pqr": AppendixRow(("p", "q", "r"), lambda p, q, r: p >= 3 and q >= 3 and r >= 4, _row_pqr,
                              "sphere with cone orders p, q, r >= 3"),
    "sphere_pqr_two": AppendixRow(("p", "q", "r"), lambda p, q, r: p >= 3 and q >= 3 and r >= 4,
                                  _row_pqr_two, "sphere with cone orders p, q, r, two boundary orbits"),
    "sphere_pqrs": AppendixRow(("p", "q", "r", "s"),
                               lambda p, q, r, s: min(p, q, r) >= 2 and s >= 3, _row_pqrs,
                               "sphere with four cone points"),
    "sphere_many": AppendixRow(("n",), lambda n: n >= 3, _row_many,
                               "sphere with n cone points of order >= 4"),
    "sphere_even": AppendixRow(("n",), lambda n: n >= 2, _row_even, "sphere with 2n cone points"),
    "genus_cone": AppendixRow(("g", "n"), lambda g, n: g >= 1 and n >= 1, _row_genus_cone,
                              "genus g with n cone points"),
}


def appendix_table(family: str, *params: int) -> tuple[int, str | None]:
    """(boundary count, first-return word) for a table row; the word is None
    for rows without a known first-return map.

    The row ``sphere_pqr`` at (3,3,4) gives RRLR (trace 5), a section with
    one boundary component; it is not the multiplicity-3 section bounded by
    the figure-eight geodesic, whose return map has trace 3."""
    try:
        row = APPENDIX_ROWS[family]
    except KeyError:
        raise ParameterRangeError(f"unknown family {family!r}; known: {sorted(APPENDIX_ROWS)}") from None
    if len(params) != len(row.params):
        raise ParameterRangeError(f"{family} takes parameters {row.params}")
    if not row.check(*params):
        raise ParameterRangeError(f"parameters {params} out of range for {family}")
    return row.build(*params)


def appendix_check() -> list[dict]:
    """Sanity data for every row with a word: trace and canonical form at the
    smallest admissible parameters."""
    samples = {
        "genus_a": (2,), "genus_b": (2,), "genus_c": (2,),
        "sphere_23r": (7,), "sphere_2qr": (4, 5), "sphere_pqr": (3, 3, 4),
        "sphere_pqr_two": (3, 3, 4), "sphere_pqrs": (2, 2, 2, 3),
    }
    out = []
    for family, params in samples.items():
        boundary, word = appendix_table(family, *params)
        out.append({"family": family, "params": list(params), "boundary": boundary, "word": word,
                    "canonical": canonical_cyclic(word), "trace": trace(word)})
    return out
