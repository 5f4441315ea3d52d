"""Rational linking after surgery on the Hopf link, and first homology of the
unit tangent bundle of the orbisphere.

All arithmetic is exact (``fractions.Fraction`` and Python integers).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidSurfaceError, InvalidWordError
from .template import TemplateModel, hopf_linking_vector, s3_linking, s3_self_linking
from .words import SurfaceSpec, is_admissible, require_coded

Matrix = list[list[int]]


@dataclass(frozen=True)
class QForm:
    surface: SurfaceSpec
    entries: tuple[tuple[Fraction, ...], ...]

    def __call__(self, v1: Sequence[int], v2: Sequence[int]) -> Fraction:
        return sum((v1[i] * self.entries[i][j] * v2[j] for i in range(3) for j in range(3)),
                   Fraction(0))

    def is_symmetric(self) -> bool:
        return all(self.entries[i][j] == self.entries[j][i] for i in range(3) for j in range(3))


def surgery_denominator(s: SurfaceSpec) -> int:
    p, q, r = s.triple
    return p * q * r - p * q - q * r - p * r


def q_form(s: SurfaceSpec) -> QForm:
    p, q, r = s.triple
    d = surgery_denominator(s)
    if d == 0:
        raise InvalidSurfaceError(f"degenerate surgery form for {s.triple}")
    m = [[q * r - q - r, r, q],
         [r, p * r - p - r, p],
         [q, p, p * q - p - q]]
    return QForm(s, tuple(tuple(Fraction(x, d) for x in row) for row in m))


def _check(s: SurfaceSpec, *words: str) -> None:
    require_coded(s)
    for w in words:
        if not is_admissible(w, s):
            raise InvalidWordError(f"{w!r} is not an admissible code for {s.triple}")


def surgered_linking(s: SurfaceSpec, w1: str, w2: str,
                     model: TemplateModel | None = None) -> Fraction:
    """Linking number in T^1 of the orbisphere of two orbits with distinct codes."""
    _check(s, w1, w2)
    base = s3_linking(w1, w2, model)
    return base + q_form(s)(hopf_linking_vector(w1), hopf_linking_vector(w2))


def surgered_self_linking(s: SurfaceSpec, w: str, model: TemplateModel | None = None) -> Fraction:
    """Linking of an orbit with its stable push-off."""
    _check(s, w)
    v = hopf_linking_vector(w)
    return s3_self_linking(w, model) + q_form(s)(v, v)


# --- homology ------------------------------------------------------------------

def presentation_matrix(s: SurfaceSpec) -> Matrix:
    """Relations p c1 + h = q c2 + h = r c3 + h = c1 + c2 + c3 + h = 0.

    The corner entry is +1: with -1 the determinant would be
    -(pqr + pq + qr + pr), which does not match the order of H_1."""
    p, q, r = s.triple
    return [[p, 0, 0, 1],
            [0, q, 0, 1],
            [0, 0, r, 1],
            [1, 1, 1, 1]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with U*M*V = D, U and V unimodular, D diagonal with
    each nonzero diagonal entry dividing the next, all entries >= 0."""
    a = [list(row) for row in m]
    rows, cols = len(a), len(a[0]) if a else 0
    u, v = _identity(rows), _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for mat in (a, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row dst += k * row src
        for mat in (a, u):
            mat[dst] = [x + k * y for x, y in zip(mat[dst], mat[src])]

    def add_col(dst, src, k):
        for mat in (a, v):
            for row in mat:
                row[dst] += k * row[src]

    for t in range(min(rows, cols)):
        while True:
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not nonzero:
                break
            _, i, j = min(nonzero)
            swap_rows(t, i)
            swap_cols(t, j)
            piv = a[t][t]
            done = True
            for i in range(t + 1, rows):
                k = a[i][t] // piv
                if k:
                    add_row(i, t, -k)
                done &= a[i][t] == 0
            for j in range(t + 1, cols):
                k = a[t][j] // piv
                if k:
                    add_col(j, t, -k)
                done &= a[t][j] == 0
            if not done:
                continue
            # divisibility: fold an offending row into the pivot row
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            for mat in (a, u):
                mat[t] = [-x for x in mat[t]]
    return u, a, v


class AbelianGroup:
    """Finite abelian group given by invariant factors d1 | d2 | ... (all >= 2).
    A factor 0 stands for a free summand Z."""

    def __init__(self, factors: Sequence[int]):
        self.factors = tuple(factors)

    @classmethod
    def from_diagonal(cls, diag: Sequence[int]) -> "AbelianGroup":
        return cls([d for d in diag if d != 1])

    @property
    def order(self) -> int | None:
        if 0 in self.factors:
            return None
        out = 1
        for d in self.factors:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        return f"AbelianGroup({list(self.factors)})"

    def __str__(self):
        if not self.factors:
            return "trivial"
        return " x ".join("Z" if d == 0 else f"Z/{d}" for d in self.factors)


def homology(s: SurfaceSpec) -> AbelianGroup:
    """H_1(T^1 Sigma_{p,q,r}; Z) as the cokernel of the presentation matrix."""
    _, d, _ = smith_normal_form(presentation_matrix(s))
    return AbelianGroup.from_diagonal([d[i][i] for i in range(4)])
