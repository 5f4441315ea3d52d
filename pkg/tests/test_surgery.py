import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from linkcert.errors import InvalidWordError, SameOrbitError, UnsupportedSurfaceError
from linkcert.surgery import (AbelianGroup, homology, presentation_matrix, q_form, smith_normal_form,
                              surgered_linking, surgered_self_linking, surgery_denominator)
from linkcert.template import hopf_linking_vector, s3_linking
from linkcert.words import S237, S334, SurfaceSpec, enumerate_orbits

import oracles


def hyperbolic_triples(limit=12):
    for p, q, r in itertools.combinations_with_replacement(range(2, limit + 1), 3):
        if Fraction(1, p) + Fraction(1, q) + Fraction(1, r) < 1:
            yield SurfaceSpec(p, q, r)


def test_q_237():
    q = q_form(S237)
    assert q.entries == ((11, 7, 3), (7, 5, 2), (3, 2, 1))


def test_q_334():
    q = q_form(S334)
    want = [[5, 4, 3], [4, 5, 3], [3, 3, 3]]
    assert q.entries == tuple(tuple(Fraction(x, 3) for x in row) for row in want)


def test_q_symmetric():
    for s in hyperbolic_triples(9):
        assert q_form(s).is_symmetric()


@given(st.integers(0, 30), st.integers(0, 30), st.integers(0, 30), st.integers(0, 30))
def test_q_237_closed_form(a1, b1, a2, b2):
    v1, v2 = (a1, -b1, 0), (a2, -b2, 0)
    assert q_form(S237)(v1, v2) == oracles.q237(v1, v2)


def test_hopf_pairing_counts_letters():
    for w in enumerate_orbits(S237, 14):
        assert q_form(S237)(hopf_linking_vector("ababb"), hopf_linking_vector(w)) == len(w)
    for w in enumerate_orbits(S334, 12):
        assert q_form(S334)(hopf_linking_vector("ab"), hopf_linking_vector(w)) == Fraction(len(w), 3)


@pytest.mark.parametrize("w, want", [("abababb", -1), ("ababbabb", -1), ("abababbabb", -2)])
def test_surgered_values(w, want):
    assert surgered_linking(S237, "ababb", w) == want


def test_self_linking_values():
    assert surgered_self_linking(S237, "ababb") == -1
    assert surgered_self_linking(S334, "ab") == Fraction(-1, 3)
    assert surgered_self_linking(S334, "aabb") < 0


def test_formula_is_sum_of_parts():
    for w in enumerate_orbits(S334, 8)[1:]:
        want = s3_linking("ab", w) + q_form(S334)(hopf_linking_vector("ab"), hopf_linking_vector(w))
        assert surgered_linking(S334, "ab", w) == want


@pytest.mark.parametrize("s, n", [(S237, 14), (S334, 10)])
def test_all_pairs_negative_and_symmetric(s, n):
    d = surgery_denominator(s)
    orbits = enumerate_orbits(s, n)
    for u, v in itertools.combinations(orbits, 2):
        val = surgered_linking(s, u, v)
        assert val < 0
        assert val == surgered_linking(s, v, u)
        assert d % val.denominator == 0
    for w in orbits:
        assert surgered_self_linking(s, w) < 0


def test_errors():
    with pytest.raises(SameOrbitError):
        surgered_linking(S237, "ababb", "bbaba")
    with pytest.raises(InvalidWordError):
        surgered_linking(S237, "ababb", "aab")
    with pytest.raises(UnsupportedSurfaceError):
        surgered_self_linking(SurfaceSpec(2, 3, 8), "ababb")


def test_presentation_matrix():
    assert presentation_matrix(S237) == [[2, 0, 0, 1], [0, 3, 0, 1], [0, 0, 7, 1], [1, 1, 1, 1]]


def test_presentation_determinant():
    for s in hyperbolic_triples():
        assert abs(oracles.det(presentation_matrix(s))) == abs(surgery_denominator(s))


def check_snf(m):
    u, d, v = smith_normal_form(m)
    assert abs(oracles.det(u)) == 1 and abs(oracles.det(v)) == 1
    prod = [[sum(u[i][k] * m[k][j] for k in range(len(m))) for j in range(len(m[0]))]
            for i in range(len(m))]
    prod = [[sum(prod[i][k] * v[k][j] for k in range(len(v))) for j in range(len(v[0]))]
            for i in range(len(prod))]
    assert prod == d
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)
    return diag


def test_snf_known_matrix():
    m = [[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]]
    assert check_snf(m) == [1, 10, 30, 0]


@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-12, 12), min_size=n, max_size=n), min_size=1, max_size=4)))
@settings(max_examples=200)
def test_snf_matches_determinantal_divisors(m):
    assert check_snf(m) == oracles.invariant_factors_oracle(m)


def test_homology_values():
    assert homology(S237).is_trivial
    assert str(homology(S237)) == "trivial"
    assert homology(S334) == AbelianGroup([3])
    assert str(homology(S334)) == "Z/3"
    assert homology(SurfaceSpec(2, 3, 8)).order == 2


def test_homology_order_all_triples():
    for s in hyperbolic_triples():
        g = homology(s)
        assert g.order == abs(surgery_denominator(s))
        assert list(g.factors) == [f for f in oracles.invariant_factors_oracle(presentation_matrix(s))
                                   if f != 1]
