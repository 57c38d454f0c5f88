from fractions import Fraction
import random

import pytest

from a1deg.errors import DegenerateForm, UnsupportedField
from a1deg.fields import PrimeField, Q, extension
from a1deg.forms import (INF, BilinearForm, diagonalize, direct_sum, discriminant,
                         form_from_json, form_to_json, hasse_table, hasse_witt,
                         hilbert_symbol, invariants, is_isometric, rank, signature,
                         tensor_product)
from a1deg import linalg
from oracles import hilbert_brute, squarefree

F5 = PrimeField(5)


def diag(field, values):
    return BilinearForm.diagonal(field, values)


def test_hyperbolic_plane_diagonalizes():
    d = diagonalize(BilinearForm(Q, ((0, 1), (1, 0))))
    assert [str(x) for x in d.diagonal] == ["2", "-1/2"]
    P = [list(r) for r in d.P]
    G = [[Q(0), Q(1)], [Q(1), Q(0)]]
    D = linalg.matmul(Q, linalg.matmul(Q, linalg.transpose(P), G), P)
    assert D == [[Q(2), Q(0)], [Q(0), Q(Fraction(-1, 2))]]


def test_degenerate_forms_rejected():
    f = BilinearForm(Q, ((1, 1), (1, 1)))
    assert rank(f) == 1
    with pytest.raises(DegenerateForm):
        discriminant(f)


def test_symmetry_required():
    with pytest.raises(ValueError):
        BilinearForm(Q, ((1, 2), (3, 1)))


@pytest.mark.parametrize("a,b,place,expected", [
    (-1, -1, 2, -1), (-1, -1, INF, -1), (-1, -1, 3, 1), (2, 3, 3, -1), (5, 5, 5, 1),
    (3, 3, 3, -1), (2, 5, 5, -1), (Fraction(1, 3), 3, 3, -1)])
def test_hilbert_symbol_examples(a, b, place, expected):
    assert hilbert_symbol(a, b, place) == expected


def test_hilbert_symbol_against_brute_force(rng):
    for _ in range(300):
        a = rng.choice([-1, 1]) * rng.randint(1, 60)
        b = rng.choice([-1, 1]) * rng.randint(1, 60)
        for place in (2, 3, 5, 7, INF):
            assert hilbert_symbol(a, b, place) == hilbert_brute(a, b, place), (a, b, place)


def test_hilbert_symbol_bimultiplicative(rng):
    for _ in range(200):
        a, b, c = (rng.choice([-1, 1]) * rng.randint(1, 40) for _ in range(3))
        for place in (2, 3, 5, INF):
            assert hilbert_symbol(a, b * c, place) == hilbert_symbol(a, b, place) * hilbert_symbol(a, c, place)
            assert hilbert_symbol(a, b, place) == hilbert_symbol(b, a, place)
            assert hilbert_symbol(a, -a, place) == 1


def test_invariants_examples():
    assert invariants(diag(Q, [-1, -1])) == (2, 1, -2, (2, INF))
    assert hasse_table(diag(Q, [2, -2])).minus == ()
    assert signature(diag(Q, [3, -5, 7])) == 1
    assert discriminant(diag(Q, [3, 12])).rep == 1
    with pytest.raises(UnsupportedField):
        signature(diag(F5, [1, 2]))


def test_isometry_examples():
    assert is_isometric(diag(Q, [1, -1]), diag(Q, [2, -2]))
    assert not is_isometric(diag(Q, [1, 1]), diag(Q, [1, 2]))
    assert is_isometric(diag(F5, [1, 1]), diag(F5, [2, 2]))
    assert is_isometric(diag(Q, [1, 1]), diag(Q, [2, 2]))
    assert not is_isometric(diag(Q, [1, 1]), diag(Q, [3, 3]))


def test_direct_sum_and_tensor():
    f, g = diag(Q, [1, 2]), diag(Q, [3])
    assert rank(direct_sum(f, g)) == 3
    t = tensor_product(f, g)
    assert is_isometric(t, diag(Q, [3, 6]))


def _random_congruence(rng, n):
    while True:
        P = [[Q(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if not linalg.det(Q, P).is_zero():
            return P


def test_invariants_unchanged_under_congruence(rng):
    for _ in range(20):
        n = rng.randint(1, 4)
        G = [[Q(0)] * n for _ in range(n)]
        for i in range(n):
            G[i][i] = Q(rng.choice([-1, 1]) * rng.randint(1, 30))
        P = _random_congruence(rng, n)
        H = linalg.matmul(Q, linalg.matmul(Q, linalg.transpose(P), G), P)
        assert invariants(BilinearForm(Q, tuple(map(tuple, G)))) == invariants(BilinearForm(Q, tuple(map(tuple, H))))


def test_hasse_witt_matches_pairwise_product():
    values = [3, -5, 7, -2]
    for place in (2, 3, 5, 7, INF):
        s = 1
        for i in range(4):
            for j in range(i + 1, 4):
                s *= hilbert_brute(values[i], values[j], place)
        assert hasse_witt(diag(Q, values), place) == s


def test_form_json_roundtrip():
    f = BilinearForm(Q, ((1, Fraction(1, 2)), (Fraction(1, 2), -3)))
    assert form_from_json(form_to_json(f)) == f
    L = extension(Q, [1, 0, 1], "i")
    g = BilinearForm(L, ((L.gen, 1), (1, 0)))
    assert form_from_json(form_to_json(g)) == g


def test_discriminant_squarefree_representative(rng):
    for _ in range(50):
        values = [rng.choice([-1, 1]) * rng.randint(1, 50) for _ in range(3)]
        prod = values[0] * values[1] * values[2]
        assert discriminant(diag(Q, values)).rep == squarefree(prod)
