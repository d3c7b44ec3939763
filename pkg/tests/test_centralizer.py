"""Truncated centralizer computation against the predicted bases."""

from __future__ import annotations

import random

from wittkit import (
    AlgebraVariant,
    TruncatedSpace,
    WittAlgebra,
    ad_matrix,
    bracket,
    centralizer_basis,
    lemma_4_1_families,
    predicted_centralizer_4_1,
    proportional,
    span_rank,
    verify_lemma_2_2,
    verify_lemma_4_1,
)

W2 = WittAlgebra(AlgebraVariant.wn(2))


def test_space_coordinate_round_trip():
    space = TruncatedSpace(W2, box=2)
    rng = random.Random(3)
    for _ in range(20):
        x = W2.random_element(rng, box=2)
        coords = space.coordinates_of(x)
        assert space.element_from_vector(coords) == x
    for i in range(0, len(space), 7):
        e = space.element(i)
        assert space.coordinates_of(e) == {i: W2.field.one()}


def test_space_contains():
    space = TruncatedSpace(W2, box=1)
    assert space.contains(W2.monomial((1, -1), 2))
    assert not space.contains(W2.monomial((2, 0), 1))


def test_ad_matrix_of_dmu_is_diagonal():
    # [t^gamma d_j, d_mu] = -(mu . gamma) t^gamma d_j
    space = TruncatedSpace(W2, box=1)
    matrix, keys = ad_matrix(W2.dmu(), space)
    mu = (W2.field.mu(1), W2.field.mu(2))
    for col in range(len(space)):
        (gamma, j) = space.basis[col]
        expect = -(mu[0] * gamma[0] + mu[1] * gamma[1])
        for r, key in enumerate(keys):
            entry = matrix.entry(r, col)
            if key == (gamma, j):
                assert entry == expect
            else:
                assert entry.is_zero


def test_centralizer_of_dmu_is_cartan():
    result = centralizer_basis(W2, W2.dmu(), box=2)
    assert result.dimension == 2
    for e in result.basis:
        assert set(e.support) == {(0, 0)}
        assert bracket(e, W2.dmu()).is_zero


def test_centralizer_of_power_sum_symbolic():
    # direct kernel computation, no specialization shortcut
    ps = W2.power_sum_dmu(2)
    result = centralizer_basis(W2, ps, box=4)
    assert result.dimension == 1
    assert proportional(result.basis[0], ps) is not None


def test_verify_lemma_2_2_small():
    report = verify_lemma_2_2(2, 2)
    assert report.passed
    assert report.data["dimension"] == 1
    assert report.parameters == {"n": 2, "k": 2, "box": 4}
    payload = report.to_dict()
    assert payload["pass"] is True and payload["lemma"] == "2.2"


def test_verify_lemma_2_2_certified_matches_symbolic():
    # the specialization certificate must agree with the brute-force kernel
    report = verify_lemma_2_2(2, 3)
    algebra = WittAlgebra(AlgebraVariant.wn(2))
    brute = centralizer_basis(algebra, algebra.power_sum_dmu(3), box=5)
    assert report.passed
    assert report.data["dimension"] == brute.dimension == 1


def test_verify_lemma_2_2_negative_k():
    report = verify_lemma_2_2(1, -2)
    assert report.passed
    assert report.data["dimension"] == 1


def test_lemma_4_1_families_structure():
    winf = WittAlgebra(AlgebraVariant.winf(2, 3))
    shifts, h_family = lemma_4_1_families(winf, k=1, box=2)
    # shift exponents live in the tail coordinates only
    assert len(shifts) == 5
    for beta, e in shifts:
        assert beta[:2] == (0, 0)
        assert e == winf.power_sum_dmu(1).translate(beta)
    assert len(h_family) == 5
    for beta, j, e in h_family:
        assert j == 3
        assert e == winf.monomial(beta, 3)


def test_predicted_family_centralizes():
    winf = WittAlgebra(AlgebraVariant.winf(2, 3))
    ps = winf.power_sum_dmu(1)
    for e in predicted_centralizer_4_1(winf, k=1, box=2):
        assert bracket(ps, e).is_zero


def test_verify_lemma_4_1_truncation():
    report = verify_lemma_4_1(2, 3, 1, box=2)
    assert report.passed
    assert report.data["dimension"] == 10
    assert report.data["spans_equal"] is True
    assert report.data["predicted_dimension"] == 10


def test_span_rank_counts_independent_elements():
    space = TruncatedSpace(W2, box=1)
    a = W2.monomial((1, 0), 1)
    b = W2.monomial((0, 1), 2)
    assert span_rank(space, [a, b]) == 2
    assert span_rank(space, [a, a.scale(W2.field.from_int(5))]) == 1
    assert span_rank(space, [a, b, a + b]) == 2
    assert span_rank(space, []) == 0


def test_collapsed_families_match_2_2():
    # with m == n the shift family reduces to the power-sum line
    predicted = predicted_centralizer_4_1(W2, k=2, box=3)
    assert len(predicted) == 1
    assert proportional(predicted[0], W2.power_sum_dmu(2)) is not None
