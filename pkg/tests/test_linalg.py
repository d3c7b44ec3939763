"""Exact kernels, solves with certificates, and specialized rank bounds."""

from __future__ import annotations

import random
from fractions import Fraction

from wittkit import (
    Scalar,
    ScalarField,
    ScalarMatrix,
    kernel,
    modular_rank,
    rank,
    solve,
    specialization_points,
    specialize,
)

F2 = ScalarField(2)


def build(entries, nrows, ncols, arity=2):
    matrix = ScalarMatrix(nrows, ncols, arity)
    for r, c, v in entries:
        matrix.add(r, c, v)
    return matrix


def random_matrix(rng: random.Random, nrows: int, ncols: int, arity: int = 0) -> ScalarMatrix:
    matrix = ScalarMatrix(nrows, ncols, arity)
    for r in range(nrows):
        for c in range(ncols):
            if rng.random() < 0.5:
                value = Fraction(rng.randrange(-6, 7), rng.randrange(1, 4))
                matrix.add(r, c, Scalar.from_fraction(arity, value))
    return matrix


def is_zero_vector(vec) -> bool:
    return all(v.is_zero for v in vec.values())


def test_kernel_of_identity_is_empty():
    eye = build([(i, i, F2.one()) for i in range(3)], 3, 3)
    assert kernel(eye) == []
    assert rank(eye) == 3


def test_kernel_of_zero_matrix():
    zero = ScalarMatrix(2, 3, 2)
    vectors = kernel(zero)
    assert len(vectors) == 3
    assert rank(zero) == 0
    # canonical basis: unit at each column, ascending
    for c, vec in enumerate(vectors):
        assert vec == {c: F2.one()}


def test_kernel_single_symbolic_row():
    mu1, mu2 = F2.mu(1), F2.mu(2)
    matrix = build([(0, 0, mu1), (0, 1, mu2)], 1, 2)
    (vec,) = kernel(matrix)
    assert vec[1].is_one()
    assert vec[0] == -(mu2 / mu1)
    assert is_zero_vector(matrix.apply(vec))


def test_kernel_vectors_annihilate():
    rng = random.Random(31)
    for _ in range(25):
        matrix = random_matrix(rng, rng.randrange(1, 6), rng.randrange(1, 6))
        for vec in kernel(matrix):
            assert is_zero_vector(matrix.apply(vec))


def test_rank_nullity():
    rng = random.Random(77)
    for _ in range(25):
        nrows, ncols = rng.randrange(1, 6), rng.randrange(1, 6)
        matrix = random_matrix(rng, nrows, ncols)
        assert rank(matrix) + len(kernel(matrix)) == ncols


def test_solve_consistent():
    rng = random.Random(5)
    for _ in range(20):
        matrix = random_matrix(rng, 4, 4)
        x = {c: Scalar.from_fraction(0, rng.randrange(-3, 4)) for c in range(4)}
        rhs = matrix.apply(x)
        result = solve(matrix, rhs)
        assert result.consistent
        # the reported solution reproduces the rhs exactly
        reproduced = matrix.apply(result.solution)
        assert {r: v for r, v in reproduced.items()} == rhs
        assert result.certificate is None
        # general solution: adding any kernel vector stays a solution
        for vec in result.homogeneous:
            shifted = dict(result.solution)
            for c, v in vec.items():
                shifted[c] = shifted.get(c, Scalar.zero(0)) + v
            assert matrix.apply(shifted) == rhs


def test_solve_inconsistent_certificate():
    # rows: x0 = 1, x0 = 2; u = (1, -1) refutes
    one = F2.one()
    matrix = build([(0, 0, one), (1, 0, one)], 2, 1)
    rhs = {0: one, 1: F2.from_int(2)}
    result = solve(matrix, rhs)
    assert not result.consistent
    cert = result.certificate
    assert cert is not None and not is_zero_vector(cert)
    assert is_zero_vector(matrix.left_apply(cert))
    refute = sum((cert[r] * rhs[r] for r in cert if r in rhs), F2.zero())
    assert not refute.is_zero


def test_solve_certificates_random():
    rng = random.Random(13)
    seen_bad = 0
    for _ in range(30):
        matrix = random_matrix(rng, 5, 3)
        rhs = {r: Scalar.from_fraction(0, rng.randrange(-3, 4)) for r in range(5)}
        rhs = {r: v for r, v in rhs.items() if not v.is_zero}
        result = solve(matrix, rhs)
        if result.consistent:
            assert matrix.apply(result.solution) == rhs
        else:
            seen_bad += 1
            cert = result.certificate
            assert is_zero_vector(matrix.left_apply(cert))
            dot = sum(
                (cert[r] * rhs[r] for r in cert if r in rhs),
                Scalar.zero(0),
            )
            assert not dot.is_zero
    assert seen_bad > 0


def test_symbolic_solve():
    mu1, mu2 = F2.mu(1), F2.mu(2)
    # [mu1 0; 0 mu2] x = (mu2, mu1) -> x = (mu2/mu1, mu1/mu2)
    matrix = build([(0, 0, mu1), (1, 1, mu2)], 2, 2)
    result = solve(matrix, {0: mu2, 1: mu1})
    assert result.consistent
    assert result.solution[0] == mu2 / mu1
    assert result.solution[1] == mu1 / mu2


def test_fraction_free_path_matches_field_path():
    # wide symbolic matrices take the fraction-free route; compare against
    # rank-nullity and substitution since both paths must agree
    rng = random.Random(99)
    matrix = ScalarMatrix(6, 14, 2)
    mus = [F2.mu(1), F2.mu(2), F2.one()]
    for r in range(6):
        for c in range(14):
            if rng.random() < 0.3:
                matrix.add(r, c, rng.choice(mus) * rng.randrange(1, 4))
    vectors = kernel(matrix)
    assert rank(matrix) + len(vectors) == 14
    for vec in vectors:
        assert is_zero_vector(matrix.apply(vec))


def test_specialization_points_avoid_small_relations():
    for point in specialization_points(3, bound=4):
        assert len(point) == 3
        assert point[0] == 1
        base = point[1]
        assert base > 8
        assert point == tuple(base ** i for i in range(3))
    # no small integer combination vanishes at the first point
    point = specialization_points(2, bound=4)[0]
    for a in range(-4, 5):
        for b in range(-4, 5):
            if (a, b) != (0, 0):
                assert a * point[0] + b * point[1] != 0


def test_specialized_rank_bounds_symbolic_rank():
    rng = random.Random(17)
    f1 = ScalarField(1)
    for _ in range(15):
        matrix = ScalarMatrix(4, 5, 1)
        for r in range(4):
            for c in range(5):
                if rng.random() < 0.5:
                    coeff = f1.from_int(rng.randrange(-3, 4))
                    matrix.add(r, c, coeff * (f1.mu(1) if rng.random() < 0.5 else f1.one()))
        symbolic = rank(matrix)
        for point in specialization_points(1, bound=6):
            assert rank(specialize(matrix, point)) <= symbolic
            assert modular_rank(matrix, point) <= symbolic


def test_modular_rank_certifies_generic_case():
    mu1, mu2 = F2.mu(1), F2.mu(2)
    matrix = build([(0, 0, mu1), (0, 1, mu2), (1, 0, mu2), (1, 1, mu1)], 2, 2)
    assert rank(matrix) == 2
    point = specialization_points(2, bound=2)[0]
    assert modular_rank(matrix, point) == 2
    assert rank(specialize(matrix, point)) == 2


def test_rank_drops_at_degenerate_point():
    mu1, mu2 = F2.mu(1), F2.mu(2)
    matrix = build([(0, 0, mu1 - mu2)], 1, 1)
    assert rank(matrix) == 1
    assert rank(specialize(matrix, (Fraction(3), Fraction(3)))) == 0
    assert modular_rank(matrix, (Fraction(3), Fraction(3))) == 0
