import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import matrices
from oracles import as_set, image_set, kernel_set, preimage_set, span_set, sum_set
from pfdecomp.exactla import (
    FieldPrime,
    LinAlgError,
    Subspace,
    complement_in,
    enumerate_subspaces,
    gaussian_binomial,
    image,
    intersect,
    inverse,
    kernel,
    mat,
    matmul,
    preimage,
    rank,
    solve,
    subspace_sum,
)


def span(cols, p=2):
    return Subspace.span(np.array(cols, dtype=np.int64).T, p)


e1, e2 = [1, 0], [0, 1]
F2_2 = Subspace.full(2, 2)
Z2 = Subspace.zero(2, 2)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 2147483647])
def test_field_prime_accepts_primes(p):
    assert FieldPrime(p) == p


@pytest.mark.parametrize("p", [0, 1, 4, 9, 2**31, 2**31 + 11, -3, 2.5])
def test_field_prime_rejects(p):
    with pytest.raises(LinAlgError):
        FieldPrime(p)


def test_image_examples():
    assert image(mat([[1, 1], [0, 0]], 2), 2) == span([e1])
    assert image(np.zeros((2, 2), dtype=np.int64), 2) == Z2
    assert image(np.eye(2, dtype=np.int64), 2) == F2_2


def test_kernel_examples():
    assert kernel(mat([[0, 1]], 2), 2) == span([e1])
    assert kernel(np.eye(2, dtype=np.int64), 2) == Z2
    assert kernel(np.zeros((1, 2), dtype=np.int64), 2) == F2_2


def test_sum_examples():
    S = span([e1])
    assert span([e1]) + span([e2]) == F2_2
    assert S + Z2 == S
    assert S + S == S


def test_intersect_examples():
    assert span([e1]) & span([e2]) == Z2
    assert span([[1, 1]]) & span([e1]) == Z2
    assert span([e1]) & span([e1]) == span([e1])


def test_preimage_examples():
    assert preimage(mat([[0, 1]], 2), Subspace.zero(1, 2)) == span([e1])
    M = mat([[1, 0, 1], [1, 1, 0]], 3)
    assert preimage(M, Subspace.full(2, 3)) == Subspace.full(3, 3)
    assert preimage(mat([[1], [0]], 2), span([e2])) == Subspace.zero(1, 2)


def test_complement_examples():
    # canonical basis of F_2^2 is (e1, e2); e1 lies in S, so the greedy scan keeps e2
    assert complement_in(span([e1]), F2_2) == span([e2])
    assert complement_in(F2_2, F2_2) == Z2
    assert complement_in(Z2, F2_2) == F2_2
    with pytest.raises(LinAlgError):
        complement_in(span([e1]), span([e2]))


def test_ambient_mismatch():
    with pytest.raises(LinAlgError):
        subspace_sum(Z2, Subspace.zero(3, 2))
    with pytest.raises(LinAlgError):
        intersect(Z2, Subspace.zero(2, 3))
    with pytest.raises(LinAlgError):
        preimage(mat([[1, 0]], 2), Z2)


def test_enumerate_examples():
    assert enumerate_subspaces(0, 2) == [Subspace.zero(0, 2)]
    assert len(enumerate_subspaces(2, 2)) == 5
    assert len(enumerate_subspaces(3, 2)) == 16
    with pytest.raises(LinAlgError):
        enumerate_subspaces(13, 2)


def _brute_count(d, p):
    # distinct spans of all tuples of up to d vectors
    vecs = list(np.ndindex(*([p] * d)))
    seen = set()
    for k in range(d + 1):
        for combo in itertools.combinations_with_replacement(vecs, k):
            seen.add(span_set(combo, d, p))
    return len(seen)


@pytest.mark.parametrize("d,p", [(1, 2), (2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (2, 5)])
def test_enumerate_counts(d, p):
    subs = enumerate_subspaces(d, p)
    assert len(subs) == sum(gaussian_binomial(d, k, p) for k in range(d + 1))
    assert len(set(subs)) == len(subs)
    assert all(Subspace.from_rows(S.rows, p) == S for S in subs)
    if p**d <= 27:
        assert len(subs) == _brute_count(d, p)
        assert len({as_set(S) for S in subs}) == len(subs)


def test_gaussian_binomial_small():
    assert [gaussian_binomial(3, k, 2) for k in range(4)] == [1, 7, 7, 1]
    assert [gaussian_binomial(2, k, 3) for k in range(3)] == [1, 4, 1]


def _random_subspace(rng, d, p, max_gens=None):
    k = int(rng.integers(0, (max_gens or d) + 1))
    return Subspace.span(rng.integers(0, p, size=(d, k)), p)


def test_canonical_form_under_regeneration():
    rng = np.random.default_rng(1)
    for _ in range(200):
        p = int(rng.choice([2, 3, 5]))
        d = int(rng.integers(1, 7))
        S = _random_subspace(rng, d, p)
        # new generating set: invertible recombination of the basis, padded with redundant columns
        k = S.dim
        while True:
            g = rng.integers(0, p, size=(k, k))
            if rank(g, p) == k:
                break
        gens = matmul(S.basis, g, p)
        extra = matmul(S.basis, rng.integers(0, p, size=(k, 2)), p)
        T = Subspace.span(np.hstack([gens, extra]), p)
        assert T == S
        assert np.array_equal(T.rows, S.rows)


def test_modular_law():
    rng = np.random.default_rng(2)
    for p in (2, 3, 5):
        for _ in range(500):
            d = int(rng.integers(0, 7))
            S, T = _random_subspace(rng, d, p), _random_subspace(rng, d, p)
            assert S.dim + T.dim == (S + T).dim + (S & T).dim
            assert S <= S + T and T <= S + T
            assert S & T <= S and S & T <= T


def test_preimage_properties():
    rng = np.random.default_rng(3)
    for _ in range(200):
        p = int(rng.choice([2, 3, 5]))
        m, n = int(rng.integers(0, 5)), int(rng.integers(0, 5))
        M = rng.integers(0, p, size=(m, n))
        assert preimage(M, image(M, p)) == Subspace.full(n, p)
        S = _random_subspace(rng, m, p)
        pre = preimage(M, S)
        assert kernel(M, p) <= pre
        assert image(matmul(M, pre.basis, p), p) <= S


def test_complement_properties():
    rng = np.random.default_rng(4)
    for _ in range(500):
        p = int(rng.choice([2, 3, 5]))
        d = int(rng.integers(0, 7))
        T = _random_subspace(rng, d, p)
        S = Subspace.span(matmul(T.basis, rng.integers(0, p, size=(T.dim, int(rng.integers(0, T.dim + 1)))), p), p)
        C = complement_in(S, T)
        assert S + C == T
        assert (S & C).is_zero
        assert complement_in(S, T) == C


def test_inverse_and_solve():
    rng = np.random.default_rng(5)
    for p in (2, 3, 5, 1000003):
        A = rng.integers(0, p, size=(4, 4))
        if rank(A, p) < 4:
            with pytest.raises(LinAlgError):
                inverse(A, p)
            continue
        assert np.array_equal(matmul(A, inverse(A, p), p), np.eye(4, dtype=np.int64))
        b = rng.integers(0, p, size=(4, 2))
        assert np.array_equal(matmul(A, solve(A, b, p), p), b)
    with pytest.raises(LinAlgError):
        solve(mat([[1, 0], [0, 0]], 2), mat([[0], [1]], 2), 2)


def test_large_prime_matmul_exact():
    p = 2147483647
    rng = np.random.default_rng(6)
    A = rng.integers(0, p, size=(5, 7))
    B = rng.integers(0, p, size=(7, 3))
    want = [[sum(int(A[i, k]) * int(B[k, j]) for k in range(7)) % p for j in range(3)] for i in range(5)]
    assert matmul(A, B, p).tolist() == want


@given(st.sampled_from([2, 3]).flatmap(lambda p: st.tuples(st.just(p), matrices(p, 3, 3))))
def test_image_kernel_match_brute_force(case):
    p, M = case
    m, n = M.shape
    assert as_set(image(M, p)) == image_set(M, n, p)
    assert as_set(kernel(M, p)) == kernel_set(M, n, p)
    assert kernel(M, p).dim == n - rank(M, p)


@given(
    st.sampled_from([2, 3]).flatmap(
        lambda p: st.tuples(st.just(p), matrices(p, 3, 3), matrices(p, 3, 3), matrices(p, 3, 3))
    )
)
def test_sum_intersect_preimage_match_brute_force(case):
    p, A, B, M = case
    d = A.shape[0]
    if B.shape[0] != d:
        B = np.zeros((d, 0), dtype=np.int64)
    S, T = Subspace.span(A, p), Subspace.span(B, p)
    assert as_set(S + T) == sum_set(as_set(S), as_set(T), p)
    assert as_set(S & T) == as_set(S) & as_set(T)
    if M.shape[0] == d:
        assert as_set(preimage(M, S)) == preimage_set(M, as_set(S), M.shape[1], p)
