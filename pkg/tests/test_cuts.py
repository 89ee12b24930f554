import numpy as np
import pytest
from hypothesis import given

from conftest import modules
from oracles import as_set, im_pair_chain, ker_pair_chain
from pfdecomp.cuts import im_pair, ker_pair
from pfdecomp.exactla import Subspace, matmul, preimage

E1 = Subspace.span(np.array([[1], [0]]), 2)


def test_im_pair_examples(m1):
    lo, hi = im_pair(m1, 1, 1)
    assert lo == E1 and hi == Subspace.full(2, 2)
    lo, hi = im_pair(m1, 0, 0)
    assert lo.is_zero and hi == Subspace.full(1, 2)
    # rho(2, 0) = 0, rho(2, 1) = [0 1] is onto
    lo, hi = im_pair(m1, 1, 2)
    assert lo.is_zero and hi == Subspace.full(1, 2)
    with pytest.raises(ValueError):
        im_pair(m1, 2, 1)


def test_ker_pair_examples(m1):
    lo, hi = ker_pair(m1, 3, 1)
    assert lo == E1 and hi == Subspace.full(2, 2)
    lo, hi = ker_pair(m1, 1, 0)
    assert lo.is_zero and hi.is_zero
    for t in range(3):
        assert ker_pair(m1, t + 1, t)[0].is_zero
    with pytest.raises(ValueError):
        ker_pair(m1, 1, 1)


@given(modules(max_n=4, max_dim=3, primes=(2, 3)))
def test_finite_realisation_matches_chain_definition(V):
    for t in range(V.n):
        for c in range(t + 1):
            lo, hi = im_pair(V, c, t)
            assert (as_set(lo), as_set(hi)) == im_pair_chain(V, c, t)
        for c in range(t + 1, V.n + 1):
            lo, hi = ker_pair(V, c, t)
            assert (as_set(lo), as_set(hi)) == ker_pair_chain(V, c, t)


@given(modules(max_n=6, max_dim=4))
def test_nesting_and_monotonicity(V):
    for t in range(V.n):
        prev = None
        for c in range(t + 1):
            lo, hi = im_pair(V, c, t)
            assert lo <= hi
            if prev is not None:
                assert prev[0] <= lo and prev[1] <= hi
            prev = (lo, hi)
        for c in range(t + 1, V.n + 1):
            lo, hi = ker_pair(V, c, t)
            assert lo <= hi


@given(modules(max_n=6, max_dim=4))
def test_transport_of_cut_subspaces(V):
    p = V.p
    for c in range(V.n + 1):
        for s in range(V.n):
            for t in range(s, V.n):
                if c <= s:
                    # images push forward onto images
                    for k in (0, 1):
                        moved = Subspace.span(matmul(V.rho(t, s), im_pair(V, c, s)[k].basis, p), p)
                        assert moved == im_pair(V, c, t)[k]
                if t < c:
                    # kernels pull back onto kernels
                    for k in (0, 1):
                        assert preimage(V.rho(t, s), ker_pair(V, c, t)[k]) == ker_pair(V, c, s)[k]
